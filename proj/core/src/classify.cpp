#include "subsemi/classify.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "subsemi/closure.hpp"
#include "subsemi/equiv.hpp"
#include "subsemi/error.hpp"

namespace subsemi {

bool is_commutative(const CayleyTable& t, const IndexSet& s) {
  bool ok = true;
  s.for_each([&](uint32_t a) {
    if (!ok) return;
    s.for_each([&](uint32_t b) {
      if (b >= a) return;
      if (t.entry(a, b) != t.entry(b, a)) ok = false;
    });
  });
  return ok;
}

bool is_band(const CayleyTable& t, const IndexSet& s) {
  bool ok = true;
  s.for_each([&](uint32_t a) {
    if (t.entry(a, a) != a) ok = false;
  });
  return ok;
}

bool is_regular(const CayleyTable& t, const IndexSet& s) {
  bool ok = true;
  s.for_each([&](uint32_t a) {
    if (!ok) return;
    bool found = false;
    s.for_each([&](uint32_t x) {
      if (found) return;
      if (t.entry(t.entry(a, x), a) == a) found = true;
    });
    if (!found) ok = false;
  });
  return ok;
}

Nilpotency nilpotency_by_powers(const CayleyTable& t, const IndexSet& s) {
  if (s.empty()) throw error(errc::empty_semigroup, "nilpotency of the empty semigroup");
  // S ⊇ S² ⊇ … (every (k+1)-fold product is a k-fold product); nilpotent iff
  // the chain bottoms out at a singleton.
  IndexSet cur = s;
  for (uint32_t k = 1;; ++k) {
    if (cur.count() == 1) return {true, k};
    IndexSet next(s.universe());
    cur.for_each([&](uint32_t a) {
      s.for_each([&](uint32_t b) { next.add(t.entry(a, b)); });
    });
    if (next == cur) return {false, 0};
    cur = std::move(next);
  }
}

Nilpotency nilpotency_by_tuple_scan(const CayleyTable& t, const IndexSet& s) {
  if (s.empty()) throw error(errc::empty_semigroup, "nilpotency of the empty semigroup");
  std::vector<uint32_t> m = s.members();
  uint32_t sz = uint32_t(m.size());
  for (uint32_t k = 1; k <= sz; ++k) {
    // Zero candidate: the product of the first k-tuple (m[0], …, m[0]).
    uint32_t z = m[0];
    for (uint32_t i = 1; i < k; ++i) z = t.entry(z, m[0]);
    // Walk all k-tuples in ascending order, sharing prefix products.
    std::vector<uint32_t> idx(k, 0), pref(k);
    pref[0] = m[0];
    for (uint32_t i = 1; i < k; ++i) pref[i] = t.entry(pref[i - 1], m[0]);
    bool all_match = true;
    for (;;) {
      if (pref[k - 1] != z) {
        all_match = false;
        break;
      }
      // Advance the odometer and recompute products from the changed slot.
      uint32_t p = k;
      while (p > 0 && idx[p - 1] == sz - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (uint32_t i = p; i < k; ++i) idx[i] = 0;
      for (uint32_t i = p - 1; i < k; ++i)
        pref[i] = i == 0 ? m[idx[0]] : t.entry(pref[i - 1], m[idx[i]]);
    }
    if (all_match) return {true, k};
  }
  return {false, 0};
}

uint32_t semigroup_rank(const CayleyTable& t, const IndexSet& s, uint64_t budget) {
  if (s.empty()) return 0;
  // Elements that are not products of two members must be in every
  // generating set.
  IndexSet products(s.universe());
  s.for_each([&](uint32_t a) {
    s.for_each([&](uint32_t b) { products.add(t.entry(a, b)); });
  });
  IndexSet mandatory = s - products;
  uint64_t scratch = 0;
  IndexSet base(s.universe());
  mandatory.for_each([&](uint32_t x) {
    if (!base.contains(x)) base = closure_extend(t, base, x, scratch);
  });
  uint32_t forced = mandatory.count();
  if (base == s) return forced;

  // The remainder is searched over generator-equivalence class
  // representatives: swapping a generator for an equivalent one never
  // changes the closure.
  const EquivClasses& eq = equiv_classes_cached(t);
  IndexSet rest = s - base;
  std::vector<uint32_t> reps;
  {
    IndexSet seen_class(eq.class_count());
    rest.for_each([&](uint32_t x) {
      uint32_t c = eq.class_of(x);
      if (!seen_class.contains(c)) {
        seen_class.add(c);
        reps.push_back(x);  // ascending iteration → least member of class ∩ rest
      }
    });
  }
  uint32_t r = uint32_t(reps.size());
  uint64_t tried = 0;
  for (uint32_t extra = 1; extra <= r; ++extra) {
    // Lexicographic combinations with shared prefix closures.
    std::vector<uint32_t> pick(extra);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<IndexSet> pref(extra + 1);
    pref[0] = base;
    uint32_t dirty = 0;  // prefix closures valid up to this depth
    for (;;) {
      if (++tried > budget)
        throw error(errc::too_large, "generating-set search exceeded its budget");
      for (uint32_t i = dirty; i < extra; ++i) {
        uint32_t x = reps[pick[i]];
        pref[i + 1] = pref[i].contains(x) ? pref[i] : closure_extend(t, pref[i], x, scratch);
      }
      if (pref[extra] == s) return forced + extra;
      // Advance to the next combination.
      int32_t p = int32_t(extra) - 1;
      while (p >= 0 && pick[p] == r - extra + p) --p;
      if (p < 0) break;
      ++pick[p];
      for (uint32_t i = uint32_t(p) + 1; i < extra; ++i) pick[i] = pick[i - 1] + 1;
      dirty = uint32_t(p);
    }
  }
  // Unreachable: mandatory plus all representatives generates s.
  throw error(errc::precondition_violated, "generating-set search fell through");
}

namespace {

// Canonical labeling: depth-first assignment of new labels 0, 1, … to the
// elements, minimizing the cell sequence in "shell" order (the order in
// which cells of the relabeled table become addressable: after label k is
// placed, cells (k,0..k) then (0..k-1,k) join the sequence).  The shell
// sequence determines the table and vice versa, so lex-least shell sequence
// is a sound canonical key; it is used instead of row-major order because
// prefixes of the shell sequence are (mostly) decided early, which is what
// gives branch-and-bound its pruning power.
struct Canonizer {
  uint32_t m;
  const std::vector<uint32_t>& tab;  // m×m flat, 0-based

  // shell_cells[p] = linear cell index of the p-th cell in shell order
  std::vector<uint32_t> shell_cells;

  std::vector<uint32_t> best_seq;    // shell-order values of the best leaf
  std::vector<uint32_t> best_assign;  // best_assign[k] = old element with label k
  bool have_best = false;

  std::vector<uint32_t> assign;   // assign[k] = old element
  std::vector<int32_t> label_of;  // old element -> label or -1

  std::vector<std::vector<uint32_t>> auts;      // discovered automorphisms
  std::vector<std::vector<uint32_t>> aut_invs;  // their inverses
  static constexpr size_t kMaxAuts = 64;

  explicit Canonizer(uint32_t m_, const std::vector<uint32_t>& tab_) : m(m_), tab(tab_) {
    shell_cells.reserve(size_t(m) * m);
    for (uint32_t k = 0; k < m; ++k) {
      for (uint32_t j = 0; j <= k; ++j) shell_cells.push_back(k * m + j);
      for (uint32_t i = 0; i < k; ++i) shell_cells.push_back(i * m + k);
    }
    assign.assign(m, 0);
    label_of.assign(m, -1);
  }

  // Shell-order comparison of the partial assignment (first `depth` labels)
  // against best_seq.  Returns -1 when the partial sequence is already
  // strictly smaller (every completion beats the best), +1 when it can never
  // be smaller (prune), 0 when undecided.
  int compare_partial(uint32_t depth) const {
    if (!have_best) return 0;
    size_t limit = size_t(depth) * depth;
    for (size_t p = 0; p < limit; ++p) {
      uint32_t cell = shell_cells[p];
      uint32_t prod = tab[size_t(assign[cell / m]) * m + assign[cell % m]];
      int32_t lab = label_of[prod];
      if (lab >= 0) {
        if (uint32_t(lab) < best_seq[p]) return -1;
        if (uint32_t(lab) > best_seq[p]) return 1;
      } else {
        // The product is unlabeled, so this cell's value will be ≥ depth.
        if (depth > best_seq[p]) return 1;
        return 0;
      }
    }
    return 0;
  }

  // Greedy ordering key for a candidate at depth k: the newly revealed shell
  // cells, with unlabeled products counted as k+1 (their minimum possible
  // value once the candidate is placed).
  std::vector<uint32_t> probe_key(uint32_t k, uint32_t y) {
    std::vector<uint32_t> key;
    key.reserve(2 * k + 1);
    assign[k] = y;
    label_of[y] = int32_t(k);
    for (uint32_t j = 0; j <= k; ++j) {
      int32_t lab = label_of[tab[size_t(y) * m + assign[j]]];
      key.push_back(lab >= 0 ? uint32_t(lab) : k + 1);
    }
    for (uint32_t i = 0; i < k; ++i) {
      int32_t lab = label_of[tab[size_t(assign[i]) * m + y]];
      key.push_back(lab >= 0 ? uint32_t(lab) : k + 1);
    }
    label_of[y] = -1;
    return key;
  }

  void record_leaf(int cmp) {
    if (have_best && cmp == 0) {
      // Tie: assign ∘ best_assign⁻¹ is a table automorphism.
      if (auts.size() >= kMaxAuts) return;
      std::vector<uint32_t> a(m), ai(m);
      bool identity = true;
      // α maps the element labeled ℓ by the best assignment to the element
      // labeled ℓ by the current one; equal shell sequences make this a
      // table automorphism.
      for (uint32_t lab = 0; lab < m; ++lab) {
        a[best_assign[lab]] = assign[lab];
        if (best_assign[lab] != assign[lab]) identity = false;
      }
      if (identity) return;
      for (uint32_t x = 0; x < m; ++x) ai[a[x]] = x;
      auts.push_back(std::move(a));
      aut_invs.push_back(std::move(ai));
      return;
    }
    if (!have_best || cmp < 0) {
      best_seq.resize(size_t(m) * m);
      for (size_t p = 0; p < best_seq.size(); ++p) {
        uint32_t cell = shell_cells[p];
        best_seq[p] = uint32_t(label_of[tab[size_t(assign[cell / m]) * m + assign[cell % m]]]);
      }
      best_assign = assign;
      have_best = true;
    }
  }

  void dfs(uint32_t k, int cmp) {
    if (k == m) {
      record_leaf(cmp);
      return;
    }
    // Candidates: unassigned elements, greedily ordered by the cells they
    // would reveal so the first descent lands near the minimum.
    std::vector<std::pair<std::vector<uint32_t>, uint32_t>> cands;
    for (uint32_t y = 0; y < m; ++y)
      if (label_of[y] < 0) cands.emplace_back(probe_key(k, y), y);
    std::sort(cands.begin(), cands.end());

    // Automorphisms that fix the assigned prefix pointwise can map an
    // already-explored candidate onto a later one; such candidates are
    // redundant.
    std::vector<size_t> fixing;
    for (size_t a = 0; a < auts.size(); ++a) {
      bool fixes = true;
      for (uint32_t i = 0; i < k && fixes; ++i) fixes = auts[a][assign[i]] == assign[i];
      if (fixes) fixing.push_back(a);
    }
    std::vector<bool> tried(m, false);
    for (auto& [key, y] : cands) {
      bool skip = false;
      for (size_t a : fixing) {
        if (tried[aut_invs[a][y]]) {
          skip = true;
          break;
        }
      }
      tried[y] = true;
      if (skip) continue;
      assign[k] = y;
      label_of[y] = int32_t(k);
      int c = compare_partial(k + 1);
      if (c <= 0) dfs(k + 1, c);
      label_of[y] = -1;
    }
  }

  // Runs the search and returns the canonical shell sequence; the winning
  // assignment is left in best_assign.
  const std::vector<uint32_t>& run() {
    dfs(0, 0);
    return best_seq;
  }
};

std::vector<uint32_t> transpose_flat(const CayleyTable& t) {
  uint32_t m = t.n();
  std::vector<uint32_t> out(size_t(m) * m);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j) out[size_t(j) * m + i] = t.entry(i, j);
  return out;
}

std::vector<uint32_t> row_major_of(const Canonizer& c) {
  uint32_t m = c.m;
  std::vector<uint32_t> flat(size_t(m) * m);
  std::vector<uint32_t> label(m);
  for (uint32_t k = 0; k < m; ++k) label[c.best_assign[k]] = k;
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j)
      flat[size_t(i) * m + j] =
          label[c.tab[size_t(c.best_assign[i]) * m + c.best_assign[j]]];
  return flat;
}

}  // namespace

CanonicalForm canonical_form(const CayleyTable& t, CanonMode mode, uint32_t cap) {
  uint32_t m = t.n();
  if (m > cap)
    throw error(errc::too_large_for_canonicalization,
                "table of size " + std::to_string(m) + " exceeds the canonicalization cap " +
                    std::to_string(cap));
  if (m == 0) return {};
  std::vector<uint32_t> forward(t.entries().begin(), t.entries().end());
  Canonizer cf(m, forward);
  cf.run();
  if (mode == CanonMode::iso) return {row_major_of(cf), false};

  std::vector<uint32_t> rev = transpose_flat(t);
  Canonizer cr(m, rev);
  cr.run();
  if (cr.best_seq < cf.best_seq) return {row_major_of(cr), true};
  return {row_major_of(cf), false};
}

uint64_t iso_fingerprint(const CayleyTable& t) {
  uint32_t m = t.n();
  std::vector<std::array<uint32_t, 7>> sig;
  sig.reserve(m);
  std::vector<uint8_t> mark(m);
  for (uint32_t a = 0; a < m; ++a) {
    // Cyclic profile of a: tail length and period of a, a², a³, …
    std::vector<int32_t> pos(m, -1);
    uint32_t cur = a, step = 0, tail = 0, period = 0;
    for (;;) {
      if (pos[cur] >= 0) {
        tail = uint32_t(pos[cur]);
        period = step - tail;
        break;
      }
      pos[cur] = int32_t(step++);
      cur = t.entry(cur, a);
    }
    uint32_t rd = 0, cd = 0, rf = 0, cfx = 0;
    std::fill(mark.begin(), mark.end(), 0);
    for (uint32_t j = 0; j < m; ++j) {
      uint32_t v = t.entry(a, j);
      if (!mark[v]) {
        mark[v] = 1;
        ++rd;
      }
      if (v == a) ++rf;
    }
    std::fill(mark.begin(), mark.end(), 0);
    for (uint32_t i = 0; i < m; ++i) {
      uint32_t v = t.entry(i, a);
      if (!mark[v]) {
        mark[v] = 1;
        ++cd;
      }
      if (v == a) ++cfx;
    }
    // Row/column statistics enter symmetrized so the fingerprint is also
    // invariant under anti-isomorphism (transposition).
    sig.push_back({t.entry(a, a) == a ? 1u : 0u, tail, period, std::max(rd, cd), std::min(rd, cd),
                   std::max(rf, cfx), std::min(rf, cfx)});
  }
  std::sort(sig.begin(), sig.end());
  uint64_t h = 1469598103934665603ull ^ m;
  for (const auto& s : sig)
    for (uint32_t v : s) {
      h ^= v + 0x9e3779b9;
      h *= 1099511628211ull;
    }
  return h;
}

}  // namespace subsemi
