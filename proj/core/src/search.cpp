#include "subsemi/search.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "subsemi/classify.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/equiv.hpp"
#include "subsemi/error.hpp"

namespace subsemi {

void SearchStats::merge(const SearchStats& o) {
  nodes_visited += o.nodes_visited;
  closures_computed += o.closures_computed;
  extensions_tried += o.extensions_tried;
  entries_checked += o.entries_checked;
  peak_frontier = std::max(peak_frontier, o.peak_frontier);
}

namespace {

bool passes_filter(const CayleyTable& t, const IndexSet& s, PropertyFilter f) {
  switch (f) {
    case PropertyFilter::none:
      return true;
    case PropertyFilter::commutative:
      return is_commutative(t, s);
    case PropertyFilter::band:
      return is_band(t, s);
    case PropertyFilter::nilpotent:
      // ∅ is on the path to every nilpotent subsemigroup and must pass.
      return s.empty() || nilpotency_by_powers(t, s).is_nilpotent;
  }
  return true;
}

const char* filter_name(PropertyFilter f) {
  switch (f) {
    case PropertyFilter::none:
      return "none";
    case PropertyFilter::nilpotent:
      return "nilpotent";
    case PropertyFilter::commutative:
      return "commutative";
    case PropertyFilter::band:
      return "band";
  }
  return "?";
}

// Sorts sets (and their aligned levels) into the output order.
void sort_result(std::vector<IndexSet>& found, std::vector<uint32_t>* levels) {
  if (!levels) {
    std::sort(found.begin(), found.end(), IndexSet::output_less);
    return;
  }
  std::vector<uint32_t> order(found.size());
  for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return IndexSet::output_less(found[a], found[b]);
  });
  std::vector<IndexSet> fs;
  std::vector<uint32_t> ls;
  fs.reserve(found.size());
  ls.reserve(found.size());
  for (uint32_t i : order) {
    fs.push_back(std::move(found[i]));
    ls.push_back((*levels)[i]);
  }
  found = std::move(fs);
  *levels = std::move(ls);
}

// Per-equivalence-class candidate lists within X, precomputed once per run.
// At a node T the usable candidate of a class is its least member not in T;
// since a class is either wholly inside or wholly outside any subsemigroup,
// checking the front member suffices.
std::vector<std::vector<uint32_t>> class_lists_within(const EquivClasses& eq, const IndexSet& x) {
  std::vector<std::vector<uint32_t>> lists;
  for (uint32_t c = 0; c < eq.class_count(); ++c) {
    std::vector<uint32_t> l;
    for (uint32_t m : eq.members(c))
      if (x.contains(m)) l.push_back(m);
    if (!l.empty()) lists.push_back(std::move(l));
  }
  return lists;
}

}  // namespace

EnumerationResult enumerate_brute(const CayleyTable& t, uint32_t cap) {
  uint32_t n = t.n();
  if (n > 32 || n > cap)
    throw error(errc::too_large,
                "brute-force enumeration over 2^" + std::to_string(n) + " subsets refused");
  EnumerationResult res;
  res.provenance = "brute";
  if (n == 0) {
    res.found.push_back(IndexSet(0));
    res.stats.nodes_visited = 1;
    return res;
  }
  // Product matrix in mask space for the inner loop.
  std::vector<uint32_t> prod(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) prod[size_t(i) * n + j] = t.entry(i, j);

  uint64_t total = uint64_t(1) << n;
  for (uint64_t mask = 0; mask < total; ++mask) {
    ++res.stats.nodes_visited;
    bool closed = true;
    uint64_t rest = mask;
    while (rest && closed) {
      uint32_t i = uint32_t(std::countr_zero(rest));
      rest &= rest - 1;
      uint64_t rest2 = mask;
      while (rest2) {
        uint32_t j = uint32_t(std::countr_zero(rest2));
        rest2 &= rest2 - 1;
        if (!((mask >> prod[size_t(i) * n + j]) & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    IndexSet s(n);
    uint64_t bits = mask;
    while (bits) {
      s.add(uint32_t(std::countr_zero(bits)));
      bits &= bits - 1;
    }
    res.found.push_back(std::move(s));
  }
  sort_result(res.found, nullptr);
  return res;
}

EnumerationResult enumerate_min_extensions(const CayleyTable& t, const IndexSet& seed,
                                           const SearchOptions& opts) {
  uint32_t n = t.n();
  if (!is_closed(t, seed)) throw error(errc::seed_not_closed, "seed set is not closed");
  const ConjugationAction* act = opts.symmetry;
  if (act && act->universe() != n)
    throw error(errc::precondition_violated, "symmetry action universe does not match the table");
  if (opts.use_normalizer_pruning && !act)
    throw error(errc::precondition_violated, "normalizer pruning requires a symmetry action");

  IndexSet X = opts.restrict_extensions_to ? *opts.restrict_extensions_to : IndexSet::full(n);
  if (act) {
    for (uint32_t g = 1; g < act->group_size(); ++g)
      if (act->apply(g, X) != X)
        throw error(errc::precondition_violated,
                    "extension set is not invariant under the symmetry group");
  }

  EnumerationResult res;
  {
    std::string p = "minext-";
    p += opts.strategy == Strategy::dfs ? "dfs" : "bfs";
    if (act) p += " symmetry=" + act->description();
    if (opts.use_equiv_generators) p += " equiv";
    if (opts.use_normalizer_pruning) p += " normalizer";
    if (opts.max_size) p += " max-size=" + std::to_string(*opts.max_size);
    if (opts.property_filter != PropertyFilter::none)
      p += std::string(" property=") + filter_name(opts.property_filter);
    res.provenance = std::move(p);
  }
  SearchStats& st = res.stats;

  const EquivClasses* eq = opts.use_equiv_generators ? &equiv_classes_cached(t) : nullptr;
  std::vector<std::vector<uint32_t>> class_lists;
  if (eq) class_lists = class_lists_within(*eq, X);

  struct Pending {
    uint32_t parent;
    uint32_t elem;
    uint32_t level;
  };
  std::deque<Pending> pending;
  std::vector<IndexSet> nodes;
  std::vector<uint32_t> levels;
  std::unordered_set<IndexSet, IndexSetHash> visited;

  auto push_extensions = [&](uint32_t id) {
    const IndexSet& T = nodes[id];
    if (opts.max_size && T.count() >= *opts.max_size) return;  // children would exceed the cap
    uint32_t level = levels[id] + 1;
    if (eq) {
      for (const auto& list : class_lists) {
        uint32_t front = list.front();
        // A class straddles no subsemigroup: front ∈ T means the class is
        // contained in T and offers no extension.
        if (T.contains(front)) continue;
        if (!opts.use_normalizer_pruning) pending.push_back({id, front, level});
      }
      if (opts.use_normalizer_pruning) {
        IndexSet cand(n);
        for (const auto& list : class_lists)
          if (!T.contains(list.front())) cand.add(list.front());
        IndexSet reps = normalizer_orbit_reps(T, cand, *act);
        reps.for_each([&](uint32_t x) { pending.push_back({id, x, level}); });
      }
    } else {
      IndexSet cand = X - T;
      if (opts.use_normalizer_pruning) cand = normalizer_orbit_reps(T, cand, *act);
      cand.for_each([&](uint32_t x) { pending.push_back({id, x, level}); });
    }
    st.peak_frontier = std::max<uint64_t>(st.peak_frontier, pending.size());
  };

  IndexSet root = act ? act->canonical_rep(seed) : seed;
  if ((!opts.max_size || root.count() <= *opts.max_size) &&
      passes_filter(t, root, opts.property_filter)) {
    visited.insert(root);
    nodes.push_back(root);
    levels.push_back(0);
    st.nodes_visited = 1;
    push_extensions(0);
  }

  while (!pending.empty()) {
    Pending p;
    if (opts.strategy == Strategy::dfs) {
      p = pending.back();
      pending.pop_back();
    } else {
      p = pending.front();
      pending.pop_front();
    }
    ++st.extensions_tried;
    IndexSet child = closure_extend(t, nodes[p.parent], p.elem, st.entries_checked);
    ++st.closures_computed;
    if (opts.max_size && child.count() > *opts.max_size) continue;
    if (!passes_filter(t, child, opts.property_filter)) continue;
    IndexSet key = act ? act->canonical_rep(child) : std::move(child);
    if (!visited.insert(key).second) continue;
    uint32_t id = uint32_t(nodes.size());
    nodes.push_back(std::move(key));
    levels.push_back(p.level);
    ++st.nodes_visited;
    push_extensions(id);
  }

  res.found = std::move(nodes);
  if (opts.strategy == Strategy::bfs) {
    res.levels = std::move(levels);
    sort_result(res.found, &*res.levels);
  } else {
    sort_result(res.found, nullptr);
  }
  return res;
}

EnumerationResult enumerate_mingen(const CayleyTable& t, const SearchOptions& opts,
                                   uint32_t class_cap) {
  uint32_t n = t.n();
  const ConjugationAction* act = opts.symmetry;
  if (act && act->universe() != n)
    throw error(errc::precondition_violated, "symmetry action universe does not match the table");
  const EquivClasses& eq = equiv_classes_cached(t);
  if (eq.class_count() > class_cap)
    throw error(errc::too_large, "level-wise generation over " +
                                     std::to_string(eq.class_count()) +
                                     " generator classes refused");
  std::vector<uint32_t> reps;
  reps.reserve(eq.class_count());
  for (uint32_t c = 0; c < eq.class_count(); ++c) reps.push_back(eq.rep(c));
  std::sort(reps.begin(), reps.end());
  uint32_t r = uint32_t(reps.size());

  EnumerationResult res;
  res.provenance = std::string("mingen") + (act ? " symmetry=" + act->description() : "");
  SearchStats& st = res.stats;

  std::unordered_set<IndexSet, IndexSetHash> visited;
  std::vector<IndexSet> found;
  std::vector<uint32_t> ranks;

  auto try_store = [&](const IndexSet& s, uint32_t k) {
    IndexSet key = act ? act->canonical_rep(s) : s;
    if (!visited.insert(key).second) return false;
    // Novelty drives the level iteration even for sets the filters reject.
    if (opts.max_size && key.count() > *opts.max_size) return true;
    if (!passes_filter(t, key, opts.property_filter)) return true;
    found.push_back(std::move(key));
    ranks.push_back(k);
    ++st.nodes_visited;
    return true;
  };

  try_store(IndexSet(n), 0);  // ⟨∅⟩ = ∅ at rank 0

  for (uint32_t k = 1; k <= r; ++k) {
    bool novel = false;
    std::vector<uint32_t> pick(k);
    for (uint32_t i = 0; i < k; ++i) pick[i] = i;
    std::vector<IndexSet> pref(k + 1);
    pref[0] = IndexSet(n);
    uint32_t dirty = 0;
    for (;;) {
      ++st.extensions_tried;
      for (uint32_t i = dirty; i < k; ++i) {
        uint32_t x = reps[pick[i]];
        if (pref[i].contains(x)) {
          pref[i + 1] = pref[i];
        } else {
          pref[i + 1] = closure_extend(t, pref[i], x, st.entries_checked);
          ++st.closures_computed;
        }
      }
      novel |= try_store(pref[k], k);
      int64_t p = int64_t(k) - 1;
      while (p >= 0 && pick[p] == r - k + p) --p;
      if (p < 0) break;
      ++pick[p];
      for (uint32_t i = uint32_t(p) + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
      dirty = uint32_t(p);
    }
    if (!novel) break;
  }

  res.levels = std::move(ranks);
  res.found = std::move(found);
  sort_result(res.found, &*res.levels);
  return res;
}

}  // namespace subsemi
