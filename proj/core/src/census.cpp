#include "subsemi/census.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "subsemi/classify.hpp"
#include "subsemi/subtable.hpp"

namespace subsemi {

namespace {

void append_row(std::ostringstream& os, const std::string& head, const CensusRow& row,
                bool with_classes) {
  os << head << ": raw=" << row.raw << " conj=" << row.conj;
  if (with_classes) os << " iso=" << row.iso << " anti=" << row.anti;
  os << '\n';
}

}  // namespace

CensusReport census(const CayleyTable& t, const std::vector<IndexSet>& class_reps,
                    const ConjugationAction* act, const CensusOptions& opts) {
  const uint32_t n = t.n();
  CensusReport rep;
  rep.n = n;
  rep.reps = class_reps.size();
  rep.has_classes = opts.classes;
  rep.has_predicates = opts.predicates;

  std::vector<uint64_t> orbit(class_reps.size(), 1);
  std::vector<uint32_t> rank;
  if (opts.ranks) rank.resize(class_reps.size(), 0);
  if (opts.sizes) rep.by_size.assign(n + 1, CensusRow{});

  uint32_t max_rank = 0;
  for (size_t i = 0; i < class_reps.size(); ++i) {
    const IndexSet& s = class_reps[i];
    if (act) orbit[i] = act->orbit_count(s);
    if (!s.empty()) ++rep.nonempty_classes;
    rep.totals.raw += orbit[i];
    rep.totals.conj += 1;
    if (opts.sizes) {
      CensusRow& row = rep.by_size[s.count()];
      row.raw += orbit[i];
      row.conj += 1;
    }
    if (opts.ranks) {
      rank[i] = semigroup_rank(t, s, opts.rank_budget);
      max_rank = std::max(max_rank, rank[i]);
    }
  }
  if (opts.ranks) {
    rep.by_rank.assign(max_rank + 1, CensusRow{});
    for (size_t i = 0; i < class_reps.size(); ++i) {
      CensusRow& row = rep.by_rank[rank[i]];
      row.raw += orbit[i];
      row.conj += 1;
    }
  }

  if (opts.classes) {
    auto note_iso = [&](size_t i, uint32_t card) {
      rep.totals.iso += 1;
      if (opts.sizes) rep.by_size[card].iso += 1;
      if (opts.ranks) rep.by_rank[rank[i]].iso += 1;
    };
    auto note_anti = [&](size_t i, uint32_t card) {
      rep.totals.anti += 1;
      if (opts.sizes) rep.by_size[card].anti += 1;
      if (opts.ranks) rep.by_rank[rank[i]].anti += 1;
    };

    std::vector<std::vector<size_t>> by_card(n + 1);
    for (size_t i = 0; i < class_reps.size(); ++i)
      by_card[class_reps[i].count()].push_back(i);

    for (uint32_t card = 0; card <= n; ++card) {
      if (by_card[card].empty()) continue;
      // No two representatives of different cardinalities are isomorphic, so
      // classing runs independently per cardinality.
      std::unordered_map<uint64_t, std::vector<size_t>> buckets;
      for (size_t i : by_card[card]) {
        SubTable st(t, class_reps[i]);
        buckets[iso_fingerprint(st.table())].push_back(i);
      }
      for (auto& [fp, members] : buckets) {
        (void)fp;
        if (members.size() == 1) {
          // The fingerprint is invariant under isomorphism and under
          // anti-isomorphism, so a lone holder of one is a class of its own.
          note_iso(members.front(), card);
          note_anti(members.front(), card);
          continue;
        }
        std::map<std::vector<uint32_t>, size_t> iso_seen;
        std::map<std::vector<uint32_t>, size_t> anti_seen;
        for (size_t i : members) {
          SubTable st(t, class_reps[i]);
          CanonicalForm ci = canonical_form(st, CanonMode::iso, opts.canon_cap);
          if (iso_seen.emplace(std::move(ci.flat), i).second) note_iso(i, card);
          CanonicalForm ca = canonical_form(st, CanonMode::iso_anti, opts.canon_cap);
          if (anti_seen.emplace(std::move(ca.flat), i).second) note_anti(i, card);
        }
      }
    }
  }

  if (opts.predicates) {
    rep.nilpotent_by_degree.assign(size_t(n) + 1, 0);
    for (const IndexSet& s : class_reps) {
      if (s.empty()) continue;
      if (is_commutative(t, s)) ++rep.commutative;
      if (is_band(t, s)) ++rep.band;
      if (is_regular(t, s)) ++rep.regular;
      Nilpotency nil = nilpotency_by_powers(t, s);
      if (nil.is_nilpotent) {
        ++rep.nilpotent;
        ++rep.nilpotent_by_degree[nil.degree];
      }
    }
    while (!rep.nilpotent_by_degree.empty() && rep.nilpotent_by_degree.back() == 0)
      rep.nilpotent_by_degree.pop_back();
  }

  return rep;
}

std::string CensusReport::to_text() const {
  std::ostringstream os;
  os << "census: n=" << n << " reps=" << reps << '\n';
  append_row(os, "totals", totals, has_classes);
  for (size_t c = 0; c < by_size.size(); ++c)
    append_row(os, "size " + std::to_string(c), by_size[c], has_classes);
  for (size_t r = 0; r < by_rank.size(); ++r)
    append_row(os, "rank " + std::to_string(r), by_rank[r], has_classes);
  if (has_predicates) {
    os << "predicates: classes=" << nonempty_classes << " nilpotent=" << nilpotent
       << " commutative=" << commutative << " band=" << band << " regular=" << regular
       << '\n';
    for (size_t d = 0; d < nilpotent_by_degree.size(); ++d)
      if (nilpotent_by_degree[d])
        os << "nilpotent degree " << d << ": classes=" << nilpotent_by_degree[d] << '\n';
  }
  return os.str();
}

std::string CensusReport::to_csv() const {
  std::ostringstream os;
  os << "section,key,raw,conj,iso,anti\n";
  os << "total,," << totals.raw << ',' << totals.conj << ',' << totals.iso << ','
     << totals.anti << '\n';
  for (size_t c = 0; c < by_size.size(); ++c)
    os << "size," << c << ',' << by_size[c].raw << ',' << by_size[c].conj << ','
       << by_size[c].iso << ',' << by_size[c].anti << '\n';
  for (size_t r = 0; r < by_rank.size(); ++r)
    os << "rank," << r << ',' << by_rank[r].raw << ',' << by_rank[r].conj << ','
       << by_rank[r].iso << ',' << by_rank[r].anti << '\n';
  if (has_predicates) {
    os << "predicate,classes," << nonempty_classes << ",,,\n";
    os << "predicate,nilpotent," << nilpotent << ",,,\n";
    os << "predicate,commutative," << commutative << ",,,\n";
    os << "predicate,band," << band << ",,,\n";
    os << "predicate,regular," << regular << ",,,\n";
    for (size_t d = 0; d < nilpotent_by_degree.size(); ++d)
      if (nilpotent_by_degree[d])
        os << "predicate,nilpotent-degree-" << d << ',' << nilpotent_by_degree[d] << ",,,\n";
  }
  return os.str();
}

}  // namespace subsemi
