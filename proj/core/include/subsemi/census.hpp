#ifndef SUBSEMI_CENSUS_HPP
#define SUBSEMI_CENSUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

struct CensusOptions {
  bool sizes = true;        // per-cardinality rows
  bool ranks = false;       // per-rank rows (costs one rank search per class)
  bool classes = true;      // isomorphism / iso-or-anti class counts
  bool predicates = false;  // nilpotent / commutative / band / regular counts
  uint32_t canon_cap = 32;
  uint64_t rank_budget = uint64_t(1) << 26;
};

// One counting row.  `raw` counts subsemigroups, `conj` counts conjugacy
// classes (equal when no action is supplied), `iso` counts isomorphism
// classes and `anti` counts classes under isomorphism-or-anti-isomorphism
// (both zero unless classes were requested).
struct CensusRow {
  uint64_t raw = 0;
  uint64_t conj = 0;
  uint64_t iso = 0;
  uint64_t anti = 0;
};

struct CensusReport {
  uint32_t n = 0;               // order of the ambient semigroup
  uint64_t reps = 0;            // number of class representatives counted
  uint64_t nonempty_classes = 0;
  bool has_classes = false;     // iso/anti columns were computed
  bool has_predicates = false;  // predicate counts were computed
  CensusRow totals;
  std::vector<CensusRow> by_size;  // index = cardinality, present when sizes
  std::vector<CensusRow> by_rank;  // index = rank, present when ranks

  // Class counts over nonempty representatives, present when predicates.
  uint64_t nilpotent = 0;
  uint64_t commutative = 0;
  uint64_t band = 0;
  uint64_t regular = 0;
  std::vector<uint64_t> nilpotent_by_degree;  // index = nilpotency degree

  std::string to_text() const;
  std::string to_csv() const;
};

// Aggregate counts over one representative per conjugacy class (pass every
// subsemigroup and act == nullptr for an unreduced census).  `raw` weights
// each class by its orbit size under `act`.  Isomorphism classing pre-buckets
// representatives by a cheap invariant and only canonicalizes within buckets
// that collide.  Throws error{too_large_for_canonicalization} if classing
// meets a representative above `canon_cap`, error{too_large} if a rank
// search exceeds `rank_budget`.
CensusReport census(const CayleyTable& t, const std::vector<IndexSet>& class_reps,
                    const ConjugationAction* act, const CensusOptions& opts = {});

}  // namespace subsemi

#endif
