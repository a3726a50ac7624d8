#ifndef SUBSEMI_ELEMENT_INDEXING_HPP
#define SUBSEMI_ELEMENT_INDEXING_HPP

#include <cstdint>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/transformation.hpp"

namespace subsemi {

// The canonical ordering of all d^d transformations of degree d: ascending
// lexicographic order of image lists, so index 0 is the constant map to 1 and
// index d^d−1 is the constant map to d.  (For d = 2: [1,1], [1,2], [2,1],
// [2,2].)  Index ↔ transformation is mixed-radix arithmetic; the full element
// list is materialized once for cheap lookups.
class ElementIndexing {
 public:
  // throws error{degree_too_large} when d exceeds the cap (default 5)
  explicit ElementIndexing(uint32_t degree, uint32_t degree_cap = 5);

  uint32_t degree() const noexcept { return _degree; }
  uint32_t size() const noexcept { return uint32_t(_elements.size()); }

  const Transformation& element(uint32_t index) const { return _elements[index]; }
  uint32_t index_of(const Transformation& t) const;  // throws error{degree_mismatch}

 private:
  uint32_t _degree;
  std::vector<Transformation> _elements;
};

// Full transformation semigroup T_d as a validated table, with transformation
// literals as labels.  d ≤ degree_cap (default 5).
CayleyTable full_transformation_table(uint32_t d, uint32_t degree_cap = 5);

// Indices of all elements with image rank ≤ i — the two-sided ideal K_{d,i}.
// i must be in 1..d (error{rank_out_of_range}).
IndexSet ideal_elements(const ElementIndexing& idx, uint32_t i);

// Indices of the permutations (the symmetric group S_d inside T_d).
IndexSet symmetric_group(const ElementIndexing& idx);

}  // namespace subsemi

#endif
