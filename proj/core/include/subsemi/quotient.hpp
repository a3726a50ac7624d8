#ifndef SUBSEMI_QUOTIENT_HPP
#define SUBSEMI_QUOTIENT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

// First pair (s, i), s ∈ S, i ∈ ideal, with s·i or i·s outside the ideal;
// no value when `ideal` really is a two-sided ideal.  The empty set counts
// as an ideal.
std::optional<std::pair<uint32_t, uint32_t>> ideal_violation(const CayleyTable& t,
                                                             const IndexSet& ideal);

// Rees quotient S/I: the elements of S \ I keep their relative order and the
// adjoined zero gets the LAST index.  Every product that lands in I becomes
// the zero.  An empty ideal is allowed and yields S⁰ (zero adjoined to a
// faithful copy of S).
struct QuotientMap {
  CayleyTable quotient;
  uint32_t zero = 0;                   // quotient index of the adjoined zero (= n-1)
  std::vector<uint32_t> to_source;     // non-zero quotient index -> source index
  std::vector<int64_t> from_source;    // source index -> quotient index, -1 for ideal members

  // Map a quotient subset (ignoring the zero) back into source indices.
  IndexSet map_back(const IndexSet& quotient_set, uint32_t source_n) const;
};

// throws error{not_an_ideal} with the witness pair (1-based)
QuotientMap rees_quotient(const CayleyTable& t, const IndexSet& ideal);

}  // namespace subsemi

#endif
