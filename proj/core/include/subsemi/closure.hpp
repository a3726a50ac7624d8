#ifndef SUBSEMI_CLOSURE_HPP
#define SUBSEMI_CLOSURE_HPP

#include <cstdint>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

// Elements forced by one multiplication round: { a·b : a,b ∈ s } \ s.
IndexSet missing_elements(const CayleyTable& t, const IndexSet& s);

// True iff every pairwise product stays in s (the empty set is closed).
bool is_closed(const CayleyTable& t, const IndexSet& s);

struct ClosureStep {
  uint32_t added;                 // element incorporated at this step
  std::vector<uint32_t> forced;   // new elements its row/column scan produced
};

struct ClosureTrace {
  IndexSet result;
  std::vector<ClosureStep> steps;
  uint64_t entries_checked = 0;   // table-cell reads performed by the scan
};

// Reference implementation: repeats the one-round completion until the
// missing set is empty.  Recomputes the full product set every round, so it
// is quadratic per round — kept deliberately simple to serve as the oracle
// for the incremental version.
IndexSet closure_naive(const CayleyTable& t, const IndexSet& s);

enum class BaseCheck { strict, fast };

// Incremental closure of base ∪ adds where `base` is already closed.  The
// worklist is processed in ascending element order; incorporating x scans row
// x against the current set plus x itself and column x against the current
// set, so every cell of the final subarray not already covered by the base
// subarray is read exactly once: entries_checked == |result|² − |base|².
//
// strict re-checks the base (error{precondition_violated} if it is not
// closed, error{precondition_violated} if adds ∩ base ≠ ∅); fast trusts the
// caller and is what the search loops use.
ClosureTrace closure_incremental(const CayleyTable& t, const IndexSet& base, const IndexSet& adds,
                                 BaseCheck check = BaseCheck::strict);

// Hot-path variant used by the enumeration engines: closure of base ∪ {x}
// for closed base, no trace allocation.  Adds the number of cells read to
// `entries_checked`.
IndexSet closure_extend(const CayleyTable& t, const IndexSet& base, uint32_t x,
                        uint64_t& entries_checked);

}  // namespace subsemi

#endif
