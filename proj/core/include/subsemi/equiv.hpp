#ifndef SUBSEMI_EQUIV_HPP
#define SUBSEMI_EQUIV_HPP

#include <cstdint>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

// Partition of the elements of a table where two elements fall in the same
// class exactly when each generates the other (equivalently, they generate the
// same monogenic subsemigroup).  Extending a set by one element only ever
// needs one candidate per class, which is what the search uses.
class EquivClasses {
 public:
  EquivClasses(const CayleyTable& t);

  uint32_t n() const { return uint32_t(_class_of.size()); }
  uint32_t class_count() const { return uint32_t(_members.size()); }

  // 0-based class id of element x.
  uint32_t class_of(uint32_t x) const { return _class_of[x]; }
  // Ascending members of class c.
  const std::vector<uint32_t>& members(uint32_t c) const { return _members[c]; }
  // Least element of class c.
  uint32_t rep(uint32_t c) const { return _members[c].front(); }
  // The monogenic subsemigroup generated by any member of class c.
  const IndexSet& generated(uint32_t c) const { return _generated[c]; }

 private:
  std::vector<uint32_t> _class_of;
  std::vector<std::vector<uint32_t>> _members;
  std::vector<IndexSet> _generated;
};

// Process-wide cache: repeated lookups for the same table (by value) return
// the same shared partition without recomputing it.
const EquivClasses& equiv_classes_cached(const CayleyTable& t);

}  // namespace subsemi

#endif
