#ifndef SUBSEMI_SUBTABLE_HPP
#define SUBSEMI_SUBTABLE_HPP

#include <cstdint>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

// A closed subset of a parent table viewed as a standalone semigroup: the
// induced table is re-indexed 0..|T|-1 in ascending order of the parent
// indices.  Construction requires the member set to be closed.
class SubTable {
 public:
  SubTable(const CayleyTable& parent, const IndexSet& members);

  const CayleyTable& table() const { return _table; }
  const IndexSet& members() const { return _members; }
  const std::vector<uint32_t>& member_list() const { return _member_list; }
  uint32_t size() const { return _table.n(); }

  // Local (induced) index <-> parent index.
  uint32_t to_parent(uint32_t local) const { return _member_list[local]; }
  int64_t from_parent(uint32_t parent) const { return _from_parent[parent]; }

  // Map a local-coordinate set back into parent coordinates.
  IndexSet lift(const IndexSet& local) const;
  // Map a parent-coordinate subset of the members into local coordinates.
  IndexSet restrict(const IndexSet& parent_set) const;

 private:
  IndexSet _members;
  std::vector<uint32_t> _member_list;
  std::vector<int64_t> _from_parent;
  CayleyTable _table;
};

}  // namespace subsemi

#endif
