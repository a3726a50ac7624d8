#include "subsemi/subtable.hpp"

#include "subsemi/closure.hpp"
#include "subsemi/error.hpp"

namespace subsemi {

namespace {

CayleyTable make_induced(const CayleyTable& parent, const std::vector<uint32_t>& list,
                         const std::vector<int64_t>& pos) {
  uint32_t m = uint32_t(list.size());
  std::vector<uint32_t> entries(size_t(m) * m);
  for (uint32_t a = 0; a < m; ++a)
    for (uint32_t b = 0; b < m; ++b) {
      uint32_t prod = parent.entry(list[a], list[b]);
      if (pos[prod] < 0)
        throw error(errc::precondition_violated, "member set is not closed",
                    {list[a] + 1, list[b] + 1, prod + 1});
      entries[size_t(a) * m + b] = uint32_t(pos[prod]);
    }
  std::vector<std::string> labels;
  if (parent.has_labels()) {
    labels.reserve(m);
    for (uint32_t x : list) labels.push_back(parent.labels()[x]);
  }
  // Associativity is inherited from the parent, but tables are validated
  // unconditionally on construction.
  return CayleyTable::validated(m, std::move(entries), std::move(labels));
}

}  // namespace

SubTable::SubTable(const CayleyTable& parent, const IndexSet& members)
    : _members(members), _member_list(members.members()), _from_parent(parent.n(), -1) {
  for (size_t i = 0; i < _member_list.size(); ++i) _from_parent[_member_list[i]] = int64_t(i);
  _table = make_induced(parent, _member_list, _from_parent);
}

IndexSet SubTable::lift(const IndexSet& local) const {
  IndexSet out(uint32_t(_from_parent.size()));
  local.for_each([&](uint32_t i) { out.add(_member_list[i]); });
  return out;
}

IndexSet SubTable::restrict(const IndexSet& parent_set) const {
  IndexSet out(size());
  parent_set.for_each([&](uint32_t x) {
    if (_from_parent[x] < 0)
      throw error(errc::precondition_violated, "index is not a member of the subtable", {x + 1});
    out.add(uint32_t(_from_parent[x]));
  });
  return out;
}

}  // namespace subsemi
