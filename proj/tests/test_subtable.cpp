#include <cstdint>

#include "doctest.h"
#include "helpers.hpp"
#include "subsemi/cayley_table.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/error.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/subtable.hpp"

using subsemi::CayleyTable;
using subsemi::ElementIndexing;
using subsemi::IndexSet;
using subsemi::SubTable;
using subsemi::error;
using subsemi::full_transformation_table;
using subsemi::ideal_elements;
using subsemi::symmetric_group;

TEST_CASE("the induced table multiplies like the parent") {
  CayleyTable t = testutil::group6();
  IndexSet g3 = IndexSet::of(6, {0, 3, 4});  // the order-3 subgroup
  SubTable st(t, g3);
  REQUIRE(st.size() == 3);
  CHECK(st.member_list() == std::vector<uint32_t>{0, 3, 4});
  for (uint32_t a = 0; a < 3; ++a)
    for (uint32_t b = 0; b < 3; ++b) {
      uint32_t parent_prod = t.entry(st.to_parent(a), st.to_parent(b));
      CHECK(st.to_parent(st.table().entry(a, b)) == parent_prod);
    }
}

TEST_CASE("non-closed member sets are rejected with a witness") {
  CayleyTable t = testutil::group6();
  try {
    SubTable st(t, IndexSet::of(6, {3}));  // 4·4 = 5 escapes
    FAIL("expected an error");
  } catch (const error& e) {
    CHECK(e.code() == subsemi::errc::precondition_violated);
    REQUIRE(e.witness().size() == 3);
    CHECK(e.witness()[0] == 4);  // 1-based
    CHECK(e.witness()[2] == 5);  // the escaping product
  }
}

TEST_CASE("from_parent and to_parent are inverse on members") {
  ElementIndexing idx(3);
  CayleyTable t = full_transformation_table(3);
  SubTable st(t, ideal_elements(idx, 2));
  REQUIRE(st.size() == 21);
  for (uint32_t local = 0; local < st.size(); ++local)
    CHECK(st.from_parent(st.to_parent(local)) == int64_t(local));
  // permutations have full rank, so they are not members and map to -1
  symmetric_group(idx).for_each([&](uint32_t p) { CHECK(st.from_parent(p) == -1); });
}

TEST_CASE("lift and restrict are mutually inverse") {
  ElementIndexing idx(3);
  CayleyTable t = full_transformation_table(3);
  SubTable st(t, symmetric_group(idx));
  IndexSet local = IndexSet::of(st.size(), {0, 2, 5});
  CHECK(st.restrict(st.lift(local)) == local);
  IndexSet parent_subset = st.lift(local);
  CHECK(st.lift(st.restrict(parent_subset)) == parent_subset);
  // restricting something outside the members is a caller bug: element 0 is
  // the constant map, which is not a permutation
  CHECK_THROWS_AS((void)st.restrict(IndexSet::of(t.n(), {0})), error);
}

TEST_CASE("labels come along from the parent") {
  CayleyTable t = full_transformation_table(2);
  SubTable st(t, IndexSet::of(4, {0, 3}));  // the two constant maps
  REQUIRE(st.table().has_labels());
  CHECK(st.table().labels()[0] == "[1,1]");
  CHECK(st.table().labels()[1] == "[2,2]");
}

TEST_CASE("closed subsets of the subtable lift to closed parent subsets") {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  SubTable st(t, ideal_elements(idx, 2));
  for (const IndexSet& s : testutil::random_closed(st.table(), 60, 3, 0xfeedULL)) {
    CHECK(subsemi::is_closed(st.table(), s));
    CHECK(subsemi::is_closed(t, st.lift(s)));
  }
}

TEST_CASE("the whole table as a subtable is an identity view") {
  CayleyTable t = testutil::chain_semilattice(4);
  SubTable st(t, IndexSet::full(4));
  for (uint32_t a = 0; a < 4; ++a)
    for (uint32_t b = 0; b < 4; ++b) CHECK(st.table().entry(a, b) == t.entry(a, b));
}
