#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "subsemi/cayley_table.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/error.hpp"
#include "subsemi/index_set.hpp"

using subsemi::BaseCheck;
using subsemi::CayleyTable;
using subsemi::ClosureTrace;
using subsemi::IndexSet;
using subsemi::closure_extend;
using subsemi::closure_incremental;
using subsemi::closure_naive;
using subsemi::errc;
using subsemi::error;
using subsemi::is_closed;
using subsemi::missing_elements;

TEST_CASE("the empty set is closed and fixed by closure") {
  CayleyTable t = testutil::group6();
  IndexSet e(t.n());
  CHECK(is_closed(t, e));
  CHECK(closure_naive(t, e) == e);
  CHECK(missing_elements(t, e).count() == 0);
}

TEST_CASE("closure of one group element walks its cyclic trace") {
  CayleyTable t = testutil::group6();
  // element 4 (1-based) squares to 5, 5·4 and friends force 1, then the set
  // {1,4,5} is closed: a three-step incorporation starting from nothing.
  ClosureTrace tr = closure_incremental(t, IndexSet(t.n()), IndexSet::of(t.n(), {3}));
  CHECK(tr.result == IndexSet::of(t.n(), {0, 3, 4}));
  REQUIRE(tr.steps.size() == 3);
  CHECK(tr.steps[0].added == 3);
  CHECK(tr.steps[0].forced == std::vector<uint32_t>{4});
  CHECK(tr.steps[1].added == 4);
  CHECK(tr.steps[1].forced == std::vector<uint32_t>{0});
  CHECK(tr.steps[2].added == 0);
  CHECK(tr.steps[2].forced.empty());
  CHECK(tr.entries_checked == 9);  // 3×3 subarray, every cell read once
}

TEST_CASE("strict mode rejects bad bases") {
  CayleyTable t = testutil::group6();
  IndexSet not_closed = IndexSet::of(t.n(), {3});  // 4·4 = 5 escapes
  CHECK_THROWS_AS((void)closure_incremental(t, not_closed, IndexSet::of(t.n(), {1})), error);
  try {
    (void)closure_incremental(t, not_closed, IndexSet::of(t.n(), {1}));
  } catch (const error& e) {
    CHECK(e.code() == errc::precondition_violated);
  }
  // overlapping adds are also a caller bug under strict
  IndexSet base = IndexSet::of(t.n(), {0});
  CHECK_THROWS_AS((void)closure_incremental(t, base, IndexSet::of(t.n(), {0})), error);
}

TEST_CASE("fast mode trusts the caller") {
  CayleyTable t = testutil::group6();
  IndexSet base = IndexSet::of(t.n(), {0});
  ClosureTrace tr = closure_incremental(t, base, IndexSet::of(t.n(), {1}), BaseCheck::fast);
  CHECK(tr.result == IndexSet::of(t.n(), {0, 1}));
  CHECK(tr.entries_checked == 4 - 1);  // |result|² − |base|²
}

TEST_CASE("null semigroup closures always pull in the zero") {
  CayleyTable t = testutil::null_semigroup(5);
  for (uint32_t x = 1; x < 5; ++x) {
    IndexSet got = closure_naive(t, IndexSet::of(5, {x}));
    CHECK(got == IndexSet::of(5, {0, x}));
  }
}

TEST_CASE("incremental closure agrees with the naive oracle on random inputs") {
  std::vector<CayleyTable> tables;
  tables.push_back(testutil::group6());
  tables.push_back(testutil::chain_semilattice(7));
  tables.push_back(testutil::monogenic(3, 4));
  tables.push_back(testutil::left_zero(6));
  std::mt19937_64 rng(0x5eedULL);
  for (const CayleyTable& t : tables) {
    std::uniform_int_distribution<uint32_t> pick(0, t.n() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      // random closed base, random disjoint adds
      IndexSet base(t.n());
      if (trial % 3 != 0) base = closure_naive(t, IndexSet::of(t.n(), {pick(rng)}));
      IndexSet adds(t.n());
      for (int k = 0; k < 3; ++k) {
        uint32_t x = pick(rng);
        if (!base.contains(x)) adds.add(x);
      }
      ClosureTrace tr = closure_incremental(t, base, adds);
      CHECK(tr.result == closure_naive(t, base | adds));
      CHECK(is_closed(t, tr.result));
      CHECK(base.is_subset_of(tr.result));
      CHECK(tr.entries_checked ==
            uint64_t(tr.result.count()) * tr.result.count() - uint64_t(base.count()) * base.count());
      // every step's additions are members of the final result
      for (const auto& st : tr.steps) {
        CHECK(tr.result.contains(st.added));
        for (uint32_t f : st.forced) CHECK(tr.result.contains(f));
      }
    }
  }
}

TEST_CASE("closure_extend matches the traced version") {
  CayleyTable t = testutil::monogenic(4, 3);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<uint32_t> pick(0, t.n() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    IndexSet base = closure_naive(t, IndexSet::of(t.n(), {pick(rng)}));
    uint32_t x = pick(rng);
    if (base.contains(x)) continue;
    uint64_t entries = 0;
    IndexSet got = closure_extend(t, base, x, entries);
    ClosureTrace tr = closure_incremental(t, base, IndexSet::of(t.n(), {x}));
    CHECK(got == tr.result);
    CHECK(entries == tr.entries_checked);
  }
}

TEST_CASE("missing_elements is empty exactly on closed sets") {
  CayleyTable t = testutil::chain_semilattice(6);
  std::mt19937_64 rng(7);
  for (const IndexSet& s : testutil::random_subsets(6, 300, 6, 7)) {
    CHECK((missing_elements(t, s).count() == 0) == is_closed(t, s));
    (void)rng;
  }
}
