#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "subsemi/cayley_table.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/error.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/search.hpp"

using subsemi::CayleyTable;
using subsemi::ConjugationAction;
using subsemi::ElementIndexing;
using subsemi::EnumerationResult;
using subsemi::IndexSet;
using subsemi::PropertyFilter;
using subsemi::SearchOptions;
using subsemi::Strategy;
using subsemi::Transformation;
using subsemi::build_action;
using subsemi::enumerate_brute;
using subsemi::enumerate_min_extensions;
using subsemi::enumerate_mingen;
using subsemi::errc;
using subsemi::error;
using subsemi::full_transformation_table;

namespace {

SearchOptions dfs_opts() { return {}; }

SearchOptions bfs_opts() {
  SearchOptions o;
  o.strategy = Strategy::bfs;
  return o;
}

bool sorted_by_output_order(const std::vector<IndexSet>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!IndexSet::output_less(v[i - 1], v[i]) && v[i - 1] != v[i]) {
      if (IndexSet::output_less(v[i], v[i - 1])) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("brute force on T_2 finds all ten subsemigroups") {
  CayleyTable t = full_transformation_table(2);
  EnumerationResult r = enumerate_brute(t);
  CHECK(r.found.size() == 10);
  CHECK(sorted_by_output_order(r.found));
  CHECK(r.found.front().empty());  // the empty set comes first
  CHECK(r.found.back() == IndexSet::full(4));
  for (const IndexSet& s : r.found) CHECK(subsemi::is_closed(t, s));
}

TEST_CASE("brute force respects its cap") {
  CayleyTable t = testutil::left_zero(21);
  CHECK_THROWS_AS((void)enumerate_brute(t), error);
  try {
    (void)enumerate_brute(t);
  } catch (const error& e) {
    CHECK(e.code() == errc::too_large);
  }
  CHECK_NOTHROW((void)enumerate_brute(testutil::left_zero(8), 8));
  // tables beyond 32 elements are refused no matter how generous the cap
  CHECK_THROWS_AS((void)enumerate_brute(testutil::left_zero(33), 64), error);
}

TEST_CASE("minimal extensions agree with brute force on small tables") {
  for (const CayleyTable& t :
       {full_transformation_table(2), testutil::group6(), testutil::chain_semilattice(5),
        testutil::monogenic(3, 3), testutil::null_semigroup(4), testutil::right_zero(4)}) {
    EnumerationResult brute = enumerate_brute(t);
    for (Strategy st : {Strategy::dfs, Strategy::bfs}) {
      SearchOptions o;
      o.strategy = st;
      EnumerationResult r = enumerate_min_extensions(t, IndexSet(t.n()), o);
      CHECK(r.found == brute.found);
      // turning the generator-class shortcut off must not change anything
      o.use_equiv_generators = false;
      EnumerationResult r2 = enumerate_min_extensions(t, IndexSet(t.n()), o);
      CHECK(r2.found == brute.found);
    }
  }
}

TEST_CASE("T_3 has 1299 subsemigroups including the empty one") {
  CayleyTable t = full_transformation_table(3);
  EnumerationResult dfs = enumerate_min_extensions(t, IndexSet(27), dfs_opts());
  CHECK(dfs.found.size() == 1299);
  EnumerationResult bfs = enumerate_min_extensions(t, IndexSet(27), bfs_opts());
  CHECK(bfs.found == dfs.found);
  CHECK(sorted_by_output_order(dfs.found));
  CHECK(!dfs.levels.has_value());
  REQUIRE(bfs.levels.has_value());
  CHECK(bfs.levels->size() == 1299);
}

TEST_CASE("bfs levels are the semigroup ranks") {
  CayleyTable t = full_transformation_table(3);
  EnumerationResult bfs = enumerate_min_extensions(t, IndexSet(27), bfs_opts());
  EnumerationResult mg = enumerate_mingen(t, {});
  REQUIRE(mg.levels.has_value());
  CHECK(mg.found == bfs.found);
  CHECK(*mg.levels == *bfs.levels);
  // the empty set has rank 0, singletons' closures rank 1
  std::map<uint32_t, uint64_t> by_rank;
  for (size_t i = 0; i < mg.found.size(); ++i) ++by_rank[(*mg.levels)[i]];
  CHECK(by_rank[0] == 1);
  CHECK(by_rank[1] == 26);   // one per generator-equivalence class
  CHECK(by_rank[2] == 201);
  CHECK(by_rank[3] == 460);
  CHECK(by_rank[4] == 410);
  CHECK(by_rank[5] == 171);
  CHECK(by_rank[6] == 30);
}

TEST_CASE("non-closed seeds are rejected") {
  CayleyTable t = testutil::group6();
  try {
    (void)enumerate_min_extensions(t, IndexSet::of(6, {3}), dfs_opts());
    FAIL("expected an error");
  } catch (const error& e) {
    CHECK(e.code() == errc::seed_not_closed);
  }
}

TEST_CASE("searching above a seed yields exactly the supersets") {
  CayleyTable t = full_transformation_table(3);
  IndexSet seed = subsemi::closure_naive(t, IndexSet::of(27, {5}));  // the identity alone
  EnumerationResult above = enumerate_min_extensions(t, seed, dfs_opts());
  EnumerationResult all = enumerate_min_extensions(t, IndexSet(27), dfs_opts());
  uint64_t expected = 0;
  for (const IndexSet& s : all.found)
    if (seed.is_subset_of(s)) ++expected;
  CHECK(above.found.size() == expected);
  for (const IndexSet& s : above.found) CHECK(seed.is_subset_of(s));
}

TEST_CASE("restricting X limits which elements may be adjoined") {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  IndexSet x = subsemi::ideal_elements(idx, 2);
  SearchOptions o;
  o.restrict_extensions_to = x;
  EnumerationResult r = enumerate_min_extensions(t, IndexSet(27), o);
  EnumerationResult all = enumerate_min_extensions(t, IndexSet(27), dfs_opts());
  uint64_t expected = 0;
  for (const IndexSet& s : all.found)
    if (s.is_subset_of(x)) ++expected;
  CHECK(r.found.size() == expected);
  for (const IndexSet& s : r.found) CHECK(s.is_subset_of(x));
}

TEST_CASE("max_size prunes by cardinality") {
  CayleyTable t = full_transformation_table(3);
  SearchOptions o;
  o.max_size = 4;
  EnumerationResult r = enumerate_min_extensions(t, IndexSet(27), o);
  EnumerationResult all = enumerate_min_extensions(t, IndexSet(27), dfs_opts());
  uint64_t expected = 0;
  for (const IndexSet& s : all.found)
    if (s.count() <= 4) ++expected;
  CHECK(r.found.size() == expected);
  for (const IndexSet& s : r.found) CHECK(s.count() <= 4);
}

TEST_CASE("symmetry reduction emits canonical orbit representatives") {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  ConjugationAction act = build_action(
      idx, {Transformation::parse("[2,1,3]"), Transformation::parse("[2,3,1]")}, "S3");
  SearchOptions o;
  o.symmetry = &act;
  EnumerationResult classes = enumerate_min_extensions(t, IndexSet(27), o);
  CHECK(classes.found.size() == 283);
  uint64_t orbit_total = 0;
  for (const IndexSet& s : classes.found) {
    CHECK(act.canonical_rep(s) == s);
    orbit_total += act.orbit_count(s);
  }
  CHECK(orbit_total == 1299);
  // the orbits of the representatives cover the full list exactly
  EnumerationResult all = enumerate_min_extensions(t, IndexSet(27), dfs_opts());
  std::vector<IndexSet> canon;
  canon.reserve(all.found.size());
  for (const IndexSet& s : all.found) canon.push_back(act.canonical_rep(s));
  std::sort(canon.begin(), canon.end(), IndexSet::output_less);
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  CHECK(canon == classes.found);
}

TEST_CASE("normalizer pruning changes nothing but the work") {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  ConjugationAction act = build_action(
      idx, {Transformation::parse("[2,1,3]"), Transformation::parse("[2,3,1]")}, "S3");
  SearchOptions with, without;
  with.symmetry = without.symmetry = &act;
  with.use_normalizer_pruning = true;
  EnumerationResult a = enumerate_min_extensions(t, IndexSet(27), with);
  EnumerationResult b = enumerate_min_extensions(t, IndexSet(27), without);
  CHECK(a.found == b.found);
  CHECK(a.stats.extensions_tried <= b.stats.extensions_tried);
  // but it is a caller bug without symmetry
  SearchOptions bad;
  bad.use_normalizer_pruning = true;
  CHECK_THROWS_AS((void)enumerate_min_extensions(t, IndexSet(27), bad), error);
}

TEST_CASE("symmetry with a non-invariant X is rejected") {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  ConjugationAction act = build_action(
      idx, {Transformation::parse("[2,1,3]"), Transformation::parse("[2,3,1]")}, "S3");
  SearchOptions o;
  o.symmetry = &act;
  o.restrict_extensions_to = IndexSet::of(27, {1});  // one non-constant element
  CHECK_THROWS_AS((void)enumerate_min_extensions(t, IndexSet(27), o), error);
}

TEST_CASE("property filters keep exactly the sets with the property") {
  CayleyTable t = full_transformation_table(3);
  EnumerationResult all = enumerate_min_extensions(t, IndexSet(27), dfs_opts());

  auto filtered = [&](PropertyFilter f) {
    SearchOptions o;
    o.property_filter = f;
    return enumerate_min_extensions(t, IndexSet(27), o);
  };

  SUBCASE("commutative") {
    EnumerationResult r = filtered(PropertyFilter::commutative);
    uint64_t expected = 0;
    for (const IndexSet& s : all.found) {
      bool comm = true;
      s.for_each([&](uint32_t a) {
        s.for_each([&](uint32_t b) { comm = comm && t.entry(a, b) == t.entry(b, a); });
      });
      if (comm) ++expected;
    }
    CHECK(r.found.size() == expected);
  }

  SUBCASE("band") {
    EnumerationResult r = filtered(PropertyFilter::band);
    uint64_t expected = 0;
    for (const IndexSet& s : all.found) {
      bool band = true;
      s.for_each([&](uint32_t a) { band = band && t.entry(a, a) == a; });
      if (band) ++expected;
    }
    CHECK(r.found.size() == expected);
    // idempotent count: bands of T_3 live inside its 10 idempotents
    for (const IndexSet& s : r.found)
      s.for_each([&](uint32_t a) { CHECK(t.entry(a, a) == a); });
  }

  SUBCASE("nilpotent") {
    EnumerationResult r = filtered(PropertyFilter::nilpotent);
    // oracle: S^k must shrink to a singleton
    auto is_nilp = [&](const IndexSet& s) {
      if (s.empty()) return true;
      IndexSet cur = s;
      for (;;) {
        IndexSet next(t.n());
        cur.for_each([&](uint32_t a) {
          cur.for_each([&](uint32_t b) { next.add(t.entry(a, b)); });
        });
        if (next == cur) return cur.count() == 1;
        cur = next;
      }
    };
    uint64_t expected = 0;
    for (const IndexSet& s : all.found)
      if (is_nilp(s)) ++expected;
    CHECK(r.found.size() == expected);
  }
}

TEST_CASE("mingen respects its class cap") {
  CayleyTable t = testutil::left_zero(31);  // 31 singleton classes
  CHECK_THROWS_AS((void)enumerate_mingen(t, {}), error);
  try {
    (void)enumerate_mingen(t, {});
  } catch (const error& e) {
    CHECK(e.code() == errc::too_large);
  }
}

TEST_CASE("mingen matches brute force everywhere it runs") {
  for (const CayleyTable& t :
       {full_transformation_table(2), testutil::group6(), testutil::chain_semilattice(4),
        testutil::null_semigroup(5)}) {
    EnumerationResult mg = enumerate_mingen(t, {});
    EnumerationResult brute = enumerate_brute(t);
    CHECK(mg.found == brute.found);
  }
}

TEST_CASE("mingen under symmetry matches the symmetric search") {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  ConjugationAction act = build_action(
      idx, {Transformation::parse("[2,1,3]"), Transformation::parse("[2,3,1]")}, "S3");
  SearchOptions o;
  o.symmetry = &act;
  EnumerationResult mg = enumerate_mingen(t, o);
  EnumerationResult mx = enumerate_min_extensions(t, IndexSet(27), o);
  CHECK(mg.found == mx.found);
}

TEST_CASE("stats are populated") {
  CayleyTable t = full_transformation_table(2);
  EnumerationResult r = enumerate_min_extensions(t, IndexSet(4), dfs_opts());
  CHECK(r.stats.nodes_visited == 10);
  CHECK(r.stats.closures_computed > 0);
  CHECK(r.stats.entries_checked > 0);
  CHECK(!r.provenance.empty());
}

TEST_CASE("the degenerate empty table yields exactly the empty set") {
  CayleyTable t = CayleyTable::validated(0, {}, {});
  EnumerationResult r = enumerate_min_extensions(t, IndexSet(0), dfs_opts());
  REQUIRE(r.found.size() == 1);
  CHECK(r.found[0].empty());
  EnumerationResult b = enumerate_brute(t);
  CHECK(b.found == r.found);
}
