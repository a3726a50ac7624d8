#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "subsemi/classify.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/subtable.hpp"
#include "subsemi/transformation.hpp"

namespace {

using namespace subsemi;

struct Fixture {
  CayleyTable table;
  ConjugationAction act;
  std::vector<IndexSet> subs;  // random subsemigroups
};

const Fixture& fixture(uint32_t degree) {
  static Fixture f3 = [] {
    ElementIndexing idx(3);
    Fixture f{full_transformation_table(3),
              build_action(idx, {Transformation::parse("[2,1,3]"), Transformation::parse("[2,3,1]")},
                           "S3"),
              {}};
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<uint32_t> pick(0, f.table.n() - 1);
    uint64_t cells = 0;
    while (f.subs.size() < 64) {
      IndexSet s(f.table.n());
      for (int g = 0; g < 3; ++g) {
        uint32_t x = pick(rng);
        if (!s.contains(x)) s = closure_extend(f.table, s, x, cells);
      }
      f.subs.push_back(std::move(s));
    }
    return f;
  }();
  static Fixture f4 = [] {
    ElementIndexing idx(4);
    Fixture f{full_transformation_table(4),
              build_action(idx,
                           {Transformation::parse("[2,1,3,4]"), Transformation::parse("[2,3,4,1]")},
                           "S4"),
              {}};
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<uint32_t> pick(0, f.table.n() - 1);
    uint64_t cells = 0;
    while (f.subs.size() < 64) {
      IndexSet s(f.table.n());
      for (int g = 0; g < 2; ++g) {
        uint32_t x = pick(rng);
        if (!s.contains(x)) s = closure_extend(f.table, s, x, cells);
      }
      f.subs.push_back(std::move(s));
    }
    return f;
  }();
  return degree == 3 ? f3 : f4;
}

void BM_canonical_rep(benchmark::State& state) {
  const Fixture& f = fixture(uint32_t(state.range(0)));
  size_t i = 0;
  for (auto _ : state) {
    IndexSet r = f.act.canonical_rep(f.subs[i++ % f.subs.size()]);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_canonical_rep)->Arg(3)->Arg(4);

void BM_canonical_form(benchmark::State& state) {
  const Fixture& f = fixture(3);
  std::vector<SubTable> tables;
  for (const IndexSet& s : f.subs)
    if (s.count() >= 2 && s.count() <= 8) tables.emplace_back(f.table, s);
  size_t i = 0;
  for (auto _ : state) {
    CanonicalForm c = canonical_form(tables[i++ % tables.size()], CanonMode::iso);
    benchmark::DoNotOptimize(c.flat);
  }
}
BENCHMARK(BM_canonical_form);

}  // namespace
