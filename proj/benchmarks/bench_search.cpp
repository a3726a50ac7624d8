#include <benchmark/benchmark.h>

#include "subsemi/conjugation.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/search.hpp"
#include "subsemi/transformation.hpp"

namespace {

using namespace subsemi;

void BM_minext_t2(benchmark::State& state) {
  CayleyTable t = full_transformation_table(2);
  for (auto _ : state) {
    SearchOptions so;
    so.strategy = state.range(0) ? Strategy::bfs : Strategy::dfs;
    EnumerationResult r = enumerate_min_extensions(t, IndexSet(t.n()), so);
    benchmark::DoNotOptimize(r.found);
  }
}
BENCHMARK(BM_minext_t2)->Arg(0)->Arg(1);

void BM_minext_t3(benchmark::State& state) {
  CayleyTable t = full_transformation_table(3);
  for (auto _ : state) {
    SearchOptions so;
    so.strategy = state.range(0) ? Strategy::bfs : Strategy::dfs;
    EnumerationResult r = enumerate_min_extensions(t, IndexSet(t.n()), so);
    benchmark::DoNotOptimize(r.found);
  }
}
BENCHMARK(BM_minext_t3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_minext_t3_symmetric(benchmark::State& state) {
  CayleyTable t = full_transformation_table(3);
  ElementIndexing idx(3);
  ConjugationAction act = build_action(
      idx, {Transformation::parse("[2,1,3]"), Transformation::parse("[2,3,1]")}, "S3");
  for (auto _ : state) {
    SearchOptions so;
    so.symmetry = &act;
    EnumerationResult r = enumerate_min_extensions(t, IndexSet(t.n()), so);
    benchmark::DoNotOptimize(r.found);
  }
}
BENCHMARK(BM_minext_t3_symmetric)->Unit(benchmark::kMillisecond);

void BM_brute_t2(benchmark::State& state) {
  CayleyTable t = full_transformation_table(2);
  for (auto _ : state) {
    EnumerationResult r = enumerate_brute(t);
    benchmark::DoNotOptimize(r.found);
  }
}
BENCHMARK(BM_brute_t2);

}  // namespace

BENCHMARK_MAIN();
