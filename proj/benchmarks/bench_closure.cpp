#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "subsemi/closure.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/index_set.hpp"

namespace {

using namespace subsemi;

const CayleyTable& t3() {
  static CayleyTable t = full_transformation_table(3);
  return t;
}

std::vector<IndexSet> random_bases(uint32_t universe, size_t count, uint32_t card) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<uint32_t> pick(0, universe - 1);
  std::vector<IndexSet> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    IndexSet s(universe);
    while (s.count() < card) s.add(pick(rng));
    out.push_back(std::move(s));
  }
  return out;
}

void BM_closure_naive(benchmark::State& state) {
  const CayleyTable& t = t3();
  auto bases = random_bases(t.n(), 64, uint32_t(state.range(0)));
  size_t i = 0;
  for (auto _ : state) {
    IndexSet r = closure_naive(t, bases[i++ % bases.size()]);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_closure_naive)->Arg(1)->Arg(3)->Arg(6);

void BM_closure_incremental(benchmark::State& state) {
  const CayleyTable& t = t3();
  auto adds = random_bases(t.n(), 64, uint32_t(state.range(0)));
  IndexSet empty(t.n());
  size_t i = 0;
  for (auto _ : state) {
    ClosureTrace r = closure_incremental(t, empty, adds[i++ % adds.size()], BaseCheck::fast);
    benchmark::DoNotOptimize(r.result);
  }
}
BENCHMARK(BM_closure_incremental)->Arg(1)->Arg(3)->Arg(6);

// The search hot path: grow a closed set one generator at a time.
void BM_closure_extend_chain(benchmark::State& state) {
  const CayleyTable& t = t3();
  auto gens = random_bases(t.n(), 64, 6);
  size_t i = 0;
  for (auto _ : state) {
    IndexSet cur(t.n());
    uint64_t cells = 0;
    gens[i++ % gens.size()].for_each([&](uint32_t x) {
      if (!cur.contains(x)) cur = closure_extend(t, cur, x, cells);
    });
    benchmark::DoNotOptimize(cur);
    benchmark::DoNotOptimize(cells);
  }
}
BENCHMARK(BM_closure_extend_chain);

}  // namespace
