#ifndef SUBSEMI_TEST_HELPERS_HPP
#define SUBSEMI_TEST_HELPERS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/index_set.hpp"

namespace testutil {

using subsemi::CayleyTable;
using subsemi::IndexSet;

// x·y = x
inline CayleyTable left_zero(uint32_t n) {
  std::vector<uint32_t> e(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) e[size_t(i) * n + j] = i;
  return CayleyTable::validated(n, std::move(e));
}

// x·y = y
inline CayleyTable right_zero(uint32_t n) {
  std::vector<uint32_t> e(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) e[size_t(i) * n + j] = j;
  return CayleyTable::validated(n, std::move(e));
}

// x·y = 0
inline CayleyTable null_semigroup(uint32_t n) {
  return CayleyTable::validated(n, std::vector<uint32_t>(size_t(n) * n, 0));
}

// x·y = min(x, y) on the chain 0 < 1 < ... < n-1
inline CayleyTable chain_semilattice(uint32_t n) {
  std::vector<uint32_t> e(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) e[size_t(i) * n + j] = i < j ? i : j;
  return CayleyTable::validated(n, std::move(e));
}

// The semigroup generated by one element x with x^(tail+period) = x^tail.
// Element i (0-based) stands for x^(i+1); the order is tail + period - 1.
inline CayleyTable monogenic(uint32_t tail, uint32_t period) {
  uint32_t n = tail + period - 1;
  auto fold = [&](uint32_t p) { return p <= n ? p : tail + (p - tail) % period; };
  std::vector<uint32_t> e(size_t(n) * n);
  for (uint32_t a = 1; a <= n; ++a)
    for (uint32_t b = 1; b <= n; ++b) e[size_t(a - 1) * n + (b - 1)] = fold(a + b) - 1;
  return CayleyTable::validated(n, std::move(e));
}

// A 6-element group table (two generators of orders 2 and 3) used as a
// hand-checkable fixture across suites; 1-based entries.
inline CayleyTable group6() {
  std::vector<std::vector<uint32_t>> rows = {{1, 2, 3, 4, 5, 6}, {2, 1, 4, 3, 6, 5},
                                             {3, 5, 1, 6, 2, 4}, {4, 6, 2, 5, 1, 3},
                                             {5, 3, 6, 1, 4, 2}, {6, 4, 5, 2, 3, 1}};
  return subsemi::validate(rows);
}

// Random closed subsets obtained by closing a few random generators.
inline std::vector<IndexSet> random_closed(const CayleyTable& t, size_t count, uint32_t gens,
                                           uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<IndexSet> out;
  out.reserve(count);
  uint64_t cells = 0;
  for (size_t i = 0; i < count; ++i) {
    IndexSet s(t.n());
    if (t.n() > 0) {
      std::uniform_int_distribution<uint32_t> pick(0, t.n() - 1);
      for (uint32_t g = 0; g < gens; ++g) {
        uint32_t x = pick(rng);
        if (!s.contains(x)) s = subsemi::closure_extend(t, s, x, cells);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Random subsets (not necessarily closed).
inline std::vector<IndexSet> random_subsets(uint32_t universe, size_t count, uint32_t max_card,
                                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<IndexSet> out;
  out.reserve(count);
  std::uniform_int_distribution<uint32_t> card(0, max_card);
  for (size_t i = 0; i < count; ++i) {
    IndexSet s(universe);
    if (universe > 0) {
      std::uniform_int_distribution<uint32_t> pick(0, universe - 1);
      uint32_t k = card(rng);
      for (uint32_t j = 0; j < k; ++j) s.add(pick(rng));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace testutil

#endif
