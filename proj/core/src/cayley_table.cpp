#include "subsemi/cayley_table.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <thread>

#include "subsemi/error.hpp"

namespace subsemi {

namespace {

// Returns the lexicographically first triple (i, j, k), 0-based, with
// (i·j)·k != i·(j·k), or no value.  Chunked over i so that degree-5 tables
// (n = 3125, ~3·10^10 triples) stay below a minute on a few cores.
std::optional<std::array<uint32_t, 3>> first_assoc_violation(uint32_t n,
                                                             const std::vector<uint32_t>& m) {
  if (n == 0) return std::nullopt;
  auto scan_rows = [&](uint32_t lo, uint32_t hi) -> std::optional<std::array<uint32_t, 3>> {
    for (uint32_t i = lo; i < hi; ++i) {
      const uint32_t* row_i = m.data() + size_t(i) * n;
      for (uint32_t j = 0; j < n; ++j) {
        uint32_t ij = row_i[j];
        const uint32_t* row_ij = m.data() + size_t(ij) * n;
        const uint32_t* row_j = m.data() + size_t(j) * n;
        for (uint32_t k = 0; k < n; ++k)
          if (row_ij[k] != row_i[row_j[k]]) return std::array<uint32_t, 3>{i, j, k};
      }
    }
    return std::nullopt;
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (n < 512 || hw < 2) return scan_rows(0, n);

  unsigned jobs = std::min<unsigned>(hw, 16);
  std::vector<std::optional<std::array<uint32_t, 3>>> found(jobs);
  std::vector<std::thread> threads;
  uint32_t chunk = (n + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    uint32_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, t, lo, hi] { found[t] = scan_rows(lo, hi); });
  }
  for (auto& th : threads) th.join();
  // Chunks cover disjoint ascending i ranges, so the first hit is the
  // lexicographically least violation.
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace

CayleyTable CayleyTable::validated(uint32_t n, std::vector<uint32_t> entries,
                                   std::vector<std::string> labels) {
  if (entries.size() != size_t(n) * n)
    throw error(errc::bad_format, "table body has " + std::to_string(entries.size()) +
                                      " entries, expected " + std::to_string(size_t(n) * n));
  for (size_t p = 0; p < entries.size(); ++p)
    if (entries[p] >= n)
      throw error(errc::entry_out_of_range,
                  "entry " + std::to_string(entries[p] + 1) + " at row " +
                      std::to_string(p / n + 1) + ", column " + std::to_string(p % n + 1) +
                      " is outside 1.." + std::to_string(n),
                  {uint32_t(p / n + 1), uint32_t(p % n + 1), entries[p] + 1});

  if (auto bad = first_assoc_violation(n, entries)) {
    auto [i, j, k] = *bad;
    throw error(errc::non_associative,
                "(" + std::to_string(i + 1) + "*" + std::to_string(j + 1) + ")*" +
                    std::to_string(k + 1) + " != " + std::to_string(i + 1) + "*(" +
                    std::to_string(j + 1) + "*" + std::to_string(k + 1) + ")",
                {i + 1, j + 1, k + 1});
  }

  CayleyTable t;
  t._n = n;
  t._entries = std::move(entries);
  t.set_labels(std::move(labels));
  return t;
}

void CayleyTable::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != _n)
    throw error(errc::bad_format, "expected " + std::to_string(_n) + " labels, got " +
                                      std::to_string(labels.size()));
  _labels = std::move(labels);
}

CayleyTable validate(const std::vector<std::vector<uint32_t>>& rows,
                     std::vector<std::string> labels) {
  uint32_t n = uint32_t(rows.size());
  std::vector<uint32_t> entries;
  entries.reserve(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw error(errc::bad_format,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(n));
    for (uint32_t v : rows[i]) {
      if (v == 0 || v > n)
        throw error(errc::entry_out_of_range,
                    "entry " + std::to_string(v) + " in row " + std::to_string(i + 1) +
                        " is outside 1.." + std::to_string(n),
                    {i + 1, v});
      entries.push_back(v - 1);
    }
  }
  return CayleyTable::validated(n, std::move(entries), std::move(labels));
}

}  // namespace subsemi
