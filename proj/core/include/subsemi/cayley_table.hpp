#ifndef SUBSEMI_CAYLEY_TABLE_HPP
#define SUBSEMI_CAYLEY_TABLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace subsemi {

// Multiplication table of a finite semigroup on elements 0 … n-1 (row i,
// column j holds i·j).  Construction always runs the O(n³) associativity and
// range check — there is no way to obtain an unvalidated table.  Optional
// per-element labels are carried along for file round-trips and for
// interpreting elements as transformations.
class CayleyTable {
 public:
  CayleyTable() = default;

  // Throws error{entry_out_of_range} or error{non_associative}; the witness of
  // a non-associative table is the lexicographically first failing triple
  // (i, j, k), reported 1-based.
  static CayleyTable validated(uint32_t n, std::vector<uint32_t> entries,
                               std::vector<std::string> labels = {});

  uint32_t n() const noexcept { return _n; }
  uint32_t entry(uint32_t i, uint32_t j) const noexcept { return _entries[size_t(i) * _n + j]; }
  std::span<const uint32_t> row(uint32_t i) const noexcept {
    return {_entries.data() + size_t(i) * _n, _n};
  }
  std::span<const uint32_t> entries() const noexcept { return _entries; }

  bool has_labels() const noexcept { return !_labels.empty(); }
  const std::vector<std::string>& labels() const noexcept { return _labels; }
  void set_labels(std::vector<std::string> labels);

 private:
  uint32_t _n = 0;
  std::vector<uint32_t> _entries;
  std::vector<std::string> _labels;
};

// The raw-matrix entry point used by readers: `rows` holds 1-based entries
// exactly as they appear in a table file.
CayleyTable validate(const std::vector<std::vector<uint32_t>>& rows,
                     std::vector<std::string> labels = {});

}  // namespace subsemi

#endif
