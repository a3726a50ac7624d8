#ifndef SUBSEMI_INDEX_SET_HPP
#define SUBSEMI_INDEX_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace subsemi {

// A subset of {0, …, universe-1} backed by a bit vector.  Element indices are
// 0-based everywhere inside the library; the 1-based convention of the file
// formats is applied only at the I/O boundary.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(uint32_t universe) : _universe(universe), _words((universe + 63) / 64, 0) {}

  static IndexSet full(uint32_t universe);
  static IndexSet of(uint32_t universe, std::initializer_list<uint32_t> elems);

  uint32_t universe() const noexcept { return _universe; }
  bool contains(uint32_t i) const noexcept { return (_words[i >> 6] >> (i & 63)) & 1; }
  void add(uint32_t i) noexcept { _words[i >> 6] |= uint64_t(1) << (i & 63); }
  void remove(uint32_t i) noexcept { _words[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  uint32_t count() const noexcept;
  bool empty() const noexcept;
  void clear() noexcept;

  // Smallest member; universe() when empty.
  uint32_t min() const noexcept;
  // Smallest member >= i; universe() when there is none.
  uint32_t next(uint32_t i) const noexcept;
  bool any_above(uint32_t i) const noexcept;  // any member strictly greater than i

  IndexSet& operator|=(const IndexSet& o) noexcept;
  IndexSet& operator&=(const IndexSet& o) noexcept;
  IndexSet& operator-=(const IndexSet& o) noexcept;  // set difference

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  bool operator==(const IndexSet& o) const noexcept { return _universe == o._universe && _words == o._words; }
  bool operator!=(const IndexSet& o) const noexcept { return !(*this == o); }

  bool is_subset_of(const IndexSet& o) const noexcept;
  bool intersects(const IndexSet& o) const noexcept;

  // Compares the ascending member sequences lexicographically ({1,3} > {1,2,5}
  // because 3 > 2 at the second position; a strict prefix precedes its
  // extensions).  Returns <0, 0, >0.
  int seq_compare(const IndexSet& o) const noexcept;

  // Output ordering used by every writer: cardinality first, then the
  // ascending member sequence.
  static bool output_less(const IndexSet& a, const IndexSet& b);

  template <typename F>
  void for_each(F&& f) const {
    for (size_t w = 0; w < _words.size(); ++w) {
      uint64_t bits = _words[w];
      while (bits) {
        f(uint32_t(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<uint32_t> members() const;

  std::span<const uint64_t> words() const noexcept { return _words; }
  size_t hash() const noexcept;

  // Fixed-width lowercase hex, ceil(universe/4) digits, bit i-1 of the value
  // is membership of 1-based element i (so the string is stable per universe).
  std::string to_hex() const;
  static IndexSet from_hex(uint32_t universe, const std::string& hex);

 private:
  uint32_t _universe = 0;
  std::vector<uint64_t> _words;
};

struct IndexSetHash {
  size_t operator()(const IndexSet& s) const noexcept { return s.hash(); }
};

}  // namespace subsemi

#endif
