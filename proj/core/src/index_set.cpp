#include "subsemi/index_set.hpp"

#include <algorithm>

#include "subsemi/error.hpp"

namespace subsemi {

IndexSet IndexSet::full(uint32_t universe) {
  IndexSet s(universe);
  for (size_t w = 0; w < s._words.size(); ++w) s._words[w] = ~uint64_t(0);
  if (universe % 64) s._words.back() &= (uint64_t(1) << (universe % 64)) - 1;
  if (universe == 0) s._words.clear();
  return s;
}

IndexSet IndexSet::of(uint32_t universe, std::initializer_list<uint32_t> elems) {
  IndexSet s(universe);
  for (uint32_t e : elems) s.add(e);
  return s;
}

uint32_t IndexSet::count() const noexcept {
  uint32_t c = 0;
  for (uint64_t w : _words) c += uint32_t(std::popcount(w));
  return c;
}

bool IndexSet::empty() const noexcept {
  for (uint64_t w : _words)
    if (w) return false;
  return true;
}

void IndexSet::clear() noexcept { std::fill(_words.begin(), _words.end(), 0); }

uint32_t IndexSet::min() const noexcept { return next(0); }

uint32_t IndexSet::next(uint32_t i) const noexcept {
  if (i >= _universe) return _universe;
  size_t w = i >> 6;
  uint64_t bits = _words[w] >> (i & 63);
  if (bits) return i + uint32_t(std::countr_zero(bits));
  for (++w; w < _words.size(); ++w)
    if (_words[w]) return uint32_t(w * 64 + std::countr_zero(_words[w]));
  return _universe;
}

bool IndexSet::any_above(uint32_t i) const noexcept { return i + 1 < _universe && next(i + 1) < _universe; }

IndexSet& IndexSet::operator|=(const IndexSet& o) noexcept {
  for (size_t w = 0; w < _words.size(); ++w) _words[w] |= o._words[w];
  return *this;
}

IndexSet& IndexSet::operator&=(const IndexSet& o) noexcept {
  for (size_t w = 0; w < _words.size(); ++w) _words[w] &= o._words[w];
  return *this;
}

IndexSet& IndexSet::operator-=(const IndexSet& o) noexcept {
  for (size_t w = 0; w < _words.size(); ++w) _words[w] &= ~o._words[w];
  return *this;
}

bool IndexSet::is_subset_of(const IndexSet& o) const noexcept {
  for (size_t w = 0; w < _words.size(); ++w)
    if (_words[w] & ~o._words[w]) return false;
  return true;
}

bool IndexSet::intersects(const IndexSet& o) const noexcept {
  for (size_t w = 0; w < _words.size(); ++w)
    if (_words[w] & o._words[w]) return true;
  return false;
}

int IndexSet::seq_compare(const IndexSet& o) const noexcept {
  for (size_t w = 0; w < _words.size(); ++w) {
    uint64_t diff = _words[w] ^ o._words[w];
    if (!diff) continue;
    // i is the smallest element on which the sets disagree; both ascending
    // sequences share the prefix of members below i.  The set that owns i
    // comes first unless the other set has already run out of members, in
    // which case the shorter sequence is the prefix and precedes.
    uint32_t i = uint32_t(w * 64 + std::countr_zero(diff));
    if (contains(i)) return o.any_above(i) ? -1 : 1;
    return any_above(i) ? 1 : -1;
  }
  return 0;
}

bool IndexSet::output_less(const IndexSet& a, const IndexSet& b) {
  uint32_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return a.seq_compare(b) < 0;
}

std::vector<uint32_t> IndexSet::members() const {
  std::vector<uint32_t> out;
  out.reserve(count());
  for_each([&](uint32_t i) { out.push_back(i); });
  return out;
}

size_t IndexSet::hash() const noexcept {
  uint64_t h = 0xcbf29ce484222325ull ^ _universe;
  for (uint64_t w : _words) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return size_t(h);
}

std::string IndexSet::to_hex() const {
  size_t digits = (_universe + 3) / 4;
  std::string out(digits, '0');
  static const char* hexd = "0123456789abcdef";
  for (size_t d = 0; d < digits; ++d) {
    // digit d (from the right) covers elements 4d … 4d+3
    uint32_t nib = 0;
    for (uint32_t b = 0; b < 4; ++b) {
      uint32_t i = uint32_t(4 * d + b);
      if (i < _universe && contains(i)) nib |= 1u << b;
    }
    out[digits - 1 - d] = hexd[nib];
  }
  return out;
}

IndexSet IndexSet::from_hex(uint32_t universe, const std::string& hex) {
  size_t digits = (universe + 3) / 4;
  if (hex.size() != digits)
    throw error(errc::bad_format, "hex bitmask has " + std::to_string(hex.size()) +
                                      " digits, expected " + std::to_string(digits));
  IndexSet s(universe);
  for (size_t d = 0; d < digits; ++d) {
    char c = hex[digits - 1 - d];
    uint32_t nib;
    if (c >= '0' && c <= '9') nib = uint32_t(c - '0');
    else if (c >= 'a' && c <= 'f') nib = uint32_t(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') nib = uint32_t(c - 'A' + 10);
    else throw error(errc::bad_format, std::string("invalid hex digit '") + c + "'");
    for (uint32_t b = 0; b < 4; ++b) {
      if (!(nib & (1u << b))) continue;
      uint32_t i = uint32_t(4 * d + b);
      if (i >= universe) throw error(errc::bad_format, "hex bitmask sets a bit beyond the universe");
      s.add(i);
    }
  }
  return s;
}

}  // namespace subsemi
