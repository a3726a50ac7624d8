#include "subsemi/transformation.hpp"

#include "subsemi/error.hpp"

namespace subsemi {

Transformation::Transformation(std::vector<uint8_t> images) : _images(std::move(images)) {
  for (uint8_t v : _images)
    if (v >= _images.size())
      throw error(errc::entry_out_of_range,
                  "image value " + std::to_string(v + 1) + " exceeds the degree " +
                      std::to_string(_images.size()));
}

Transformation Transformation::identity(uint32_t d) {
  std::vector<uint8_t> im(d);
  for (uint32_t i = 0; i < d; ++i) im[i] = uint8_t(i);
  return Transformation(std::move(im));
}

Transformation Transformation::parse(std::string_view literal) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < literal.size() && (literal[pos] == ' ' || literal[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos >= literal.size() || literal[pos] != '[')
    throw error(errc::bad_format, "transformation literal must start with '['");
  ++pos;
  std::vector<uint8_t> images;
  skip_ws();
  if (pos < literal.size() && literal[pos] == ']') {
    ++pos;
  } else {
    for (;;) {
      skip_ws();
      uint32_t v = 0;
      size_t start = pos;
      while (pos < literal.size() && literal[pos] >= '0' && literal[pos] <= '9')
        v = v * 10 + uint32_t(literal[pos++] - '0');
      if (pos == start || v == 0 || v > 255)
        throw error(errc::bad_format, "expected a 1-based image value in transformation literal");
      images.push_back(uint8_t(v - 1));
      skip_ws();
      if (pos < literal.size() && literal[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < literal.size() && literal[pos] == ']') {
        ++pos;
        break;
      }
      throw error(errc::bad_format, "expected ',' or ']' in transformation literal");
    }
  }
  skip_ws();
  if (pos != literal.size())
    throw error(errc::bad_format, "trailing characters after transformation literal");
  return Transformation(std::move(images));
}

bool Transformation::is_permutation() const {
  std::vector<bool> seen(_images.size(), false);
  for (uint8_t v : _images) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Transformation Transformation::inverse() const {
  if (!is_permutation())
    throw error(errc::not_a_permutation, "inverse of a non-bijective transformation");
  std::vector<uint8_t> inv(_images.size());
  for (uint32_t i = 0; i < _images.size(); ++i) inv[_images[i]] = uint8_t(i);
  return Transformation(std::move(inv));
}

std::string Transformation::str() const {
  std::string out = "[";
  for (size_t i = 0; i < _images.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(_images[i] + 1);
  }
  out += ']';
  return out;
}

Transformation compose(const Transformation& s, const Transformation& t) {
  if (s.degree() != t.degree())
    throw error(errc::degree_mismatch, "composing degree " + std::to_string(s.degree()) +
                                           " with degree " + std::to_string(t.degree()));
  std::vector<uint8_t> im(s.degree());
  for (uint32_t i = 0; i < s.degree(); ++i) im[i] = t[s[i]];
  return Transformation(std::move(im));
}

uint32_t image_rank(const Transformation& t) {
  std::vector<bool> seen(t.degree(), false);
  uint32_t rank = 0;
  for (uint32_t i = 0; i < t.degree(); ++i)
    if (!seen[t[i]]) {
      seen[t[i]] = true;
      ++rank;
    }
  return rank;
}

Transformation conjugate(const Transformation& t, const Transformation& g) {
  if (g.degree() != t.degree())
    throw error(errc::degree_mismatch, "conjugating degree " + std::to_string(t.degree()) +
                                           " by degree " + std::to_string(g.degree()));
  Transformation ginv = g.inverse();  // checks that g is a permutation
  std::vector<uint8_t> im(t.degree());
  // i (g⁻¹ t g): send i back through g, apply t, push forward through g
  for (uint32_t i = 0; i < t.degree(); ++i) im[i] = g[t[ginv[i]]];
  return Transformation(std::move(im));
}

}  // namespace subsemi
