#ifndef SUBSEMI_TRANSFORMATION_HPP
#define SUBSEMI_TRANSFORMATION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subsemi {

// A self-map of {0, …, d-1}, stored as its image list.  The text literal form
// is 1-based: "[2,3,1,1]" is the map 1↦2, 2↦3, 3↦1, 4↦1.
class Transformation {
 public:
  Transformation() = default;
  explicit Transformation(std::vector<uint8_t> images);  // 0-based images

  static Transformation identity(uint32_t d);
  static Transformation parse(std::string_view literal);  // throws error{bad_format}

  uint32_t degree() const noexcept { return uint32_t(_images.size()); }
  uint8_t operator[](uint32_t i) const noexcept { return _images[i]; }
  const std::vector<uint8_t>& images() const noexcept { return _images; }

  bool is_permutation() const;
  Transformation inverse() const;  // throws error{not_a_permutation}

  std::string str() const;  // 1-based literal

  bool operator==(const Transformation& o) const noexcept { return _images == o._images; }
  bool operator!=(const Transformation& o) const noexcept { return _images != o._images; }
  bool operator<(const Transformation& o) const noexcept { return _images < o._images; }

 private:
  std::vector<uint8_t> _images;
};

// Right-action composition: i(s·t) = (i s) t, i.e. apply s first.
// Throws error{degree_mismatch} when degrees differ.
Transformation compose(const Transformation& s, const Transformation& t);

// Number of distinct images.
uint32_t image_rank(const Transformation& t);

// Conjugate g⁻¹·t·g of t by a permutation g (throws error{not_a_permutation}).
Transformation conjugate(const Transformation& t, const Transformation& g);

}  // namespace subsemi

#endif
