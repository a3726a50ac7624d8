#include "subsemi/element_indexing.hpp"

#include "subsemi/error.hpp"

namespace subsemi {

ElementIndexing::ElementIndexing(uint32_t degree, uint32_t degree_cap) : _degree(degree) {
  if (degree == 0 || degree > degree_cap)
    throw error(errc::degree_too_large, "degree " + std::to_string(degree) +
                                            " outside the supported range 1.." +
                                            std::to_string(degree_cap));
  uint32_t n = 1;
  for (uint32_t i = 0; i < degree; ++i) n *= degree;
  _elements.reserve(n);
  std::vector<uint8_t> im(degree, 0);
  for (uint32_t idx = 0;; ++idx) {
    _elements.emplace_back(Transformation(im));
    // odometer increment on the image list (least significant digit last,
    // matching lexicographic order)
    uint32_t p = degree;
    while (p > 0) {
      if (++im[p - 1] < degree) break;
      im[p - 1] = 0;
      --p;
    }
    if (p == 0) break;
  }
}

uint32_t ElementIndexing::index_of(const Transformation& t) const {
  if (t.degree() != _degree)
    throw error(errc::degree_mismatch, "transformation of degree " + std::to_string(t.degree()) +
                                           " in a degree-" + std::to_string(_degree) +
                                           " indexing");
  uint32_t idx = 0;
  for (uint32_t i = 0; i < _degree; ++i) idx = idx * _degree + t[i];
  return idx;
}

CayleyTable full_transformation_table(uint32_t d, uint32_t degree_cap) {
  ElementIndexing idx(d, degree_cap);
  uint32_t n = idx.size();
  std::vector<uint32_t> entries(size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      entries[size_t(i) * n + j] = idx.index_of(compose(idx.element(i), idx.element(j)));
  std::vector<std::string> labels(n);
  for (uint32_t i = 0; i < n; ++i) labels[i] = idx.element(i).str();
  return CayleyTable::validated(n, std::move(entries), std::move(labels));
}

IndexSet ideal_elements(const ElementIndexing& idx, uint32_t i) {
  if (i == 0 || i > idx.degree())
    throw error(errc::rank_out_of_range, "ideal rank " + std::to_string(i) +
                                             " outside 1.." + std::to_string(idx.degree()));
  IndexSet out(idx.size());
  for (uint32_t e = 0; e < idx.size(); ++e)
    if (image_rank(idx.element(e)) <= i) out.add(e);
  return out;
}

IndexSet symmetric_group(const ElementIndexing& idx) {
  IndexSet out(idx.size());
  for (uint32_t e = 0; e < idx.size(); ++e)
    if (idx.element(e).is_permutation()) out.add(e);
  return out;
}

}  // namespace subsemi
