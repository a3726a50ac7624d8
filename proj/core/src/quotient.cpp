#include "subsemi/quotient.hpp"

#include "subsemi/error.hpp"

namespace subsemi {

std::optional<std::pair<uint32_t, uint32_t>> ideal_violation(const CayleyTable& t,
                                                             const IndexSet& ideal) {
  for (uint32_t s = 0; s < t.n(); ++s) {
    auto row = t.row(s);
    std::optional<std::pair<uint32_t, uint32_t>> hit;
    ideal.for_each([&](uint32_t i) {
      if (hit) return;
      if (!ideal.contains(row[i]) || !ideal.contains(t.entry(i, s))) hit = {{s, i}};
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

QuotientMap rees_quotient(const CayleyTable& t, const IndexSet& ideal) {
  if (auto bad = ideal_violation(t, ideal))
    throw error(errc::not_an_ideal,
                "set is not a two-sided ideal: products of " + std::to_string(bad->first + 1) +
                    " and " + std::to_string(bad->second + 1) + " escape it",
                {bad->first + 1, bad->second + 1});

  QuotientMap q;
  q.from_source.assign(t.n(), -1);
  for (uint32_t s = 0; s < t.n(); ++s)
    if (!ideal.contains(s)) {
      q.from_source[s] = int64_t(q.to_source.size());
      q.to_source.push_back(s);
    }
  uint32_t m = uint32_t(q.to_source.size()) + 1;
  q.zero = m - 1;

  std::vector<uint32_t> entries(size_t(m) * m, q.zero);
  for (uint32_t a = 0; a + 1 < m; ++a)
    for (uint32_t b = 0; b + 1 < m; ++b) {
      uint32_t p = t.entry(q.to_source[a], q.to_source[b]);
      if (q.from_source[p] >= 0) entries[size_t(a) * m + b] = uint32_t(q.from_source[p]);
    }

  std::vector<std::string> labels;
  if (t.has_labels()) {
    labels.reserve(m);
    for (uint32_t a = 0; a + 1 < m; ++a) labels.push_back(t.labels()[q.to_source[a]]);
    labels.push_back("0");
  }
  q.quotient = CayleyTable::validated(m, std::move(entries), std::move(labels));
  return q;
}

IndexSet QuotientMap::map_back(const IndexSet& quotient_set, uint32_t source_n) const {
  IndexSet out(source_n);
  quotient_set.for_each([&](uint32_t a) {
    if (a != zero) out.add(to_source[a]);
  });
  return out;
}

}  // namespace subsemi
