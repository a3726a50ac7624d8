#include "subsemi/conjugation.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "subsemi/error.hpp"

namespace subsemi {

IndexSet ConjugationAction::apply(uint32_t g, const IndexSet& s) const {
  const auto& p = _pis[g];
  IndexSet out(_universe);
  s.for_each([&](uint32_t x) { out.add(p[x]); });
  return out;
}

IndexSet ConjugationAction::canonical_rep(const IndexSet& s) const {
  IndexSet best = s;
  for (uint32_t g = 1; g < group_size(); ++g) {
    IndexSet img = apply(g, s);
    if (img.seq_compare(best) < 0) best = std::move(img);
  }
  return best;
}

uint64_t ConjugationAction::orbit_count(const IndexSet& s) const {
  uint64_t stab = 0;
  for (uint32_t g = 0; g < group_size(); ++g)
    if (apply(g, s) == s) ++stab;
  return group_size() / stab;
}

std::vector<uint32_t> ConjugationAction::stabilizer_of(const IndexSet& s) const {
  std::vector<uint32_t> out;
  for (uint32_t g = 0; g < group_size(); ++g)
    if (apply(g, s) == s) out.push_back(g);
  return out;
}

ConjugationAction ConjugationAction::subaction(const std::vector<uint32_t>& element_ids,
                                               std::string description) const {
  std::vector<std::vector<uint32_t>> pis;
  pis.reserve(element_ids.size());
  bool has_identity = false;
  for (uint32_t g : element_ids) {
    pis.push_back(_pis[g]);
    if (g == 0) has_identity = true;
  }
  if (!has_identity)
    throw error(errc::precondition_violated, "subaction without the identity element");
  // put the identity first, keep the rest in the given order
  for (size_t i = 0; i < pis.size(); ++i)
    if (element_ids[i] == 0 && i != 0) std::swap(pis[0], pis[i]);
  return from_pis(_universe, std::move(pis), std::move(description));
}

ConjugationAction ConjugationAction::induced_on_quotient(const QuotientMap& q,
                                                         const IndexSet& ideal) const {
  uint32_t m = q.quotient.n();
  std::vector<std::vector<uint32_t>> pis;
  pis.reserve(group_size());
  for (uint32_t g = 0; g < group_size(); ++g) {
    const auto& p = _pis[g];
    std::vector<uint32_t> qp(m);
    qp[q.zero] = q.zero;
    for (uint32_t a = 0; a + 1 < m; ++a) {
      uint32_t img = p[q.to_source[a]];
      if (ideal.contains(img) || q.from_source[img] < 0)
        throw error(errc::action_not_closed,
                    "group element " + std::to_string(g + 1) +
                        " does not preserve the ideal complement");
      qp[a] = uint32_t(q.from_source[img]);
    }
    pis.push_back(std::move(qp));
  }
  return from_pis(m, std::move(pis), _description + "/quotient", &q.quotient);
}

ConjugationAction ConjugationAction::restricted_to(const IndexSet& members) const {
  std::vector<uint32_t> list = members.members();
  std::vector<int64_t> pos(_universe, -1);
  for (size_t i = 0; i < list.size(); ++i) pos[list[i]] = int64_t(i);
  std::vector<std::vector<uint32_t>> pis;
  pis.reserve(group_size());
  for (uint32_t g = 0; g < group_size(); ++g) {
    const auto& p = _pis[g];
    std::vector<uint32_t> rp(list.size());
    for (size_t i = 0; i < list.size(); ++i) {
      if (pos[p[list[i]]] < 0)
        throw error(errc::action_not_closed, "member set is not invariant under group element " +
                                                 std::to_string(g + 1));
      rp[i] = uint32_t(pos[p[list[i]]]);
    }
    pis.push_back(std::move(rp));
  }
  return from_pis(uint32_t(list.size()), std::move(pis), _description + "/restricted");
}

ConjugationAction ConjugationAction::from_pis(uint32_t universe,
                                              std::vector<std::vector<uint32_t>> pis,
                                              std::string description,
                                              const CayleyTable* law_check) {
  if (pis.empty()) throw error(errc::precondition_violated, "action needs at least the identity");
  for (const auto& p : pis) {
    if (p.size() != universe)
      throw error(errc::precondition_violated, "permutation table size mismatch");
    std::vector<bool> seen(universe, false);
    for (uint32_t v : p) {
      if (v >= universe || seen[v])
        throw error(errc::not_a_permutation, "index permutation is not a bijection");
      seen[v] = true;
    }
  }
  for (uint32_t x = 0; x < universe; ++x)
    if (pis[0][x] != x)
      throw error(errc::precondition_violated, "first group element must act as the identity");

  if (law_check) {
    // Automorphism law π(i·j) = π(i)·π(j): exhaustive on small tables,
    // sampled on larger ones to keep construction cheap.
    const CayleyTable& t = *law_check;
    auto check_one = [&](const std::vector<uint32_t>& p, uint32_t i, uint32_t j) {
      if (p[t.entry(i, j)] != t.entry(p[i], p[j]))
        throw error(errc::action_not_closed, "permutation is not a table automorphism");
    };
    if (uint64_t(universe) * universe * pis.size() <= uint64_t(1) << 24) {
      for (const auto& p : pis)
        for (uint32_t i = 0; i < universe; ++i)
          for (uint32_t j = 0; j < universe; ++j) check_one(p, i, j);
    } else if (universe > 0) {
      std::mt19937 rng(0x5eed);
      std::uniform_int_distribution<uint32_t> d(0, universe - 1);
      for (const auto& p : pis)
        for (int s = 0; s < 4096; ++s) check_one(p, d(rng), d(rng));
    }
  }

  ConjugationAction a;
  a._universe = universe;
  a._pis = std::move(pis);
  a._description = std::move(description);
  return a;
}

std::vector<Transformation> permutation_group_closure(uint32_t degree,
                                                      const std::vector<Transformation>& gens) {
  for (const auto& g : gens) {
    if (g.degree() != degree)
      throw error(errc::degree_mismatch, "generator degree " + std::to_string(g.degree()) +
                                             " does not match " + std::to_string(degree));
    if (!g.is_permutation())
      throw error(errc::not_a_permutation, "symmetry generator " + g.str() + " is not a permutation");
  }
  std::vector<Transformation> group{Transformation::identity(degree)};
  std::map<std::vector<uint8_t>, uint32_t> seen{{group[0].images(), 0}};
  for (size_t next = 0; next < group.size(); ++next) {
    for (const auto& g : gens) {
      Transformation prod = compose(group[next], g);
      if (seen.emplace(prod.images(), uint32_t(group.size())).second) group.push_back(prod);
    }
  }
  return group;
}

ConjugationAction build_action(const ElementIndexing& idx, const std::vector<Transformation>& gens,
                               std::string description) {
  auto group = permutation_group_closure(idx.degree(), gens);
  std::vector<std::vector<uint32_t>> pis;
  pis.reserve(group.size());
  for (const auto& g : group) {
    std::vector<uint32_t> p(idx.size());
    for (uint32_t x = 0; x < idx.size(); ++x) p[x] = idx.index_of(conjugate(idx.element(x), g));
    pis.push_back(std::move(p));
  }
  return ConjugationAction::from_pis(idx.size(), std::move(pis), std::move(description));
}

ConjugationAction build_action_from_labels(const CayleyTable& t,
                                           const std::vector<Transformation>& gens,
                                           std::string description) {
  if (!t.has_labels())
    throw error(errc::bad_format, "table has no element labels to interpret as transformations");
  std::vector<Transformation> elems;
  elems.reserve(t.n());
  std::map<std::vector<uint8_t>, uint32_t> pos;
  uint32_t degree = 0;
  for (uint32_t x = 0; x < t.n(); ++x) {
    Transformation tr = Transformation::parse(t.labels()[x]);
    if (x == 0) degree = tr.degree();
    else if (tr.degree() != degree)
      throw error(errc::degree_mismatch, "labels mix transformation degrees");
    pos.emplace(tr.images(), x);
    elems.push_back(std::move(tr));
  }
  auto group = permutation_group_closure(degree, gens);
  std::vector<std::vector<uint32_t>> pis;
  pis.reserve(group.size());
  for (const auto& g : group) {
    std::vector<uint32_t> p(t.n());
    for (uint32_t x = 0; x < t.n(); ++x) {
      auto it = pos.find(conjugate(elems[x], g).images());
      if (it == pos.end())
        throw error(errc::action_not_closed,
                    "conjugate of element " + std::to_string(x + 1) + " by " + g.str() +
                        " is not among the table elements",
                    {x + 1});
      p[x] = it->second;
    }
    pis.push_back(std::move(p));
  }
  return ConjugationAction::from_pis(t.n(), std::move(pis), std::move(description), &t);
}

ConjugationAction trivial_action(uint32_t universe) {
  std::vector<uint32_t> id(universe);
  for (uint32_t i = 0; i < universe; ++i) id[i] = i;
  return ConjugationAction::from_pis(universe, {std::move(id)}, "none");
}

IndexSet normalizer_orbit_reps(const IndexSet& tset, const IndexSet& candidates,
                               const ConjugationAction& act) {
  auto stab = act.stabilizer_of(tset);
  IndexSet reps(candidates.universe());
  IndexSet seen(candidates.universe());
  candidates.for_each([&](uint32_t x) {
    if (seen.contains(x)) return;
    reps.add(x);
    // flood the orbit of x inside the candidate set
    std::vector<uint32_t> work{x};
    seen.add(x);
    while (!work.empty()) {
      uint32_t y = work.back();
      work.pop_back();
      for (uint32_t g : stab) {
        uint32_t z = act.pi(g)[y];
        if (candidates.contains(z) && !seen.contains(z)) {
          seen.add(z);
          work.push_back(z);
        }
      }
    }
  });
  return reps;
}

}  // namespace subsemi
