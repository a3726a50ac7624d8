#ifndef SUBSEMI_CONJUGATION_HPP
#define SUBSEMI_CONJUGATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/quotient.hpp"
#include "subsemi/transformation.hpp"

namespace subsemi {

// A finite group acting on table indices by table automorphisms.  Entry g of
// the permutation list is π_g with π_g(x) = index of g⁻¹·x·g; index 0 is
// always the identity.  The list covers the whole group generated by the
// given generators (closure is computed internally), so orbit counts can use
// |H| / |stabilizer|.
class ConjugationAction {
 public:
  ConjugationAction() = default;

  uint32_t universe() const noexcept { return _universe; }
  uint32_t group_size() const noexcept { return uint32_t(_pis.size()); }
  const std::vector<uint32_t>& pi(uint32_t g) const { return _pis[g]; }
  const std::string& description() const noexcept { return _description; }

  IndexSet apply(uint32_t g, const IndexSet& s) const;

  // Lexicographically least orbit member under the ascending-member-sequence
  // order.  Idempotent; preserved sets map to themselves.
  IndexSet canonical_rep(const IndexSet& s) const;
  bool is_canonical(const IndexSet& s) const { return canonical_rep(s) == s; }

  uint64_t orbit_count(const IndexSet& s) const;  // |H| / |stabilizer(s)|
  std::vector<uint32_t> stabilizer_of(const IndexSet& s) const;

  // Action of the subgroup given by group-element ids (must be closed under
  // composition, e.g. a stabilizer).
  ConjugationAction subaction(const std::vector<uint32_t>& element_ids,
                              std::string description) const;

  // Action induced on a Rees quotient; every π must map the ideal onto
  // itself (error{action_not_closed} otherwise).  The zero is fixed.
  ConjugationAction induced_on_quotient(const QuotientMap& q, const IndexSet& ideal) const;

  // Action restricted to an invariant member set, re-indexed by ascending
  // member order (error{action_not_closed} when not invariant).
  ConjugationAction restricted_to(const IndexSet& members) const;

  // Internal assembly from explicit permutation tables; validates that each
  // is a bijection and (for modest universes) the automorphism law.
  static ConjugationAction from_pis(uint32_t universe, std::vector<std::vector<uint32_t>> pis,
                                    std::string description, const CayleyTable* law_check = nullptr);

 private:
  uint32_t _universe = 0;
  std::vector<std::vector<uint32_t>> _pis;
  std::string _description;
};

// The group generated by permutations of points 1..d acting on all of T_d by
// conjugation.  Throws error{not_a_permutation} for non-bijective generators
// and error{degree_mismatch} for degree conflicts.
ConjugationAction build_action(const ElementIndexing& idx, const std::vector<Transformation>& gens,
                               std::string description = {});

// Same, but on an arbitrary table whose labels are transformation literals.
// A conjugate falling outside the labeled element set raises
// error{action_not_closed} — possible for user-supplied sub-tables.
ConjugationAction build_action_from_labels(const CayleyTable& t,
                                           const std::vector<Transformation>& gens,
                                           std::string description = {});

// The one-element group (no symmetry).
ConjugationAction trivial_action(uint32_t universe);

// Close a permutation list under composition (identity always included).
std::vector<Transformation> permutation_group_closure(uint32_t degree,
                                                      const std::vector<Transformation>& gens);

// One representative (least member) per orbit of the stabilizer of `tset`
// on `candidates`; orbits are computed within the candidate set.
IndexSet normalizer_orbit_reps(const IndexSet& tset, const IndexSet& candidates,
                               const ConjugationAction& act);

}  // namespace subsemi

#endif
