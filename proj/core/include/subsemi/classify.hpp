#ifndef SUBSEMI_CLASSIFY_HPP
#define SUBSEMI_CLASSIFY_HPP

#include <cstdint>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/subtable.hpp"

namespace subsemi {

// Predicates come in two flavours: on a member set of a parent table (the
// hot path used by search pruning — no induced table is built) and on a
// standalone SubTable.

bool is_commutative(const CayleyTable& t, const IndexSet& s);
bool is_band(const CayleyTable& t, const IndexSet& s);
bool is_regular(const CayleyTable& t, const IndexSet& s);

inline bool is_commutative(const SubTable& st) { return is_commutative(st.table(), IndexSet::full(st.size())); }
inline bool is_band(const SubTable& st) { return is_band(st.table(), IndexSet::full(st.size())); }
inline bool is_regular(const SubTable& st) { return is_regular(st.table(), IndexSet::full(st.size())); }

struct Nilpotency {
  bool is_nilpotent = false;
  uint32_t degree = 0;  // minimal k with S^k = {zero}; 0 when not nilpotent
};

// Authoritative method: the descending power chain S ⊇ S² ⊇ … stabilizes
// within |S| steps; nilpotent iff it stabilizes at a singleton, and the
// degree is the first k whose power is a singleton.
// Throws error{empty_semigroup} for the empty set.
Nilpotency nilpotency_by_powers(const CayleyTable& t, const IndexSet& s);

// Scan method: for k = 1, 2, …, |S| take the product of the first k-tuple as
// the zero candidate, then walk all k-tuples of members in ascending order
// with shared-prefix products, bailing out at the first mismatch.  Agrees
// with the power chain (tested exhaustively) but can be much slower on
// left-zero-like sets; the power chain is what the census uses.
// Throws error{empty_semigroup} for the empty set.
Nilpotency nilpotency_by_tuple_scan(const CayleyTable& t, const IndexSet& s);

inline Nilpotency nilpotency(const CayleyTable& t, const IndexSet& s) {
  return nilpotency_by_powers(t, s);
}
inline Nilpotency nilpotency(const SubTable& st) {
  return nilpotency_by_powers(st.table(), IndexSet::full(st.size()));
}

// Least size of a generating subset.  Every element that is not a product of
// two members is in every generating set; the remainder is searched by
// subset size over generator-equivalence class representatives.
// rank(∅) = 0.  Throws error{too_large} if the subset search would exceed
// `budget` candidate subsets.
uint32_t semigroup_rank(const CayleyTable& t, const IndexSet& s, uint64_t budget = uint64_t(1) << 26);
inline uint32_t semigroup_rank(const SubTable& st, uint64_t budget = uint64_t(1) << 26) {
  return semigroup_rank(st.table(), IndexSet::full(st.size()), budget);
}

enum class CanonMode { iso, iso_anti };

// Relabeling-independent key of a semigroup: the table of the relabeling
// that minimizes a fixed growth-order flattening (and, in iso_anti mode, the
// smaller of that key for the table and for its transpose).  Two tables get
// equal keys in iso mode iff they are isomorphic; in iso_anti mode iff they
// are isomorphic or anti-isomorphic.
struct CanonicalForm {
  std::vector<uint32_t> flat;   // |T|² 0-based entries of the winning relabeling, row-major
  bool used_transpose = false;  // iso_anti: the transpose was strictly smaller

  bool operator==(const CanonicalForm& o) const { return flat == o.flat; }
  bool operator!=(const CanonicalForm& o) const { return !(*this == o); }
  bool operator<(const CanonicalForm& o) const { return flat < o.flat; }
};

// Branch-and-bound over label assignments with automorphism pruning.
// Throws error{too_large_for_canonicalization} when |T| > cap.
CanonicalForm canonical_form(const CayleyTable& t, CanonMode mode, uint32_t cap = 32);
inline CanonicalForm canonical_form(const SubTable& st, CanonMode mode, uint32_t cap = 32) {
  return canonical_form(st.table(), mode, cap);
}

// Cheap iso/anti-invariant summary used to pre-bucket tables so canonical
// forms are only computed inside buckets that actually collide.
uint64_t iso_fingerprint(const CayleyTable& t);

}  // namespace subsemi

#endif
