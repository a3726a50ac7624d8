#ifndef SUBSEMI_SEARCH_HPP
#define SUBSEMI_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/index_set.hpp"

namespace subsemi {

enum class Strategy { dfs, bfs };

// Hereditary properties usable as search pruning filters: every subsemigroup
// of a set with the property (the empty set aside) has it too, so cutting a
// failing node loses none of the passing ones.  Regularity is not hereditary
// and is therefore deliberately absent.
enum class PropertyFilter { none, nilpotent, commutative, band };

struct SearchOptions {
  Strategy strategy = Strategy::dfs;
  // Non-null enables symmetry reduction: every stored/emitted set is the
  // least member of its orbit, and extension sets must be invariant.
  const ConjugationAction* symmetry = nullptr;
  // Extend only by the least member of each generator-equivalence class
  // among the remaining candidates (never changes the result set).
  bool use_equiv_generators = true;
  // Additionally keep one candidate per orbit of the current node's setwise
  // stabilizer.  Requires symmetry.
  bool use_normalizer_pruning = false;
  // The X of the minimal-extension search: only these elements are adjoined.
  // Empty optional means the whole universe.
  std::optional<IndexSet> restrict_extensions_to;
  // Emit only subsemigroups of at most this cardinality and prune beyond.
  std::optional<uint32_t> max_size;
  PropertyFilter property_filter = PropertyFilter::none;
};

struct SearchStats {
  uint64_t nodes_visited = 0;     // distinct (canonical) subsemigroups stored
  uint64_t closures_computed = 0;
  uint64_t extensions_tried = 0;  // (parent, element) pairs processed
  uint64_t entries_checked = 0;   // table-cell reads inside closures
  uint64_t peak_frontier = 0;

  void merge(const SearchStats& o);
};

struct EnumerationResult {
  // Sorted by (cardinality, ascending member sequence); canonical orbit
  // representatives when the run had symmetry.
  std::vector<IndexSet> found;
  // Aligned with `found` when the strategy defines a level (bfs: least number
  // of extensions from the seed; mingen: semigroup rank).
  std::optional<std::vector<uint32_t>> levels;
  SearchStats stats;
  std::string provenance;
};

// Every subset of the table checked for closure.  Includes ∅.
// Throws error{too_large} above `cap` elements (hard limit 32).
EnumerationResult enumerate_brute(const CayleyTable& t, uint32_t cap = 20);

// The minimal-extension search: exactly { ⟨seed ∪ Y⟩ : Y ⊆ X } up to the
// configured symmetry, pruned by max_size / property_filter when given.
// Throws error{seed_not_closed}; error{precondition_violated} for normalizer
// pruning without symmetry or a non-invariant X.
EnumerationResult enumerate_min_extensions(const CayleyTable& t, const IndexSet& seed,
                                           const SearchOptions& opts);

// Level-wise search over k-subsets of generator-equivalence class
// representatives; stops at the first level that adds nothing new.  levels
// holds each subsemigroup's rank.  Throws error{too_large} when the class
// count exceeds `class_cap`.
EnumerationResult enumerate_mingen(const CayleyTable& t, const SearchOptions& opts,
                                   uint32_t class_cap = 30);

}  // namespace subsemi

#endif
