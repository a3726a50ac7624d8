#ifndef SUBSEMI_TORSO_HPP
#define SUBSEMI_TORSO_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/search.hpp"

namespace subsemi {

// Decomposition of Sub(S) along a two-sided ideal I: every subsemigroup
// splits into its part outside I (the upper torso — a subsemigroup of the
// Rees quotient S/I with the zero dropped) and its part inside I (the lower
// torso).  Enumerating the quotient once and then extending each upper's
// closure by ideal elements only covers Sub(S) exactly, with the work
// sharded by upper torso and no output collisions between shards.

struct UpperTorso {
  IndexSet upper;  // the subsemigroup's part outside the ideal (S coordinates)
  IndexSet seed;   // ⟨upper⟩ in S — the least subsemigroup with this upper part
};

struct TorsoPerUpper {
  // Count of subsemigroups with this upper part: orbit representatives under
  // the upper's setwise stabilizer when symmetry is active, plain sets
  // otherwise.
  uint64_t class_count = 0;
  // Total subsemigroups counted with full orbit sizes (equals class_count
  // when no symmetry).
  uint64_t raw_count = 0;
  SearchStats stats;
};

struct TorsoOptions {
  SearchOptions search;
  uint32_t jobs = 1;
  // Collect the merged result sets.  Shut off for count-only runs.
  bool keep_found = true;
  // Observer for each completed upper-torso task, called from worker threads
  // (calls are serialized internally); `local.found` holds the shard's sets:
  // stabilizer-orbit representatives with the upper part intact.
  std::function<void(size_t idx, const UpperTorso&, const EnumerationResult& local)>
      per_upper_sink;
};

struct TorsoResult {
  EnumerationResult merged;             // canonical under the full group when symmetric
  std::vector<UpperTorso> uppers;       // sorted by (cardinality, sequence) of `upper`
  std::vector<TorsoPerUpper> per_upper;  // aligned with `uppers`
};

// Enumerates the upper torsos: subsemigroups of S/I with the zero stripped,
// mapped back to S coordinates and deduplicated (canonically when symmetry
// is active), each with its seed ⟨upper⟩.
// Throws error{not_an_ideal}; with symmetry, error{action_not_closed} when
// the ideal is not invariant.  `upper_stats`, when given, receives the
// quotient enumeration's counters.
std::vector<UpperTorso> torso_uppers(const CayleyTable& t, const IndexSet& ideal,
                                     const SearchOptions& opts,
                                     SearchStats* upper_stats = nullptr);

// One shard: all subsemigroups with the given upper part, found by extending
// the seed with ideal elements only.  With symmetry the run deduplicates
// under the upper's setwise stabilizer, which keeps the upper part of every
// stored set intact.
EnumerationResult torso_lower_task(const CayleyTable& t, const IndexSet& ideal,
                                   const UpperTorso& u, const SearchOptions& opts);

// The full decomposition: upper enumeration, parallel lower-torso tasks, and
// a disjoint merge.  merged equals direct enumeration with the same options.
TorsoResult torso_enumerate(const CayleyTable& t, const IndexSet& ideal,
                            const TorsoOptions& topts);

}  // namespace subsemi

#endif
