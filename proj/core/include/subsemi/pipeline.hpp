#ifndef SUBSEMI_PIPELINE_HPP
#define SUBSEMI_PIPELINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subsemi/cayley_table.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/search.hpp"
#include "subsemi/torso.hpp"

namespace subsemi {

// ---------------------------------------------------------------------------
// External leveled search: breadth-first minimal extensions whose visited set
// lives in sorted level files on disk instead of memory.  Level k+1 is built
// by streaming level k, buffering candidate children into sorted runs, then
// merging the runs while subtracting every earlier level.  State persists in
// `state_dir` with a JSON checkpoint, so an interrupted run resumes at the
// last completed level.
// ---------------------------------------------------------------------------

struct ExternalSearchOptions {
  const ConjugationAction* symmetry = nullptr;
  bool use_equiv_generators = true;
  std::optional<IndexSet> restrict_extensions_to;
  std::optional<uint32_t> max_size;
  std::string state_dir;              // required
  bool resume = false;                // continue from the checkpoint if present
  bool count_only = true;             // delete level files once counts are final
  uint64_t sort_run_lines = uint64_t(1) << 22;  // in-memory buffer per sorted run
  std::function<void(const std::string&)> log;  // optional progress sink
};

struct ExternalSearchResult {
  uint64_t total = 0;                    // distinct (canonical) subsemigroups
  std::vector<uint64_t> level_counts;    // first-discovery counts per level
  SearchStats stats;                     // zero for levels skipped by resume
  std::vector<std::string> level_files;  // retained when !count_only
  bool resumed_complete = false;         // checkpoint already held the answer
};

// Same result set as enumerate_min_extensions (bfs) from a closed seed.
// Throws error{seed_not_closed}, error{shard_corrupt} when a checkpointed
// level file does not match its recorded digest, error{bad_format} when the
// checkpoint belongs to a different search.
ExternalSearchResult external_level_search(const CayleyTable& t, const IndexSet& seed,
                                           const ExternalSearchOptions& opts);

// ---------------------------------------------------------------------------
// Sharded lower-torso sweep: the parallel middle of the torso decomposition,
// with per-shard output files and digest-based resume.  Uppers are processed
// in batches of `shard_batch`; each shard writes one sorted set file (subs
// format, bits) and the sweep manifest records its digest, so a rerun with
// --resume skips byte-identical shards.
// ---------------------------------------------------------------------------

struct ShardSweepOptions {
  SearchOptions search;        // symmetry = the full action; stabilizers are derived per upper
  uint32_t jobs = 1;
  uint64_t shard_batch = 64;   // uppers per shard file
  std::string out_dir;         // required; shard files land here
  std::string manifest_path;   // default: <out_dir>/shards.json
  bool resume = false;
  std::function<void(const std::string&)> log;
};

struct ShardSummary {
  std::string key;      // "shard-<index>"
  std::string path;
  std::string digest;   // fnv1a of the file
  uint64_t uppers = 0;  // uppers covered by this shard
  uint64_t classes = 0; // stabilizer-class count summed over its uppers
};

struct ShardSweepResult {
  uint64_t classes = 0;  // Σ shard classes
  std::vector<ShardSummary> shards;
  uint64_t shards_resumed = 0;
  SearchStats stats;     // zero contribution from resumed shards
};

// Throws error{shard_corrupt} on a digest mismatch during resume.
ShardSweepResult shard_sweep(const CayleyTable& t, const IndexSet& ideal,
                             const std::vector<UpperTorso>& uppers,
                             const ShardSweepOptions& opts);

// ---------------------------------------------------------------------------
// The degree-4 reproduction pipeline.  Steps: (1) classes of the second Rees
// quotient; (2) lower torsos under every such upper; (3) the identity-adjoined
// order-isomorphic copy; (4) subgroup classes of the permutation part; (5)
// lower torsos under every nontrivial subgroup; (6) totals.  The desk tier
// runs steps 4 and 5 plus the hereditary property censuses and marks the rest
// SKIPPED; the full tier also runs steps 1–3 and 6 through the external
// engine and shard sweep (long-running).
// ---------------------------------------------------------------------------

enum class Tier { desk, full };

struct PipelineOptions {
  Tier tier = Tier::desk;
  uint32_t jobs = 1;
  std::string work_dir;       // state directory; required for tier=full
  bool resume = false;
  uint64_t shard_batch = 64;
  uint64_t sort_run_lines = uint64_t(1) << 22;
  std::function<void(const std::string&)> log;
};

struct PipelineT4Report {
  Tier tier = Tier::desk;
  uint32_t jobs = 1;

  // step 4
  uint64_t subgroups_raw = 0;
  uint64_t subgroup_classes = 0;

  // step 5, one entry per nontrivial subgroup class
  struct GroupShard {
    IndexSet upper;             // canonical subgroup representative
    std::string label;          // 1-based member list
    uint64_t order = 0;         // |G|
    uint64_t stab_classes = 0;  // lower torsos up to the stabilizer of G
    uint64_t raw_sets = 0;      // lower torsos as plain sets (upper exactly G)
    SearchStats stats;
  };
  std::vector<GroupShard> p_by_group;
  uint64_t p_classes = 0;       // Σ stab_classes
  uint64_t p_raw_sets = 0;      // Σ raw_sets
  uint64_t z2_stab_classes = 0; // the ⟨transposition⟩ entry
  uint64_t z2_raw_sets = 0;

  // hereditary property censuses (conjugacy classes, nonempty)
  uint64_t nilpotent_classes = 0;
  std::vector<uint64_t> nilpotent_by_degree;  // index = nilpotency degree
  uint64_t commutative_classes = 0;
  uint64_t band_classes = 0;

  // full tier only; zero / empty on desk runs
  bool full_ran = false;
  uint64_t step1_classes = 0;
  uint64_t step2_classes = 0;
  uint64_t step3_classes = 0;
  uint64_t total_classes = 0;  // step 6
  std::vector<ShardSummary> step2_shards;

  std::string to_text() const;
};

PipelineT4Report pipeline_t4(const PipelineOptions& opts);

}  // namespace subsemi

#endif
