#ifndef SUBSEMI_MANIFEST_HPP
#define SUBSEMI_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace subsemi {

// 64-bit FNV-1a of a file's bytes; throws error{bad_format} if unreadable.
uint64_t fnv1a_file(const std::string& path);
std::string fnv1a_file_hex(const std::string& path);  // 16 lowercase hex digits
std::string fnv1a_hex(uint64_t digest);

struct ShardRecord {
  std::string key;     // e.g. the upper torso the shard belongs to
  std::string path;    // file the shard was written to
  std::string digest;  // fnv1a_file_hex at write time
  uint64_t sets = 0;   // number of set lines in the shard
};

enum class ShardState { match, missing, mismatch };

// Compares the file on disk against the recorded digest.
ShardState shard_state(const ShardRecord& rec);

// Machine-readable record of one CLI run: what was run, on what inputs,
// what it produced, and the counters it reported.  Serialized as JSON with
// sorted keys so reruns diff cleanly; wall_time_s is informational and is
// the one field expected to vary between identical runs.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> options;
  std::map<std::string, std::string> inputs;   // path -> digest
  std::map<std::string, std::string> outputs;  // path -> digest
  std::vector<ShardRecord> shards;
  uint32_t jobs = 1;
  double wall_time_s = 0.0;
  std::map<std::string, uint64_t> metrics;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);  // throws error{bad_format}

  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

}  // namespace subsemi

#endif
