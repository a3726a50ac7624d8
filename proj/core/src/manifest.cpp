#include "subsemi/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "subsemi/error.hpp"

namespace subsemi {

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::bad_format, "cannot open " + path + " for digesting");
  uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  for (;;) {
    in.read(buf, sizeof buf);
    std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= uint8_t(buf[i]);
      h *= 1099511628211ull;
    }
    if (got < std::streamsize(sizeof buf)) break;
  }
  return h;
}

std::string fnv1a_hex(uint64_t digest) {
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(digest));
  return std::string(out, 16);
}

std::string fnv1a_file_hex(const std::string& path) { return fnv1a_hex(fnv1a_file(path)); }

ShardState shard_state(const ShardRecord& rec) {
  std::ifstream probe(rec.path, std::ios::binary);
  if (!probe) return ShardState::missing;
  probe.close();
  return fnv1a_file_hex(rec.path) == rec.digest ? ShardState::match : ShardState::mismatch;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["options"] = options;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["jobs"] = jobs;
  j["wall_time_s"] = wall_time_s;
  j["metrics"] = metrics;
  nlohmann::json sh = nlohmann::json::array();
  for (const ShardRecord& r : shards) {
    nlohmann::json one;
    one["key"] = r.key;
    one["path"] = r.path;
    one["digest"] = r.digest;
    one["sets"] = r.sets;
    sh.push_back(std::move(one));
  }
  j["shards"] = std::move(sh);
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error(errc::bad_format, "manifest is not valid JSON");
  try {
    RunManifest m;
    m.command = j.value("command", std::string());
    if (j.contains("options")) m.options = j["options"].get<std::map<std::string, std::string>>();
    if (j.contains("inputs")) m.inputs = j["inputs"].get<std::map<std::string, std::string>>();
    if (j.contains("outputs")) m.outputs = j["outputs"].get<std::map<std::string, std::string>>();
    m.jobs = j.value("jobs", 1u);
    m.wall_time_s = j.value("wall_time_s", 0.0);
    if (j.contains("metrics")) m.metrics = j["metrics"].get<std::map<std::string, uint64_t>>();
    for (const nlohmann::json& one : j.value("shards", nlohmann::json::array())) {
      ShardRecord r;
      r.key = one.value("key", std::string());
      r.path = one.value("path", std::string());
      r.digest = one.value("digest", std::string());
      r.sets = one.value("sets", uint64_t(0));
      m.shards.push_back(std::move(r));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::bad_format, std::string("manifest field has the wrong type: ") + e.what());
  }
}

void RunManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::bad_format, "cannot open " + path + " for writing");
  out << to_json();
  if (!out) throw error(errc::bad_format, "failed writing " + path);
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::bad_format, "cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace subsemi
