#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "subsemi/error.hpp"
#include "subsemi/manifest.hpp"

using subsemi::RunManifest;
using subsemi::ShardRecord;
using subsemi::ShardState;
using subsemi::error;
using subsemi::fnv1a_file;
using subsemi::fnv1a_file_hex;
using subsemi::fnv1a_hex;
using subsemi::shard_state;

namespace {

std::filesystem::path temp_file(const char* name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("fnv1a matches the published test vectors") {
  auto empty = temp_file("subsemi_fnv_empty.bin", "");
  auto a = temp_file("subsemi_fnv_a.bin", "a");
  CHECK(fnv1a_file_hex(empty.string()) == "cbf29ce484222325");
  CHECK(fnv1a_file_hex(a.string()) == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex(fnv1a_file(a.string())) == "af63dc4c8601ec8c");
  std::filesystem::remove(empty);
  std::filesystem::remove(a);
  CHECK_THROWS_AS((void)fnv1a_file(empty.string()), error);
}

TEST_CASE("shard state distinguishes match, missing, and mismatch") {
  auto p = temp_file("subsemi_shard_probe.subs", "#degree 4\n-\n");
  ShardRecord rec;
  rec.key = "upper=-";
  rec.path = p.string();
  rec.digest = fnv1a_file_hex(p.string());
  rec.sets = 1;
  CHECK(shard_state(rec) == ShardState::match);
  {
    std::ofstream out(p, std::ios::binary | std::ios::app);
    out << "1\n";
  }
  CHECK(shard_state(rec) == ShardState::mismatch);
  std::filesystem::remove(p);
  CHECK(shard_state(rec) == ShardState::missing);
}

TEST_CASE("manifests survive a json round trip") {
  RunManifest m;
  m.command = "enumerate";
  m.options["strategy"] = "minext-dfs";
  m.options["symmetry"] = "full";
  m.inputs["in/table.txt"] = "cbf29ce484222325";
  m.outputs["out/sets.subs"] = "af63dc4c8601ec8c";
  m.jobs = 4;
  m.wall_time_s = 1.25;
  m.metrics["sets"] = 1299;
  m.metrics["entries_checked"] = 123456789;
  ShardRecord rec;
  rec.key = "upper=1,2";
  rec.path = "out/shard-000001.subs";
  rec.digest = "0123456789abcdef";
  rec.sets = 42;
  m.shards.push_back(rec);

  RunManifest back = RunManifest::from_json(m.to_json());
  CHECK(back.command == m.command);
  CHECK(back.options == m.options);
  CHECK(back.inputs == m.inputs);
  CHECK(back.outputs == m.outputs);
  CHECK(back.jobs == 4);
  CHECK(back.wall_time_s == doctest::Approx(1.25));
  CHECK(back.metrics == m.metrics);
  REQUIRE(back.shards.size() == 1);
  CHECK(back.shards[0].key == rec.key);
  CHECK(back.shards[0].path == rec.path);
  CHECK(back.shards[0].digest == rec.digest);
  CHECK(back.shards[0].sets == 42);
}

TEST_CASE("manifest json is deterministic apart from wall time") {
  RunManifest a, b;
  a.command = b.command = "pipeline-t4";
  a.options["tier"] = b.options["tier"] = "desk";
  a.metrics["classes"] = b.metrics["classes"] = 7;
  a.wall_time_s = 0.5;
  b.wall_time_s = 99.0;
  std::string ja = a.to_json(), jb = b.to_json();
  // strip the wall_time line from both; the rest must be byte-identical
  auto strip = [](std::string s) {
    size_t pos = s.find("wall_time_s");
    REQUIRE(pos != std::string::npos);
    size_t start = s.rfind('\n', pos);
    size_t end = s.find('\n', pos);
    return s.erase(start, end - start);
  };
  CHECK(strip(ja) == strip(jb));
}

TEST_CASE("save and load round trip through a file") {
  RunManifest m;
  m.command = "gen";
  m.options["builtin"] = "T3";
  auto p = std::filesystem::temp_directory_path() / "subsemi_manifest_probe.json";
  m.save(p.string());
  RunManifest back = RunManifest::load(p.string());
  CHECK(back.command == "gen");
  CHECK(back.options.at("builtin") == "T3");
  std::filesystem::remove(p);
  CHECK_THROWS_AS((void)RunManifest::load(p.string()), error);
}

TEST_CASE("garbage json is a format error") {
  CHECK_THROWS_AS((void)RunManifest::from_json("not json"), error);
  CHECK_THROWS_AS((void)RunManifest::from_json("[1,2,3]"), error);
  try {
    (void)RunManifest::from_json("{\"command\": 7}");
  } catch (const error& e) {
    CHECK(e.code() == subsemi::errc::bad_format);
  }
}
