#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "subsemi/cayley_table.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/error.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/io.hpp"
#include "subsemi/manifest.hpp"
#include "subsemi/pipeline.hpp"
#include "subsemi/search.hpp"
#include "subsemi/torso.hpp"

namespace fs = std::filesystem;

using subsemi::CayleyTable;
using subsemi::ConjugationAction;
using subsemi::ElementIndexing;
using subsemi::EnumerationResult;
using subsemi::ExternalSearchOptions;
using subsemi::ExternalSearchResult;
using subsemi::IndexSet;
using subsemi::PipelineOptions;
using subsemi::PipelineT4Report;
using subsemi::RunManifest;
using subsemi::SearchOptions;
using subsemi::ShardSweepOptions;
using subsemi::ShardSweepResult;
using subsemi::Strategy;
using subsemi::SubsFile;
using subsemi::Tier;
using subsemi::Transformation;
using subsemi::UpperTorso;
using subsemi::build_action;
using subsemi::enumerate_min_extensions;
using subsemi::errc;
using subsemi::error;
using subsemi::external_level_search;
using subsemi::full_transformation_table;
using subsemi::ideal_elements;
using subsemi::pipeline_t4;
using subsemi::read_subs_file;
using subsemi::shard_sweep;
using subsemi::torso_lower_task;
using subsemi::torso_uppers;

namespace {

// Fresh directory under the system temp root, removed again on scope exit.
struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("subsemi-pipeline-" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string sub(const std::string& name) const { return (path / name).string(); }
};

ConjugationAction s_action(uint32_t d) {
  ElementIndexing idx(d);
  std::vector<Transformation> gens;
  if (d >= 2) {
    std::vector<uint8_t> swap01(d), cycle(d);
    for (uint32_t i = 0; i < d; ++i) swap01[i] = uint8_t(i), cycle[i] = uint8_t((i + 1) % d);
    swap01[0] = 1;
    swap01[1] = 0;
    gens.push_back(Transformation(swap01));
    gens.push_back(Transformation(cycle));
  }
  return build_action(idx, gens, "S" + std::to_string(d));
}

std::vector<std::string> nonblank_lines(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(bool(in));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<IndexSet> sets_in_level_files(const std::vector<std::string>& files,
                                          uint32_t universe) {
  std::vector<IndexSet> all;
  for (const std::string& f : files)
    for (const std::string& line : nonblank_lines(f))
      all.push_back(IndexSet::from_hex(universe, line));
  std::sort(all.begin(), all.end(), IndexSet::output_less);
  return all;
}

std::vector<uint64_t> level_histogram(const EnumerationResult& r) {
  REQUIRE(r.levels.has_value());
  std::vector<uint64_t> hist;
  for (uint32_t lv : *r.levels) {
    if (hist.size() <= lv) hist.resize(lv + 1, 0);
    ++hist[lv];
  }
  return hist;
}

void append_bytes(const std::string& file, const std::string& bytes) {
  std::ofstream out(file, std::ios::binary | std::ios::app);
  REQUIRE(bool(out));
  out << bytes;
}

nlohmann::json load_json(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return nlohmann::json::parse(buf.str());
}

}  // namespace

TEST_CASE("the external leveled search reproduces the in-memory breadth-first search") {
  CayleyTable t = full_transformation_table(3);
  SearchOptions bo;
  bo.strategy = Strategy::bfs;
  EnumerationResult bfs = enumerate_min_extensions(t, IndexSet(t.n()), bo);
  REQUIRE(bfs.found.size() == 1299);
  std::vector<uint64_t> hist = level_histogram(bfs);

  TempDir td("external-basic");
  ExternalSearchOptions eo;
  eo.state_dir = td.sub("state");
  eo.count_only = false;
  eo.sort_run_lines = 100;  // force several sorted runs per level
  ExternalSearchResult r = external_level_search(t, IndexSet(t.n()), eo);

  CHECK(r.total == 1299);
  CHECK_FALSE(r.resumed_complete);
  REQUIRE(r.level_counts.size() == hist.size() + 1);
  CHECK(r.level_counts.back() == 0);
  for (size_t k = 0; k < hist.size(); ++k) {
    CAPTURE(k);
    CHECK(r.level_counts[k] == hist[k]);
  }
  CHECK(r.stats.nodes_visited > 0);
  CHECK(r.stats.closures_computed > 0);

  REQUIRE_FALSE(r.level_files.empty());
  std::vector<IndexSet> streamed = sets_in_level_files(r.level_files, t.n());
  REQUIRE(streamed.size() == bfs.found.size());
  CHECK(streamed == bfs.found);
}

TEST_CASE("the external search applies symmetry and size limits like the in-memory one") {
  CayleyTable t = full_transformation_table(3);
  ConjugationAction act = s_action(3);

  SUBCASE("conjugacy classes") {
    SearchOptions bo;
    bo.strategy = Strategy::bfs;
    bo.symmetry = &act;
    EnumerationResult bfs = enumerate_min_extensions(t, IndexSet(t.n()), bo);
    REQUIRE(bfs.found.size() == 283);
    std::vector<uint64_t> hist = level_histogram(bfs);

    TempDir td("external-sym");
    ExternalSearchOptions eo;
    eo.symmetry = &act;
    eo.state_dir = td.sub("state");
    ExternalSearchResult r = external_level_search(t, IndexSet(t.n()), eo);
    CHECK(r.total == 283);
    REQUIRE(r.level_counts.size() == hist.size() + 1);
    for (size_t k = 0; k < hist.size(); ++k) {
      CAPTURE(k);
      CHECK(r.level_counts[k] == hist[k]);
    }
    // count-only runs delete their level files
    CHECK(r.level_files.empty());
    CHECK_FALSE(fs::exists(fs::path(td.sub("state")) / "level_0.hex"));
  }

  SUBCASE("size cap") {
    SearchOptions bo;
    bo.strategy = Strategy::bfs;
    bo.max_size = 4;
    EnumerationResult bfs = enumerate_min_extensions(t, IndexSet(t.n()), bo);

    TempDir td("external-cap");
    ExternalSearchOptions eo;
    eo.max_size = 4;
    eo.state_dir = td.sub("state");
    ExternalSearchResult r = external_level_search(t, IndexSet(t.n()), eo);
    CHECK(r.total == bfs.found.size());
  }
}

TEST_CASE("a completed checkpoint is trusted on resume instead of recomputed") {
  CayleyTable t = full_transformation_table(3);
  TempDir td("external-resume");
  ExternalSearchOptions eo;
  eo.state_dir = td.sub("state");

  SUBCASE("count-only run") {
    ExternalSearchResult first = external_level_search(t, IndexSet(t.n()), eo);
    REQUIRE(first.total == 1299);

    eo.resume = true;
    ExternalSearchResult again = external_level_search(t, IndexSet(t.n()), eo);
    CHECK(again.resumed_complete);
    CHECK(again.total == 1299);
    CHECK(again.level_counts == first.level_counts);
    // the checkpoint carries the finished run's counters
    CHECK(again.stats.nodes_visited == first.stats.nodes_visited);
    CHECK(again.stats.closures_computed == first.stats.closures_computed);
    CHECK(again.level_files.empty());
  }

  SUBCASE("run with retained level files") {
    eo.count_only = false;
    ExternalSearchResult first = external_level_search(t, IndexSet(t.n()), eo);
    REQUIRE(first.total == 1299);

    eo.resume = true;
    ExternalSearchResult again = external_level_search(t, IndexSet(t.n()), eo);
    CHECK(again.resumed_complete);
    CHECK(again.total == 1299);
    CHECK(again.level_files == first.level_files);
  }

  SUBCASE("without resume the state is rebuilt from scratch") {
    ExternalSearchResult first = external_level_search(t, IndexSet(t.n()), eo);
    ExternalSearchResult again = external_level_search(t, IndexSet(t.n()), eo);
    CHECK_FALSE(again.resumed_complete);
    CHECK(again.total == first.total);
    CHECK(again.stats.nodes_visited == first.stats.nodes_visited);
  }
}

TEST_CASE("an interrupted external search resumes from its last completed level") {
  CayleyTable t = full_transformation_table(3);
  TempDir td("external-truncate");
  ExternalSearchOptions eo;
  eo.state_dir = td.sub("state");
  eo.count_only = false;
  ExternalSearchResult full = external_level_search(t, IndexSet(t.n()), eo);
  REQUIRE(full.total == 1299);
  REQUIRE(full.level_counts.size() >= 5);

  // Rewind the checkpoint to the state right after level 2, as if the
  // process had died there, and drop the later level files.
  fs::path ck = fs::path(td.sub("state")) / "checkpoint.json";
  nlohmann::json j = load_json(ck.string());
  REQUIRE(j["done"].get<bool>());
  REQUIRE(j["levels"].size() == full.level_counts.size());
  const size_t keep = 3;
  nlohmann::json trimmed = nlohmann::json::array();
  for (size_t k = 0; k < keep; ++k) trimmed.push_back(j["levels"][k]);
  j["levels"] = std::move(trimmed);
  j["done"] = false;
  {
    std::ofstream out(ck, std::ios::binary | std::ios::trunc);
    REQUIRE(bool(out));
    out << j.dump(2) << '\n';
  }
  for (size_t k = keep; k < full.level_counts.size(); ++k)
    fs::remove(fs::path(td.sub("state")) / ("level_" + std::to_string(k) + ".hex"));

  eo.resume = true;
  ExternalSearchResult resumed = external_level_search(t, IndexSet(t.n()), eo);
  CHECK_FALSE(resumed.resumed_complete);
  CHECK(resumed.total == 1299);
  CHECK(resumed.level_counts == full.level_counts);
  REQUIRE(resumed.level_files.size() == full.level_files.size());
  CHECK(sets_in_level_files(resumed.level_files, t.n()) ==
        sets_in_level_files(full.level_files, t.n()));
}

TEST_CASE("checkpoints are bound to their search configuration") {
  CayleyTable t = full_transformation_table(3);
  TempDir td("external-fingerprint");
  ExternalSearchOptions eo;
  eo.state_dir = td.sub("state");
  external_level_search(t, IndexSet(t.n()), eo);

  eo.resume = true;
  eo.use_equiv_generators = false;  // a different search
  try {
    external_level_search(t, IndexSet(t.n()), eo);
    FAIL("a foreign checkpoint must be rejected");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_format);
    CHECK(std::string(e.what()).find("different search") != std::string::npos);
  }
}

TEST_CASE("damaged level files fail the resume loudly") {
  CayleyTable t = full_transformation_table(3);
  TempDir td("external-damage");
  ExternalSearchOptions eo;
  eo.state_dir = td.sub("state");
  eo.count_only = false;
  external_level_search(t, IndexSet(t.n()), eo);
  eo.resume = true;
  fs::path level1 = fs::path(td.sub("state")) / "level_1.hex";
  REQUIRE(fs::exists(level1));

  SUBCASE("content drift") {
    append_bytes(level1.string(), "ffffffff\n");
    try {
      external_level_search(t, IndexSet(t.n()), eo);
      FAIL("a level file with a wrong digest must be rejected");
    } catch (const error& e) {
      CHECK(e.code() == errc::shard_corrupt);
      CHECK(std::string(e.what()).find("corrupt") != std::string::npos);
    }
  }

  SUBCASE("missing file") {
    fs::remove(level1);
    try {
      external_level_search(t, IndexSet(t.n()), eo);
      FAIL("a missing checkpointed level file must be rejected");
    } catch (const error& e) {
      CHECK(e.code() == errc::shard_corrupt);
      CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
  }
}

TEST_CASE("the shard sweep partitions the lower torsos independently of thread count") {
  ElementIndexing idx(3);
  CayleyTable t = full_transformation_table(3);
  IndexSet k2 = ideal_elements(idx, 2);
  SearchOptions plain;
  std::vector<UpperTorso> uppers = torso_uppers(t, k2, plain);
  REQUIRE(uppers.size() == 7);

  uint64_t direct_total = 0;
  std::vector<uint64_t> per_upper;
  for (const UpperTorso& u : uppers) {
    EnumerationResult local = torso_lower_task(t, k2, u, plain);
    per_upper.push_back(local.found.size());
    direct_total += local.found.size();
  }
  REQUIRE(direct_total == 1299);

  TempDir ta("sweep-j1");
  TempDir tb("sweep-j3");
  ShardSweepOptions so;
  so.shard_batch = 2;
  so.jobs = 1;
  so.out_dir = ta.path.string();
  ShardSweepResult r1 = shard_sweep(t, k2, uppers, so);
  so.jobs = 3;
  so.out_dir = tb.path.string();
  ShardSweepResult r3 = shard_sweep(t, k2, uppers, so);

  CHECK(r1.classes == 1299);
  CHECK(r3.classes == 1299);
  REQUIRE(r1.shards.size() == 4);
  REQUIRE(r3.shards.size() == 4);
  for (size_t i = 0; i < r1.shards.size(); ++i) {
    CAPTURE(i);
    CHECK(r1.shards[i].key == "shard-" + std::to_string(i));
    CHECK(r1.shards[i].uppers == (i == 3 ? 1 : 2));
    CHECK(r1.shards[i].classes == per_upper[2 * i] + (i == 3 ? 0 : per_upper[2 * i + 1]));
    // identical bytes regardless of worker count
    CHECK(r1.shards[i].digest == r3.shards[i].digest);
    std::ifstream fa(r1.shards[i].path, std::ios::binary);
    std::ifstream fb(r3.shards[i].path, std::ios::binary);
    std::ostringstream ba, bb;
    ba << fa.rdbuf();
    bb << fb.rdbuf();
    CHECK(ba.str() == bb.str());
  }

  // shard files are well-formed set files keyed by their shard
  SubsFile shard0 = read_subs_file(r1.shards[0].path);
  CHECK(shard0.header.degree == t.n());
  CHECK(shard0.header.bits);
  CHECK(shard0.header.shard_key == "shard-0");
  CHECK(shard0.sets.size() == r1.shards[0].classes);
  CHECK(std::is_sorted(shard0.sets.begin(), shard0.sets.end(), IndexSet::output_less));

  // the manifest records every shard with its digest
  RunManifest m = RunManifest::load(ta.sub("shards.json"));
  CHECK(m.command == "shard-sweep");
  CHECK(m.options.count("config") == 1);
  REQUIRE(m.shards.size() == 4);
  for (size_t i = 0; i < m.shards.size(); ++i) {
    CHECK(m.shards[i].digest == r1.shards[i].digest);
    CHECK(m.shards[i].sets == r1.shards[i].classes);
    CHECK_FALSE(fs::path(m.shards[i].path).is_absolute());
  }
  CHECK(m.metrics.at("total_classes") == 1299);
  CHECK(m.metrics.at("uppers") == 7);
}

TEST_CASE("the shard sweep resume verifies digests before skipping work") {
  ElementIndexing idx(3);
  CayleyTable t = full_transformation_table(3);
  IndexSet k2 = ideal_elements(idx, 2);
  std::vector<UpperTorso> uppers = torso_uppers(t, k2, SearchOptions{});

  TempDir td("sweep-resume");
  ShardSweepOptions so;
  so.shard_batch = 2;
  so.jobs = 2;
  so.out_dir = td.path.string();
  ShardSweepResult first = shard_sweep(t, k2, uppers, so);
  REQUIRE(first.classes == 1299);
  REQUIRE(first.shards.size() == 4);
  so.resume = true;

  SUBCASE("intact shards are skipped wholesale") {
    ShardSweepResult again = shard_sweep(t, k2, uppers, so);
    CHECK(again.shards_resumed == 4);
    CHECK(again.classes == 1299);
    CHECK(again.stats.nodes_visited == 0);
    CHECK(again.stats.closures_computed == 0);
    for (size_t i = 0; i < 4; ++i) CHECK(again.shards[i].digest == first.shards[i].digest);
  }

  SUBCASE("a missing shard is recomputed byte-identically") {
    fs::remove(first.shards[2].path);
    ShardSweepResult again = shard_sweep(t, k2, uppers, so);
    CHECK(again.shards_resumed == 3);
    CHECK(again.classes == 1299);
    CHECK(again.shards[2].digest == first.shards[2].digest);
    CHECK(fs::exists(first.shards[2].path));
  }

  SUBCASE("a shard with drifted bytes stops the run") {
    append_bytes(first.shards[1].path, "junk\n");
    try {
      shard_sweep(t, k2, uppers, so);
      FAIL("a corrupt shard must be rejected");
    } catch (const error& e) {
      CHECK(e.code() == errc::shard_corrupt);
      REQUIRE(e.witness().size() == 1);
      CHECK(e.witness()[0] == 2);  // 1-based shard number
    }
  }

  SUBCASE("a manifest from a different configuration is rejected") {
    so.shard_batch = 3;
    try {
      shard_sweep(t, k2, uppers, so);
      FAIL("a foreign sweep manifest must be rejected");
    } catch (const error& e) {
      CHECK(e.code() == errc::bad_format);
      CHECK(std::string(e.what()).find("different configuration") != std::string::npos);
    }
  }
}

TEST_CASE("the desk tier of the degree-4 pipeline") {
  PipelineOptions po;
  po.tier = Tier::desk;
  po.jobs = 2;
  PipelineT4Report rep = pipeline_t4(po);

  CHECK(rep.tier == Tier::desk);
  CHECK(rep.jobs == 2);
  CHECK(rep.subgroup_classes == 11);
  CHECK(rep.subgroups_raw == 30);
  REQUIRE(rep.p_by_group.size() == 10);

  std::vector<uint64_t> orders;
  uint64_t sum_stab = 0, sum_raw = 0;
  for (const PipelineT4Report::GroupShard& gs : rep.p_by_group) {
    orders.push_back(gs.order);
    CHECK(gs.order == gs.upper.count());
    CHECK(gs.order >= 2);
    CHECK(gs.stab_classes >= 1);
    CHECK(gs.raw_sets >= gs.stab_classes);
    sum_stab += gs.stab_classes;
    sum_raw += gs.raw_sets;
  }
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<uint64_t>{2, 2, 3, 4, 4, 4, 6, 8, 12, 24});
  CHECK(rep.p_classes == sum_stab);
  CHECK(rep.p_raw_sets == sum_raw);

  // the transposition subgroup: canonical representative {identity, [1,2,4,3]}
  IndexSet z2(256);
  z2.add(27);
  z2.add(30);
  bool found_z2 = false;
  for (const PipelineT4Report::GroupShard& gs : rep.p_by_group)
    if (gs.upper == z2) {
      found_z2 = true;
      CHECK(gs.order == 2);
      CHECK(gs.label == "{28,31}");
      CHECK(rep.z2_stab_classes == gs.stab_classes);
      CHECK(rep.z2_raw_sets == gs.raw_sets);
    }
  CHECK(found_z2);
  CHECK(rep.z2_stab_classes >= 1);

  // property censuses: structural sanity (exact values live in the
  // acceptance run)
  uint64_t nil_sum = 0;
  for (uint64_t c : rep.nilpotent_by_degree) nil_sum += c;
  CHECK(nil_sum == rep.nilpotent_classes);
  REQUIRE(rep.nilpotent_by_degree.size() >= 2);
  CHECK(rep.nilpotent_by_degree.size() <= 4);  // max nilpotency degree is 3
  CHECK(rep.nilpotent_by_degree[0] == 0);
  CHECK(rep.nilpotent_classes >= 1);
  CHECK(rep.commutative_classes >= 1);
  CHECK(rep.band_classes >= 1);

  CHECK_FALSE(rep.full_ran);
  CHECK(rep.step1_classes == 0);
  CHECK(rep.step2_classes == 0);
  CHECK(rep.total_classes == 0);
  CHECK(rep.step2_shards.empty());

  std::string text = rep.to_text();
  CHECK(text.find("pipeline-t4: tier=desk jobs=2") != std::string::npos);
  CHECK(text.find("step1: SKIPPED (full tier)") != std::string::npos);
  CHECK(text.find("step4: subgroup_classes=11 subgroups_raw=30") != std::string::npos);
  CHECK(text.find("step5: P stab_classes=") != std::string::npos);
  CHECK(text.find("step5 z2: stab_classes=") != std::string::npos);
  CHECK(text.find("census nilpotent: classes=") != std::string::npos);
  CHECK(text.find("census commutative: classes=") != std::string::npos);
  CHECK(text.find("census band: classes=") != std::string::npos);
}
