#include "subsemi/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <queue>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "json.hpp"
#include "subsemi/classify.hpp"
#include "subsemi/closure.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/equiv.hpp"
#include "subsemi/error.hpp"
#include "subsemi/io.hpp"
#include "subsemi/manifest.hpp"
#include "subsemi/quotient.hpp"
#include "subsemi/subtable.hpp"
#include "subsemi/transformation.hpp"

namespace subsemi {

namespace {

namespace fs = std::filesystem;

uint64_t fnv1a_append(uint64_t h, const void* data, size_t len) {
  const uint8_t* p = static_cast<const uint8_t*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t fnv1a_str(uint64_t h, const std::string& s) { return fnv1a_append(h, s.data(), s.size()); }

uint64_t table_digest(const CayleyTable& t) {
  uint64_t h = 14695981039346656037ull;
  uint32_t n = t.n();
  h = fnv1a_append(h, &n, sizeof n);
  auto e = t.entries();
  return fnv1a_append(h, e.data(), e.size() * sizeof(uint32_t));
}

// File order for level/run lines: plain string order of the fixed-width hex,
// i.e. the bitmask compared from the top word down.
bool hex_less(const IndexSet& a, const IndexSet& b) {
  auto wa = a.words();
  auto wb = b.words();
  for (size_t i = wa.size(); i-- > 0;)
    if (wa[i] != wb[i]) return wa[i] < wb[i];
  return false;
}

struct LineStream {
  std::ifstream in;
  std::string cur;
  bool ok = false;

  explicit LineStream(const std::string& path) : in(path, std::ios::binary) {
    if (!in) throw error(errc::bad_format, "cannot open " + path + " for reading");
    advance();
  }
  void advance() {
    while ((ok = bool(std::getline(in, cur))) && cur.empty()) {
    }
  }
};

// Ascending unique merge over several sorted line files.
class MergeCursor {
 public:
  void add(const std::string& path) {
    auto s = std::make_unique<LineStream>(path);
    if (s->ok) _heap.emplace(s->cur, _streams.size());
    _streams.push_back(std::move(s));
  }

  bool next(std::string& out) {
    while (!_heap.empty()) {
      auto [line, i] = _heap.top();
      _heap.pop();
      LineStream& s = *_streams[i];
      s.advance();
      if (s.ok) _heap.emplace(s.cur, i);
      if (!_have_last || line != _last) {
        _last = line;
        _have_last = true;
        out = std::move(line);
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::unique_ptr<LineStream>> _streams;
  std::priority_queue<std::pair<std::string, size_t>, std::vector<std::pair<std::string, size_t>>,
                      std::greater<>>
      _heap;
  std::string _last;
  bool _have_last = false;
};

// Buffers candidate sets, flushing them as sorted unique run files.
struct RunWriter {
  fs::path dir;
  uint64_t cap;
  std::vector<IndexSet> buf;
  std::vector<std::string> run_paths;

  void push(IndexSet s) {
    buf.push_back(std::move(s));
    if (buf.size() >= cap) flush();
  }

  void flush() {
    if (buf.empty()) return;
    std::sort(buf.begin(), buf.end(), hex_less);
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    fs::path p = dir / ("run_" + std::to_string(run_paths.size()) + ".hex");
    std::ofstream out(p, std::ios::binary);
    if (!out) throw error(errc::bad_format, "cannot open " + p.string() + " for writing");
    for (const IndexSet& s : buf) out << s.to_hex() << '\n';
    if (!out) throw error(errc::bad_format, "failed writing " + p.string());
    run_paths.push_back(p.string());
    buf.clear();
  }
};

uint64_t merge_subtract(const std::vector<std::string>& cand_files,
                        const std::vector<std::string>& seen_files, const fs::path& out_path) {
  MergeCursor cand;
  for (const std::string& f : cand_files) cand.add(f);
  MergeCursor seen;
  for (const std::string& f : seen_files) seen.add(f);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw error(errc::bad_format, "cannot open " + out_path.string() + " for writing");
  uint64_t n = 0;
  std::string c, s;
  bool have_s = seen.next(s);
  while (cand.next(c)) {
    while (have_s && s < c) have_s = seen.next(s);
    if (have_s && s == c) continue;
    out << c << '\n';
    ++n;
  }
  if (!out) throw error(errc::bad_format, "failed writing " + out_path.string());
  return n;
}

// Per-≡-class candidate lists inside X (ascending); the front of a list
// decides for its whole class, because a class never straddles a closed set.
std::vector<std::vector<uint32_t>> class_lists_in(const EquivClasses& eq, const IndexSet& x) {
  std::vector<std::vector<uint32_t>> lists;
  for (uint32_t c = 0; c < eq.class_count(); ++c) {
    std::vector<uint32_t> one;
    for (uint32_t m : eq.members(c))
      if (x.contains(m)) one.push_back(m);
    if (!one.empty()) lists.push_back(std::move(one));
  }
  return lists;
}

struct LevelRecord {
  std::string name;  // file name relative to state_dir
  std::string digest;
  uint64_t count = 0;
};

std::string external_fingerprint(const CayleyTable& t, const IndexSet& seed,
                                 const ExternalSearchOptions& opts, const IndexSet& x) {
  uint64_t h = table_digest(t);
  h = fnv1a_str(h, seed.to_hex());
  h = fnv1a_str(h, x.to_hex());
  if (opts.symmetry) {
    h = fnv1a_str(h, opts.symmetry->description());
    uint32_t gs = opts.symmetry->group_size();
    h = fnv1a_append(h, &gs, sizeof gs);
  }
  uint8_t flags[2] = {uint8_t(opts.use_equiv_generators), uint8_t(opts.max_size.has_value())};
  h = fnv1a_append(h, flags, sizeof flags);
  if (opts.max_size) {
    uint32_t m = *opts.max_size;
    h = fnv1a_append(h, &m, sizeof m);
  }
  return fnv1a_hex(h);
}

void save_external_checkpoint(const fs::path& ck, const std::string& fingerprint, bool done,
                              bool files_kept, const std::vector<LevelRecord>& levels,
                              const SearchStats& st) {
  nlohmann::json j;
  j["fingerprint"] = fingerprint;
  j["done"] = done;
  j["files_kept"] = files_kept;
  nlohmann::json arr = nlohmann::json::array();
  for (const LevelRecord& r : levels) {
    nlohmann::json one;
    one["name"] = r.name;
    one["digest"] = r.digest;
    one["count"] = r.count;
    arr.push_back(std::move(one));
  }
  j["levels"] = std::move(arr);
  j["stats"] = {{"nodes_visited", st.nodes_visited},
                {"closures_computed", st.closures_computed},
                {"extensions_tried", st.extensions_tried},
                {"entries_checked", st.entries_checked},
                {"peak_frontier", st.peak_frontier}};
  fs::path tmp = ck;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw error(errc::bad_format, "cannot open " + tmp.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw error(errc::bad_format, "failed writing " + tmp.string());
  }
  fs::rename(tmp, ck);
}

}  // namespace

ExternalSearchResult external_level_search(const CayleyTable& t, const IndexSet& seed,
                                           const ExternalSearchOptions& opts) {
  if (opts.state_dir.empty())
    throw error(errc::precondition_violated, "external search needs a state directory");
  if (seed.universe() != t.n())
    throw error(errc::degree_mismatch, "seed universe does not match the table");
  if (!is_closed(t, seed)) throw error(errc::seed_not_closed, "seed is not closed");
  const ConjugationAction* act = opts.symmetry;
  if (act && act->universe() != t.n())
    throw error(errc::degree_mismatch, "action universe does not match the table");

  IndexSet x = opts.restrict_extensions_to ? *opts.restrict_extensions_to : IndexSet::full(t.n());
  if (x.universe() != t.n())
    throw error(errc::degree_mismatch, "restriction set universe does not match the table");
  if (act)
    for (uint32_t g = 1; g < act->group_size(); ++g)
      if (act->apply(g, x) != x)
        throw error(errc::precondition_violated,
                    "restriction set is not invariant under the symmetry action");

  fs::path state(opts.state_dir);
  fs::path runs_dir = state / "runs";
  fs::path ck = state / "checkpoint.json";
  fs::create_directories(state);
  const std::string fingerprint = external_fingerprint(t, seed, opts, x);

  auto log = [&](const std::string& m) {
    if (opts.log) opts.log(m);
  };

  ExternalSearchResult res;
  std::vector<LevelRecord> levels;
  std::vector<std::string> level_paths;
  auto level_file = [&](size_t k) { return state / ("level_" + std::to_string(k) + ".hex"); };

  bool resumed = false;
  if (opts.resume && fs::exists(ck)) {
    std::ifstream in(ck, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw error(errc::bad_format, "unreadable checkpoint " + ck.string());
    if (j.value("fingerprint", std::string()) != fingerprint)
      throw error(errc::bad_format, "checkpoint " + ck.string() + " belongs to a different search");
    bool done = j.value("done", false);
    bool files_kept = j.value("files_kept", false);
    for (const nlohmann::json& one : j.value("levels", nlohmann::json::array())) {
      LevelRecord r;
      r.name = one.value("name", std::string());
      r.digest = one.value("digest", std::string());
      r.count = one.value("count", uint64_t(0));
      fs::path p = state / r.name;
      if (!done || files_kept) {
        if (!fs::exists(p))
          throw error(errc::shard_corrupt, "checkpointed level file missing: " + p.string());
        if (fnv1a_file_hex(p.string()) != r.digest)
          throw error(errc::shard_corrupt, "checkpointed level file corrupt: " + p.string());
        level_paths.push_back(p.string());
      }
      levels.push_back(std::move(r));
      res.level_counts.push_back(levels.back().count);
      res.total += levels.back().count;
    }
    if (j.contains("stats")) {
      const nlohmann::json& s = j["stats"];
      res.stats.nodes_visited = s.value("nodes_visited", uint64_t(0));
      res.stats.closures_computed = s.value("closures_computed", uint64_t(0));
      res.stats.extensions_tried = s.value("extensions_tried", uint64_t(0));
      res.stats.entries_checked = s.value("entries_checked", uint64_t(0));
      res.stats.peak_frontier = s.value("peak_frontier", uint64_t(0));
    }
    if (done) {
      res.resumed_complete = true;
      if (files_kept && !opts.count_only) res.level_files = level_paths;
      log("external search already complete: " + std::to_string(res.total) + " sets");
      return res;
    }
    resumed = true;
    log("resuming external search at level " + std::to_string(levels.size()));
  }
  if (!resumed) {
    // Fresh start: clear any leftover state from an earlier run.
    if (fs::exists(state))
      for (const fs::directory_entry& e : fs::directory_iterator(state)) {
        std::string name = e.path().filename().string();
        if (name.rfind("level_", 0) == 0 || name == "checkpoint.json" ||
            name == "checkpoint.json.tmp")
          fs::remove(e.path());
      }
    if (fs::exists(runs_dir)) fs::remove_all(runs_dir);
  }
  fs::create_directories(runs_dir);

  const EquivClasses* eq = opts.use_equiv_generators ? &equiv_classes_cached(t) : nullptr;
  std::vector<std::vector<uint32_t>> lists;
  std::vector<uint32_t> singles;
  if (eq) {
    lists = class_lists_in(*eq, x);
  } else {
    x.for_each([&](uint32_t e) { singles.push_back(e); });
  }

  if (levels.empty()) {
    IndexSet root = act ? act->canonical_rep(seed) : seed;
    bool pass = !opts.max_size || root.count() <= *opts.max_size;
    fs::path p = level_file(0);
    {
      std::ofstream out(p, std::ios::binary);
      if (!out) throw error(errc::bad_format, "cannot open " + p.string() + " for writing");
      if (pass) out << root.to_hex() << '\n';
    }
    LevelRecord r{p.filename().string(), fnv1a_file_hex(p.string()), pass ? 1u : 0u};
    levels.push_back(r);
    level_paths.push_back(p.string());
    res.level_counts.push_back(r.count);
    res.total += r.count;
    res.stats.peak_frontier = std::max(res.stats.peak_frontier, r.count);
    save_external_checkpoint(ck, fingerprint, false, true, levels, res.stats);
  }

  while (res.level_counts.back() != 0) {
    size_t k = levels.size();
    RunWriter rw{runs_dir, std::max<uint64_t>(opts.sort_run_lines, 2), {}, {}};
    {
      LineStream prev(level_paths.back());
      for (; prev.ok; prev.advance()) {
        IndexSet node = IndexSet::from_hex(t.n(), prev.cur);
        ++res.stats.nodes_visited;
        if (opts.max_size && node.count() >= *opts.max_size) continue;
        auto try_extend = [&](uint32_t cand) {
          ++res.stats.extensions_tried;
          IndexSet child = closure_extend(t, node, cand, res.stats.entries_checked);
          ++res.stats.closures_computed;
          if (opts.max_size && child.count() > *opts.max_size) return;
          rw.push(act ? act->canonical_rep(child) : std::move(child));
        };
        if (eq) {
          for (const std::vector<uint32_t>& list : lists)
            if (!node.contains(list.front())) try_extend(list.front());
        } else {
          for (uint32_t cand : singles)
            if (!node.contains(cand)) try_extend(cand);
        }
      }
    }
    rw.flush();
    fs::path p = level_file(k);
    uint64_t count = merge_subtract(rw.run_paths, level_paths, p);
    for (const std::string& f : rw.run_paths) fs::remove(f);
    LevelRecord r{p.filename().string(), fnv1a_file_hex(p.string()), count};
    levels.push_back(r);
    level_paths.push_back(p.string());
    res.level_counts.push_back(count);
    res.total += count;
    res.stats.peak_frontier = std::max(res.stats.peak_frontier, count);
    save_external_checkpoint(ck, fingerprint, false, true, levels, res.stats);
    log("level " + std::to_string(k) + ": " + std::to_string(count) + " new, total " +
        std::to_string(res.total));
  }

  save_external_checkpoint(ck, fingerprint, true, !opts.count_only, levels, res.stats);
  fs::remove_all(runs_dir);
  if (opts.count_only) {
    for (const std::string& f : level_paths) fs::remove(f);
  } else {
    res.level_files = level_paths;
  }
  return res;
}

namespace {

std::string sweep_fingerprint(const CayleyTable& t, const IndexSet& ideal,
                              const std::vector<UpperTorso>& uppers,
                              const ShardSweepOptions& opts) {
  uint64_t h = table_digest(t);
  h = fnv1a_str(h, ideal.to_hex());
  for (const UpperTorso& u : uppers) h = fnv1a_str(h, u.upper.to_hex());
  if (opts.search.symmetry) {
    h = fnv1a_str(h, opts.search.symmetry->description());
    uint32_t gs = opts.search.symmetry->group_size();
    h = fnv1a_append(h, &gs, sizeof gs);
  }
  h = fnv1a_append(h, &opts.shard_batch, sizeof opts.shard_batch);
  uint8_t equiv = uint8_t(opts.search.use_equiv_generators);
  h = fnv1a_append(h, &equiv, sizeof equiv);
  return fnv1a_hex(h);
}

std::string shard_file_name(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "shard-%06zu.subs", index);
  return buf;
}

}  // namespace

ShardSweepResult shard_sweep(const CayleyTable& t, const IndexSet& ideal,
                             const std::vector<UpperTorso>& uppers,
                             const ShardSweepOptions& opts) {
  if (opts.out_dir.empty())
    throw error(errc::precondition_violated, "shard sweep needs an output directory");
  const uint64_t batch = std::max<uint64_t>(1, opts.shard_batch);
  fs::path out_dir(opts.out_dir);
  fs::create_directories(out_dir);
  std::string manifest_path =
      opts.manifest_path.empty() ? (out_dir / "shards.json").string() : opts.manifest_path;
  const std::string fingerprint = sweep_fingerprint(t, ideal, uppers, opts);

  size_t nshards = (uppers.size() + batch - 1) / batch;
  ShardSweepResult res;
  res.shards.resize(nshards);
  std::vector<char> need(nshards, 1);

  if (opts.resume && fs::exists(manifest_path)) {
    RunManifest m = RunManifest::load(manifest_path);
    auto it = m.options.find("config");
    if (it == m.options.end() || it->second != fingerprint)
      throw error(errc::bad_format, "sweep manifest belongs to a different configuration");
    for (const ShardRecord& rec : m.shards) {
      // keys are "shard-<index>"
      size_t i = 0;
      if (rec.key.rfind("shard-", 0) != 0) continue;
      i = size_t(std::stoull(rec.key.substr(6)));
      if (i >= nshards) continue;
      ShardRecord probe = rec;
      probe.path = (out_dir / rec.path).string();
      switch (shard_state(probe)) {
        case ShardState::match: {
          need[i] = 0;
          ++res.shards_resumed;
          ShardSummary& s = res.shards[i];
          s.key = rec.key;
          s.path = probe.path;
          s.digest = rec.digest;
          s.classes = rec.sets;
          break;
        }
        case ShardState::missing:
          break;  // recompute
        case ShardState::mismatch:
          throw error(errc::shard_corrupt, "shard file corrupt: " + probe.path,
                      {uint32_t(i + 1)});
      }
    }
  }

  std::atomic<size_t> next{0};
  std::mutex log_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= nshards) return;
      if (!need[i]) continue;
      try {
        size_t begin = i * batch;
        size_t end = std::min<size_t>(begin + batch, uppers.size());
        std::vector<IndexSet> all;
        uint64_t classes = 0;
        SearchStats st;
        for (size_t u = begin; u < end; ++u) {
          EnumerationResult local = torso_lower_task(t, ideal, uppers[u], opts.search);
          classes += local.found.size();
          st.merge(local.stats);
          for (IndexSet& s : local.found) all.push_back(std::move(s));
        }
        std::sort(all.begin(), all.end(), IndexSet::output_less);
        ShardSummary& s = res.shards[i];
        s.key = "shard-" + std::to_string(i);
        s.path = (out_dir / shard_file_name(i)).string();
        s.uppers = end - begin;
        s.classes = classes;
        SubsHeader h;
        h.degree = t.n();
        h.symmetry_spec = opts.search.symmetry ? opts.search.symmetry->description() : "";
        h.bits = true;
        h.shard_key = s.key;
        write_subs_file(s.path, h, all);
        s.digest = fnv1a_file_hex(s.path);
        {
          std::lock_guard<std::mutex> lock(log_mutex);
          if (opts.log)
            opts.log(s.key + ": " + std::to_string(classes) + " sets from " +
                     std::to_string(s.uppers) + " uppers");
          res.stats.merge(st);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(nshards);
        return;
      }
    }
  };

  uint32_t jobs = std::max<uint32_t>(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (uint32_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Fill uppers counts for resumed shards (derivable from the batch layout).
  for (size_t i = 0; i < nshards; ++i) {
    size_t begin = i * batch;
    size_t end = std::min<size_t>(begin + batch, uppers.size());
    res.shards[i].uppers = end - begin;
    res.classes += res.shards[i].classes;
  }

  RunManifest m;
  m.command = "shard-sweep";
  m.options["config"] = fingerprint;
  m.options["shard_batch"] = std::to_string(batch);
  m.options["symmetry"] = opts.search.symmetry ? opts.search.symmetry->description() : "none";
  m.jobs = jobs;
  for (const ShardSummary& s : res.shards) {
    ShardRecord rec;
    rec.key = s.key;
    rec.path = fs::path(s.path).filename().string();
    rec.digest = s.digest;
    rec.sets = s.classes;
    m.outputs[rec.path] = rec.digest;
    m.shards.push_back(std::move(rec));
  }
  m.metrics["total_classes"] = res.classes;
  m.metrics["uppers"] = uppers.size();
  m.metrics["shards_resumed"] = res.shards_resumed;
  m.save(manifest_path);
  return res;
}

namespace {

std::string member_list_1based(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](uint32_t e) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e + 1);
  });
  out += "}";
  return out;
}

}  // namespace

PipelineT4Report pipeline_t4(const PipelineOptions& opts) {
  PipelineT4Report rep;
  rep.tier = opts.tier;
  rep.jobs = std::max<uint32_t>(1, opts.jobs);
  auto log = [&](const std::string& m) {
    if (opts.log) opts.log(m);
  };

  ElementIndexing idx(4);
  CayleyTable t4 = full_transformation_table(4);
  std::vector<Transformation> perms = permutation_group_closure(
      4, {Transformation::parse("[2,1,3,4]"), Transformation::parse("[2,3,4,1]")});
  ConjugationAction act = build_action(idx, perms, "S4");
  IndexSet k43 = ideal_elements(idx, 3);
  const uint32_t id_index = idx.index_of(Transformation::identity(4));

  // Step 4: the closed upper torsos, i.e. the subgroup classes of the
  // permutation part (plus the empty set).
  SearchOptions uo;
  uo.symmetry = &act;
  SearchStats upper_stats;
  std::vector<UpperTorso> uppers = torso_uppers(t4, k43, uo, &upper_stats);
  for (const UpperTorso& u : uppers) {
    if (u.upper.empty()) continue;
    rep.subgroup_classes += 1;
    rep.subgroups_raw += act.orbit_count(u.upper);
  }
  log("step4: subgroup classes=" + std::to_string(rep.subgroup_classes) +
      " raw=" + std::to_string(rep.subgroups_raw));

  // Step 5: lower torsos for every nontrivial subgroup, counted up to the
  // subgroup's stabilizer (two sets with the same upper are conjugate iff
  // they are conjugate by a stabilizer element, so these counts are exactly
  // the conjugacy classes contributed by each subgroup class).
  std::vector<const UpperTorso*> nontrivial;
  for (const UpperTorso& u : uppers)
    if (u.upper.count() >= 2) nontrivial.push_back(&u);
  rep.p_by_group.resize(nontrivial.size());
  {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::mutex log_mutex;
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= nontrivial.size()) return;
        try {
          const UpperTorso& u = *nontrivial[i];
          ConjugationAction stab =
              act.subaction(act.stabilizer_of(u.upper), act.description() + "/stab");
          SearchOptions lo;
          lo.symmetry = &stab;
          lo.restrict_extensions_to = k43;
          EnumerationResult local = enumerate_min_extensions(t4, u.seed, lo);
          PipelineT4Report::GroupShard& gs = rep.p_by_group[i];
          gs.upper = u.upper;
          gs.label = member_list_1based(u.upper);
          gs.order = u.upper.count();
          gs.stab_classes = local.found.size();
          for (const IndexSet& s : local.found) gs.raw_sets += stab.orbit_count(s);
          gs.stats = local.stats;
          {
            std::lock_guard<std::mutex> lock(log_mutex);
            log("step5 " + gs.label + ": stab_classes=" + std::to_string(gs.stab_classes));
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(nontrivial.size());
          return;
        }
      }
    };
    if (rep.jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(rep.jobs);
      for (uint32_t j = 0; j < rep.jobs; ++j) pool.emplace_back(worker);
      for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
  }
  for (const PipelineT4Report::GroupShard& gs : rep.p_by_group) {
    rep.p_classes += gs.stab_classes;
    rep.p_raw_sets += gs.raw_sets;
    if (gs.order == 2) {
      // order-2 subgroups split into two classes; the transposition one is
      // told apart by its non-identity element fixing two points
      uint32_t other = gs.upper.min() == id_index ? gs.upper.next(id_index + 1) : gs.upper.min();
      const Transformation& e = idx.element(other);
      uint32_t fixed = 0;
      for (uint32_t p = 0; p < 4; ++p)
        if (e[p] == p) ++fixed;
      if (fixed == 2) {
        rep.z2_stab_classes = gs.stab_classes;
        rep.z2_raw_sets = gs.raw_sets;
      }
    }
  }

  // Hereditary property censuses over the whole of the degree-4 table.
  {
    struct Job {
      PropertyFilter filter;
      uint64_t* out;
    };
    Job jobs[] = {{PropertyFilter::nilpotent, &rep.nilpotent_classes},
                  {PropertyFilter::commutative, &rep.commutative_classes},
                  {PropertyFilter::band, &rep.band_classes}};
    for (const Job& job : jobs) {
      SearchOptions po;
      po.symmetry = &act;
      po.property_filter = job.filter;
      EnumerationResult r = enumerate_min_extensions(t4, IndexSet(t4.n()), po);
      for (const IndexSet& s : r.found) {
        if (s.empty()) continue;
        ++*job.out;
        if (job.filter == PropertyFilter::nilpotent) {
          Nilpotency nil = nilpotency_by_powers(t4, s);
          if (rep.nilpotent_by_degree.size() <= nil.degree)
            rep.nilpotent_by_degree.resize(nil.degree + 1, 0);
          ++rep.nilpotent_by_degree[nil.degree];
        }
      }
      log("census filter done: " + r.provenance);
    }
  }

  if (opts.tier == Tier::full) {
    if (opts.work_dir.empty())
      throw error(errc::precondition_violated, "the full tier needs a work directory");
    rep.full_ran = true;
    fs::path work(opts.work_dir);
    fs::create_directories(work);

    // The singular part as a standalone table, its own inner ideal, and the
    // symmetry restricted to it.
    SubTable k43t(t4, k43);
    ConjugationAction act43 = act.restricted_to(k43);
    IndexSet k42 = ideal_elements(idx, 2);
    IndexSet k42l = k43t.restrict(k42);
    QuotientMap q = rees_quotient(k43t.table(), k42l);
    ConjugationAction qact = act43.induced_on_quotient(q, k42l);

    // Step 1: classes of the second Rees quotient.
    ExternalSearchOptions e1;
    e1.symmetry = &qact;
    e1.state_dir = (work / "step1").string();
    e1.resume = opts.resume;
    e1.count_only = false;  // level files feed step 2
    e1.sort_run_lines = opts.sort_run_lines;
    e1.log = opts.log;
    IndexSet x1 = IndexSet::full(q.quotient.n());
    x1.remove(q.zero);
    e1.restrict_extensions_to = x1;
    ExternalSearchResult r1 = external_level_search(q.quotient, IndexSet(q.quotient.n()), e1);
    rep.step1_classes = r1.total;
    log("step1: classes=" + std::to_string(rep.step1_classes));

    // Step 2 uppers: strip the zero, map back into the singular table, and
    // close.  A production-scale run would stream these in batches; holding
    // them in memory bounds the practical upper-count this path can handle.
    std::vector<UpperTorso> sweep_uppers;
    bool saw_empty = false;
    uint64_t scratch = 0;
    std::unordered_set<IndexSet, IndexSetHash> seen_uppers;
    for (const std::string& lf : r1.level_files) {
      LineStream in(lf);
      for (; in.ok; in.advance()) {
        IndexSet qset = IndexSet::from_hex(q.quotient.n(), in.cur);
        qset.remove(q.zero);
        IndexSet upper = q.map_back(qset, k43t.size());
        upper = act43.canonical_rep(upper);
        if (!seen_uppers.insert(upper).second) continue;
        if (upper.empty()) {
          saw_empty = true;
          continue;
        }
        IndexSet seedset(k43t.size());
        upper.for_each([&](uint32_t e) {
          if (!seedset.contains(e)) seedset = closure_extend(k43t.table(), seedset, e, scratch);
        });
        sweep_uppers.push_back({std::move(upper), std::move(seedset)});
      }
    }
    std::sort(sweep_uppers.begin(), sweep_uppers.end(),
              [](const UpperTorso& a, const UpperTorso& b) {
                return IndexSet::output_less(a.upper, b.upper);
              });

    // The empty upper's lower torso is the biggest single task — the whole
    // second ideal — so it runs through the external engine as well.
    uint64_t empty_total = 0;
    if (saw_empty) {
      ExternalSearchOptions e2;
      e2.symmetry = &act43;
      e2.restrict_extensions_to = k42l;
      e2.state_dir = (work / "step2-empty").string();
      e2.resume = opts.resume;
      e2.sort_run_lines = opts.sort_run_lines;
      e2.log = opts.log;
      empty_total = external_level_search(k43t.table(), IndexSet(k43t.size()), e2).total;
    }

    ShardSweepOptions so;
    so.search.symmetry = &act43;
    so.jobs = rep.jobs;
    so.shard_batch = opts.shard_batch;
    so.out_dir = (work / "step2").string();
    so.resume = opts.resume;
    so.log = opts.log;
    ShardSweepResult sw = shard_sweep(k43t.table(), k42l, sweep_uppers, so);
    rep.step2_shards = sw.shards;
    rep.step2_classes = sw.classes + empty_total;
    log("step2: classes=" + std::to_string(rep.step2_classes));

    // Step 3: adjoining the identity is a class-preserving bijection, so the
    // order-isomorphic copy contributes the same number of classes.
    rep.step3_classes = rep.step2_classes;

    // Step 6: the three parts are disjoint (no permutations / identity only /
    // a nontrivial permutation).
    rep.total_classes = rep.step2_classes + rep.step3_classes + rep.p_classes;
  }

  return rep;
}

std::string PipelineT4Report::to_text() const {
  std::ostringstream os;
  os << "pipeline-t4: tier=" << (tier == Tier::desk ? "desk" : "full") << " jobs=" << jobs << '\n';
  if (full_ran) {
    os << "step1: classes=" << step1_classes << '\n';
    os << "step2: classes=" << step2_classes << " shards=" << step2_shards.size() << '\n';
    os << "step3: classes=" << step3_classes << " (identity adjoined, order-isomorphic)" << '\n';
  } else {
    os << "step1: SKIPPED (full tier)" << '\n';
    os << "step2: SKIPPED (full tier)" << '\n';
    os << "step3: SKIPPED (full tier)" << '\n';
  }
  os << "step4: subgroup_classes=" << subgroup_classes << " subgroups_raw=" << subgroups_raw
     << '\n';
  for (const GroupShard& gs : p_by_group)
    os << "step5 group order=" << gs.order << " members=" << gs.label
       << ": stab_classes=" << gs.stab_classes << " raw_sets=" << gs.raw_sets << '\n';
  os << "step5: P stab_classes=" << p_classes << " raw_sets=" << p_raw_sets << '\n';
  os << "step5 z2: stab_classes=" << z2_stab_classes << " raw_sets=" << z2_raw_sets << '\n';
  if (full_ran)
    os << "step6: total_classes=" << total_classes << '\n';
  else
    os << "step6: SKIPPED (full tier)" << '\n';
  os << "census nilpotent: classes=" << nilpotent_classes << '\n';
  for (size_t d = 0; d < nilpotent_by_degree.size(); ++d)
    if (nilpotent_by_degree[d])
      os << "census nilpotent degree " << d << ": classes=" << nilpotent_by_degree[d] << '\n';
  os << "census commutative: classes=" << commutative_classes << '\n';
  os << "census band: classes=" << band_classes << '\n';
  return os.str();
}

}  // namespace subsemi
