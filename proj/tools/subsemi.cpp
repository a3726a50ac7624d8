// Command-line front end: table generation, enumeration runs, classification,
// containment-lattice rendering, and the degree-4 reproduction pipeline.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "subsemi/cayley_table.hpp"
#include "subsemi/census.hpp"
#include "subsemi/classify.hpp"
#include "subsemi/conjugation.hpp"
#include "subsemi/element_indexing.hpp"
#include "subsemi/error.hpp"
#include "subsemi/hasse.hpp"
#include "subsemi/index_set.hpp"
#include "subsemi/io.hpp"
#include "subsemi/manifest.hpp"
#include "subsemi/pipeline.hpp"
#include "subsemi/quotient.hpp"
#include "subsemi/search.hpp"
#include "subsemi/subtable.hpp"
#include "subsemi/torso.hpp"
#include "subsemi/transformation.hpp"

namespace {

using namespace subsemi;

uint32_t default_jobs() {
  if (const char* env = std::getenv("SUBSEMI_JOBS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return uint32_t(v);
  }
  return 1;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::bad_format, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw error(errc::bad_format, "failed writing " + path);
}

// ---------------------------------------------------------------------------
// Builtin table specs: T<d>, K<d>_<i>, S<d>, T<d>/K<d>_<i>, K<d>_<j>/K<d>_<i>.
// ---------------------------------------------------------------------------

struct BuiltinSpec {
  enum class Kind { full, ideal, group, quotient };
  Kind kind = Kind::full;
  uint32_t degree = 0;
  uint32_t rank = 0;        // ideal / quotient only: rank of the (denominator) ideal
  uint32_t upper_rank = 0;  // quotient only: numerator K_{d,upper_rank}, 0 = the full table
};

std::optional<uint32_t> parse_u32(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  uint32_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + uint32_t(c - '0');
  }
  return v;
}

std::optional<BuiltinSpec> parse_builtin(const std::string& s) {
  auto tail_pair = [](std::string_view t) -> std::optional<std::pair<uint32_t, uint32_t>> {
    size_t us = t.find('_');
    if (us == std::string_view::npos) return std::nullopt;
    auto d = parse_u32(t.substr(0, us));
    auto r = parse_u32(t.substr(us + 1));
    if (!d || !r) return std::nullopt;
    return std::make_pair(*d, *r);
  };
  if (s.size() < 2) return std::nullopt;
  size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string_view left(s.data(), slash);
    std::string_view right(s.data() + slash + 1, s.size() - slash - 1);
    if (left.size() < 2 || right.size() < 2 || right[0] != 'K') return std::nullopt;
    auto dr = tail_pair(right.substr(1));
    if (!dr) return std::nullopt;
    if (left[0] == 'T') {
      auto d = parse_u32(left.substr(1));
      if (!d || dr->first != *d) return std::nullopt;
      return BuiltinSpec{BuiltinSpec::Kind::quotient, *d, dr->second, 0};
    }
    if (left[0] == 'K') {
      auto up = tail_pair(left.substr(1));
      if (!up || dr->first != up->first || dr->second >= up->second) return std::nullopt;
      return BuiltinSpec{BuiltinSpec::Kind::quotient, up->first, dr->second, up->second};
    }
    return std::nullopt;
  }
  std::string_view body(s);
  switch (s[0]) {
    case 'T':
      if (auto d = parse_u32(body.substr(1))) return BuiltinSpec{BuiltinSpec::Kind::full, *d, 0};
      return std::nullopt;
    case 'S':
      if (auto d = parse_u32(body.substr(1))) return BuiltinSpec{BuiltinSpec::Kind::group, *d, 0};
      return std::nullopt;
    case 'K':
      if (auto dr = tail_pair(body.substr(1)))
        return BuiltinSpec{BuiltinSpec::Kind::ideal, dr->first, dr->second};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

CayleyTable make_builtin_table(const BuiltinSpec& b) {
  if (b.degree == 0) {
    if (b.kind == BuiltinSpec::Kind::full) return CayleyTable::validated(0, {}, {});
    throw error(errc::degree_too_large, "degree 0 is only defined for the full table T0");
  }
  ElementIndexing idx(b.degree);
  switch (b.kind) {
    case BuiltinSpec::Kind::full:
      return full_transformation_table(b.degree);
    case BuiltinSpec::Kind::ideal: {
      CayleyTable t = full_transformation_table(b.degree);
      return SubTable(t, ideal_elements(idx, b.rank)).table();
    }
    case BuiltinSpec::Kind::group: {
      CayleyTable t = full_transformation_table(b.degree);
      return SubTable(t, symmetric_group(idx)).table();
    }
    case BuiltinSpec::Kind::quotient: {
      CayleyTable t = full_transformation_table(b.degree);
      if (b.upper_rank == 0) return rees_quotient(t, ideal_elements(idx, b.rank)).quotient;
      SubTable sub(t, ideal_elements(idx, b.upper_rank));
      return rees_quotient(sub.table(), sub.restrict(ideal_elements(idx, b.rank))).quotient;
    }
  }
  throw error(errc::bad_format, "unhandled builtin kind");
}

std::vector<Transformation> sd_generators(uint32_t d) {
  if (d < 2) return {Transformation::identity(d)};
  std::vector<uint8_t> sw(d), cy(d);
  for (uint32_t i = 0; i < d; ++i) {
    sw[i] = uint8_t(i);
    cy[i] = uint8_t((i + 1) % d);
  }
  std::swap(sw[0], sw[1]);
  std::vector<Transformation> gens;
  gens.emplace_back(std::move(sw));
  gens.emplace_back(std::move(cy));
  return gens;
}

struct ResolvedTable {
  CayleyTable table;
  std::string spec;  // what names it in headers and manifests
  std::optional<BuiltinSpec> builtin;
};

ResolvedTable resolve_table(const std::string& spec) {
  if (auto b = parse_builtin(spec)) return {make_builtin_table(*b), spec, b};
  return {read_table_file(spec), spec, std::nullopt};
}

// `none`/empty, `full` (conjugation by the symmetric group; builtin tables or
// transformation-labeled tables), or explicit `[..];[..]` permutations of the
// table indices that must be table automorphisms.
std::optional<ConjugationAction> resolve_symmetry(const std::string& spec,
                                                  const ResolvedTable& rt) {
  if (spec.empty() || spec == "none") return std::nullopt;
  const CayleyTable& t = rt.table;
  if (spec == "full") {
    if (rt.builtin) {
      const BuiltinSpec& b = *rt.builtin;
      if (b.degree == 0) return std::nullopt;  // nothing acts on the empty table
      std::vector<Transformation> gens = sd_generators(b.degree);
      std::string desc = "S" + std::to_string(b.degree);
      ElementIndexing idx(b.degree);
      switch (b.kind) {
        case BuiltinSpec::Kind::full:
          return build_action(idx, gens, desc);
        case BuiltinSpec::Kind::ideal:
        case BuiltinSpec::Kind::group:
          return build_action_from_labels(t, gens, desc);
        case BuiltinSpec::Kind::quotient: {
          CayleyTable full = full_transformation_table(b.degree);
          IndexSet ideal = ideal_elements(idx, b.rank);
          QuotientMap q = rees_quotient(full, ideal);
          return build_action(idx, gens, desc).induced_on_quotient(q, ideal);
        }
      }
    }
    if (t.has_labels() && t.n() > 0) {
      Transformation probe = Transformation::parse(t.labels()[0]);
      return build_action_from_labels(t, sd_generators(probe.degree()),
                                      "S" + std::to_string(probe.degree()));
    }
    throw error(errc::bad_format,
                "--symmetry full needs a builtin table or transformation labels; "
                "pass explicit permutation generators instead");
  }
  if (t.n() > 255)
    throw error(errc::degree_too_large,
                "generator-list symmetry supports tables of order at most 255");
  std::vector<Transformation> gens;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t sep = spec.find(';', pos);
    size_t end = sep == std::string::npos ? spec.size() : sep;
    std::string one = spec.substr(pos, end - pos);
    size_t a = one.find_first_not_of(" \t");
    size_t z = one.find_last_not_of(" \t");
    if (a != std::string::npos) {
      gens.push_back(Transformation::parse(one.substr(a, z - a + 1)));
      if (gens.back().degree() != t.n())
        throw error(errc::degree_mismatch, "symmetry generator degree " +
                                               std::to_string(gens.back().degree()) +
                                               " does not match the table order " +
                                               std::to_string(t.n()));
      if (!gens.back().is_permutation())
        throw error(errc::not_a_permutation, "symmetry generator is not a permutation: " + one);
    }
    if (sep == std::string::npos) break;
    pos = sep + 1;
  }
  if (gens.empty()) throw error(errc::bad_format, "empty symmetry generator list");
  std::vector<Transformation> group = permutation_group_closure(t.n(), gens);
  std::vector<std::vector<uint32_t>> pis;
  pis.reserve(group.size());
  for (const Transformation& g : group) {
    std::vector<uint32_t> p(t.n());
    for (uint32_t i = 0; i < t.n(); ++i) p[i] = g[i];
    pis.push_back(std::move(p));
  }
  return ConjugationAction::from_pis(t.n(), std::move(pis), "gens:" + spec, &t);
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenArgs {
  std::string builtin;
  int degree = -1;
  std::string out;
};

void run_gen(const GenArgs& a) {
  std::string spec = a.degree >= 0 ? "T" + std::to_string(a.degree) : a.builtin;
  if (spec.empty()) throw error(errc::bad_format, "pass --builtin or --degree");
  auto b = parse_builtin(spec);
  if (!b) throw error(errc::bad_format, "unknown builtin spec: " + spec);
  CayleyTable t = make_builtin_table(*b);
  write_table_file(a.out, t);
  std::cout << "gen: " << spec << " -> " << a.out << " (order " << t.n() << ")\n";
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

struct EnumerateArgs {
  int degree = -1;
  std::string table;
  std::string strategy = "minext-dfs";
  std::string symmetry = "none";
  int ideal_rank = 0;
  int64_t max_size = -1;
  std::string property;
  std::string format = "members";
  bool normalizer_pruning = false;
  bool no_equiv_generators = false;
  uint32_t brute_cap = 27;
  uint32_t jobs = 1;
  std::string out;
};

void run_enumerate(const EnumerateArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  if ((a.degree >= 0) == !a.table.empty())
    throw error(errc::bad_format, "pass exactly one of --degree and --table");
  if (a.format != "members" && a.format != "bits")
    throw error(errc::bad_format, "unknown format: " + a.format);
  std::string spec = a.degree >= 0 ? "T" + std::to_string(a.degree) : a.table;
  ResolvedTable rt = resolve_table(spec);
  std::optional<ConjugationAction> act = resolve_symmetry(a.symmetry, rt);

  SearchOptions so;
  so.symmetry = act ? &*act : nullptr;
  so.use_equiv_generators = !a.no_equiv_generators;
  so.use_normalizer_pruning = a.normalizer_pruning;
  if (a.max_size >= 0) so.max_size = uint32_t(a.max_size);
  if (!a.property.empty()) {
    if (a.property == "nilpotent")
      so.property_filter = PropertyFilter::nilpotent;
    else if (a.property == "commutative")
      so.property_filter = PropertyFilter::commutative;
    else if (a.property == "band")
      so.property_filter = PropertyFilter::band;
    else
      throw error(errc::bad_format, "unknown property filter: " + a.property);
  }

  EnumerationResult res;
  if (a.ideal_rank > 0) {
    if (!rt.builtin || rt.builtin->kind != BuiltinSpec::Kind::full)
      throw error(errc::precondition_violated,
                  "--ideal-rank needs a full transformation table (T<d>)");
    if (a.strategy != "minext-dfs" && a.strategy != "minext-bfs")
      throw error(errc::precondition_violated,
                  "--ideal-rank works with the minimal-extension strategies only");
    so.strategy = a.strategy == "minext-bfs" ? Strategy::bfs : Strategy::dfs;
    ElementIndexing idx(rt.builtin->degree);
    TorsoOptions topts;
    topts.search = so;
    topts.jobs = a.jobs;
    TorsoResult tr = torso_enumerate(rt.table, ideal_elements(idx, uint32_t(a.ideal_rank)), topts);
    res = std::move(tr.merged);
  } else if (a.strategy == "brute") {
    if (act || so.max_size || so.property_filter != PropertyFilter::none)
      throw error(errc::precondition_violated,
                  "the brute strategy takes no symmetry, size, or property options");
    res = enumerate_brute(rt.table, a.brute_cap);
  } else if (a.strategy == "mingen") {
    res = enumerate_mingen(rt.table, so);
  } else if (a.strategy == "minext-dfs" || a.strategy == "minext-bfs") {
    so.strategy = a.strategy == "minext-bfs" ? Strategy::bfs : Strategy::dfs;
    res = enumerate_min_extensions(rt.table, IndexSet(rt.table.n()), so);
  } else {
    throw error(errc::bad_format, "unknown strategy: " + a.strategy);
  }

  SubsHeader h;
  h.degree = rt.table.n();
  h.table_spec = rt.spec;
  if (act) h.symmetry_spec = a.symmetry;
  h.bits = a.format == "bits";
  write_subs_file(a.out, h, res.found);

  RunManifest m;
  m.command = "enumerate";
  m.options["table"] = rt.spec;
  m.options["strategy"] = a.strategy;
  m.options["symmetry"] = a.symmetry;
  m.options["format"] = a.format;
  if (a.ideal_rank > 0) m.options["ideal_rank"] = std::to_string(a.ideal_rank);
  if (a.max_size >= 0) m.options["max_size"] = std::to_string(a.max_size);
  if (!a.property.empty()) m.options["property"] = a.property;
  m.jobs = a.jobs;
  if (!rt.builtin) m.inputs[rt.spec] = fnv1a_file_hex(rt.spec);
  m.outputs[a.out] = fnv1a_file_hex(a.out);
  m.metrics["sets"] = res.found.size();
  m.metrics["nodes_visited"] = res.stats.nodes_visited;
  m.metrics["closures_computed"] = res.stats.closures_computed;
  m.metrics["extensions_tried"] = res.stats.extensions_tried;
  m.metrics["entries_checked"] = res.stats.entries_checked;
  m.metrics["peak_frontier"] = res.stats.peak_frontier;
  m.wall_time_s = elapsed_s(t0);
  m.save(a.out + ".manifest.json");

  std::cout << "enumerate: " << res.found.size() << " sets -> " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string in;
  std::string table;
  std::string report = "all";
  std::string mode = "iso_anti";
  std::string csv;
  std::string out;
};

void run_classify(const ClassifyArgs& a) {
  if (a.mode != "iso" && a.mode != "iso_anti")
    throw error(errc::bad_format, "unknown mode: " + a.mode);
  SubsFile f = read_subs_file(a.in);
  std::string spec = !a.table.empty() ? a.table : f.header.table_spec;
  if (spec.empty())
    throw error(errc::bad_format, "the set file names no table; pass --table");
  ResolvedTable rt = resolve_table(spec);
  if (rt.table.n() != f.header.degree)
    throw error(errc::degree_mismatch,
                "table order " + std::to_string(rt.table.n()) +
                    " does not match the set-file degree " + std::to_string(f.header.degree));
  std::optional<ConjugationAction> act = resolve_symmetry(f.header.symmetry_spec, rt);

  CensusOptions copts;
  copts.sizes = a.report == "all" || a.report == "size";
  copts.ranks = a.report == "all" || a.report == "rank";
  copts.classes = a.report == "all" || a.report == "classes";
  copts.predicates = a.report == "all" || a.report == "nilpotent" || a.report == "commutative" ||
                     a.report == "band" || a.report == "regular";
  if (!(copts.sizes || copts.ranks || copts.classes || copts.predicates))
    throw error(errc::bad_format, "unknown report: " + a.report);

  CensusReport rep = census(rt.table, f.sets, act ? &*act : nullptr, copts);

  std::ostringstream os;
  bool want_anti = a.mode == "iso_anti";
  auto row = [&](const std::string& head, const CensusRow& r) {
    os << head << ": raw=" << r.raw << " conj=" << r.conj;
    if (rep.has_classes) {
      os << " iso=" << r.iso;
      if (want_anti) os << " anti=" << r.anti;
    }
    os << "\n";
  };
  if (a.report == "all") {
    os << rep.to_text();
  } else if (a.report == "size") {
    row("total", rep.totals);
    for (size_t c = 0; c < rep.by_size.size(); ++c)
      row("size " + std::to_string(c), rep.by_size[c]);
  } else if (a.report == "rank") {
    row("total", rep.totals);
    for (size_t r = 0; r < rep.by_rank.size(); ++r)
      row("rank " + std::to_string(r), rep.by_rank[r]);
  } else if (a.report == "classes") {
    row("total", rep.totals);
  } else if (a.report == "nilpotent") {
    os << "nilpotent: classes=" << rep.nilpotent << "\n";
    for (size_t d = 0; d < rep.nilpotent_by_degree.size(); ++d)
      if (rep.nilpotent_by_degree[d])
        os << "nilpotent degree " << d << ": classes=" << rep.nilpotent_by_degree[d] << "\n";
  } else if (a.report == "commutative") {
    os << "commutative: classes=" << rep.commutative << "\n";
  } else if (a.report == "band") {
    os << "band: classes=" << rep.band << "\n";
  } else if (a.report == "regular") {
    os << "regular: classes=" << rep.regular << "\n";
  }

  std::cout << os.str();
  if (!a.out.empty()) write_text_file(a.out, os.str());
  if (!a.csv.empty()) write_text_file(a.csv, rep.to_csv());
}

// ---------------------------------------------------------------------------
// lattice
// ---------------------------------------------------------------------------

struct LatticeArgs {
  std::string in;
  std::string dot;
};

void run_lattice(const LatticeArgs& a) {
  SubsFile f = read_subs_file(a.in);
  HasseDiagram h = hasse_diagram(f.sets);
  write_text_file(a.dot, hasse_to_dot(h));
  std::cout << "lattice: " << h.nodes.size() << " nodes -> " << a.dot << "\n";
}

// ---------------------------------------------------------------------------
// pipeline-t4
// ---------------------------------------------------------------------------

struct PipelineArgs {
  std::string tier = "desk";
  uint32_t jobs = 1;
  std::string work_dir;
  bool resume = false;
  uint64_t shard_batch = 64;
  bool quiet = false;
  std::string out;
};

void run_pipeline(const PipelineArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  if (a.tier != "desk" && a.tier != "full")
    throw error(errc::bad_format, "unknown tier: " + a.tier);
  PipelineOptions po;
  po.tier = a.tier == "full" ? Tier::full : Tier::desk;
  po.jobs = a.jobs;
  po.work_dir = a.work_dir;
  po.resume = a.resume;
  po.shard_batch = a.shard_batch;
  if (!a.quiet) po.log = [](const std::string& m) { std::cerr << m << "\n"; };
  PipelineT4Report rep = pipeline_t4(po);
  std::string text = rep.to_text();
  std::cout << text;
  if (!a.out.empty()) write_text_file(a.out, text);

  if (!a.work_dir.empty()) {
    RunManifest m;
    m.command = "pipeline-t4";
    m.options["tier"] = a.tier;
    m.options["shard_batch"] = std::to_string(a.shard_batch);
    m.jobs = a.jobs;
    if (!a.out.empty()) m.outputs[a.out] = fnv1a_file_hex(a.out);
    m.metrics["subgroup_classes"] = rep.subgroup_classes;
    m.metrics["subgroups_raw"] = rep.subgroups_raw;
    m.metrics["p_classes"] = rep.p_classes;
    m.metrics["p_raw_sets"] = rep.p_raw_sets;
    m.metrics["z2_stab_classes"] = rep.z2_stab_classes;
    m.metrics["nilpotent_classes"] = rep.nilpotent_classes;
    m.metrics["commutative_classes"] = rep.commutative_classes;
    m.metrics["band_classes"] = rep.band_classes;
    if (rep.full_ran) {
      m.metrics["step1_classes"] = rep.step1_classes;
      m.metrics["step2_classes"] = rep.step2_classes;
      m.metrics["step3_classes"] = rep.step3_classes;
      m.metrics["total_classes"] = rep.total_classes;
    }
    m.wall_time_s = elapsed_s(t0);
    m.save((std::filesystem::path(a.work_dir) / "pipeline-manifest.json").string());
  }
}

// ---------------------------------------------------------------------------
// report-paper-tables
// ---------------------------------------------------------------------------

struct ReportArgs {
  uint32_t max_degree = 4;
  std::string out;
};

void run_report_tables(const ReportArgs& a) {
  std::ostringstream os;
  std::vector<CensusReport> reps;

  uint32_t small_top = std::min(3u, a.max_degree);
  for (uint32_t d = 0; d <= small_top; ++d) {
    CayleyTable t = d ? full_transformation_table(d) : CayleyTable::validated(0, {}, {});
    std::optional<ConjugationAction> act;
    EnumerationResult r;
    if (d == 0) {
      r = enumerate_brute(t);
    } else {
      ElementIndexing idx(d);
      act.emplace(build_action(idx, sd_generators(d), "S" + std::to_string(d)));
      SearchOptions so;
      so.symmetry = &*act;
      r = enumerate_min_extensions(t, IndexSet(t.n()), so);
    }
    CensusOptions copts;
    copts.sizes = d == 3;
    copts.ranks = d == 3;
    copts.classes = true;
    copts.predicates = d >= 1;
    reps.push_back(census(t, r.found, act ? &*act : nullptr, copts));
  }

  os << "table 1: subsemigroup counts (empty set included)\n";
  for (uint32_t d = 0; d <= small_top; ++d) {
    const CensusRow& tt = reps[d].totals;
    os << "degree " << d << ": subsemigroups=" << tt.raw << " conjugacy=" << tt.conj
       << " iso=" << tt.iso << " anti=" << tt.anti << "\n";
  }
  if (a.max_degree >= 4)
    os << "degree 4: subsemigroups=SKIPPED conjugacy=SKIPPED iso=SKIPPED anti=SKIPPED"
          " (full tier)\n";

  os << "\ntable 2: nonempty conjugacy classes by property\n";
  for (uint32_t d = 1; d <= small_top; ++d) {
    const CensusReport& rep = reps[d];
    os << "degree " << d << ": nilpotent=" << rep.nilpotent << " commutative=" << rep.commutative
       << " band=" << rep.band << " regular=" << rep.regular
       << " subsemigroups=" << (rep.totals.conj - 1) << "\n";
  }
  if (a.max_degree >= 4) {
    CayleyTable t4 = full_transformation_table(4);
    ElementIndexing idx(4);
    ConjugationAction act = build_action(idx, sd_generators(4), "S4");
    uint64_t nil = 0, comm = 0, band = 0;
    std::vector<uint64_t> nil_by_degree;
    auto run_filtered = [&](PropertyFilter fil) {
      SearchOptions so;
      so.symmetry = &act;
      so.property_filter = fil;
      return enumerate_min_extensions(t4, IndexSet(t4.n()), so);
    };
    for (const IndexSet& s : run_filtered(PropertyFilter::nilpotent).found) {
      if (s.empty()) continue;
      ++nil;
      Nilpotency nl = nilpotency_by_powers(t4, s);
      if (nil_by_degree.size() <= nl.degree) nil_by_degree.resize(nl.degree + 1, 0);
      ++nil_by_degree[nl.degree];
    }
    for (const IndexSet& s : run_filtered(PropertyFilter::commutative).found)
      if (!s.empty()) ++comm;
    for (const IndexSet& s : run_filtered(PropertyFilter::band).found)
      if (!s.empty()) ++band;
    os << "degree 4: nilpotent=" << nil << " commutative=" << comm << " band=" << band
       << " regular=SKIPPED subsemigroups=SKIPPED (full tier)\n";
    os << "degree 4 nilpotency degrees:";
    for (size_t d = 0; d < nil_by_degree.size(); ++d)
      if (nil_by_degree[d]) os << " " << d << ":" << nil_by_degree[d];
    os << "\n";
  }

  if (small_top >= 3) {
    const CensusReport& r3 = reps[3];
    os << "\ndegree 3 size distribution\n";
    for (size_t c = 0; c < r3.by_size.size(); ++c) {
      const CensusRow& row = r3.by_size[c];
      os << "size " << c << ": subsemigroups=" << row.raw << " conjugacy=" << row.conj
         << " iso=" << row.iso << " anti=" << row.anti << "\n";
    }
    os << "\ndegree 3 rank distribution\n";
    for (size_t rk = 0; rk < r3.by_rank.size(); ++rk) {
      const CensusRow& row = r3.by_rank[rk];
      os << "rank " << rk << ": subsemigroups=" << row.raw << " conjugacy=" << row.conj
         << " iso=" << row.iso << "\n";
    }
  }

  std::cout << os.str();
  if (!a.out.empty()) write_text_file(a.out, os.str());
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string table;
};

void run_validate(const ValidateArgs& a) {
  ResolvedTable rt = resolve_table(a.table);
  std::cout << "valid: order " << rt.table.n() << (rt.table.has_labels() ? " (labeled)" : "")
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"enumerate, classify, and persist the subsemigroups of a finite semigroup"};
  app.require_subcommand(1);
  const uint32_t jobs_env = default_jobs();

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "write a builtin Cayley table");
  g->add_option("--builtin", gen.builtin, "T<d>, K<d>_<i>, S<d>, T<d>/K<d>_<i>, or K<d>_<j>/K<d>_<i>");
  g->add_option("--degree", gen.degree, "shorthand for T<d>");
  g->add_option("--out", gen.out, "output table file")->required();
  g->callback([&gen] { run_gen(gen); });

  EnumerateArgs en;
  en.jobs = jobs_env;
  CLI::App* e = app.add_subcommand("enumerate", "enumerate all subsemigroups of a table");
  e->add_option("--degree", en.degree, "use the full transformation table T<d>");
  e->add_option("--table", en.table, "table file or builtin spec");
  e->add_option("--strategy", en.strategy, "brute | mingen | minext-dfs | minext-bfs")
      ->default_str("minext-dfs");
  e->add_option("--symmetry", en.symmetry,
                "none | full | permutation generators \"[2,1,..];[..]\"")
      ->default_str("none");
  e->add_option("--ideal-rank", en.ideal_rank,
                "decompose along the rank-<=i ideal (builtin T<d> only)");
  e->add_option("--max-size", en.max_size, "emit subsemigroups of at most this size");
  e->add_option("--property", en.property, "nilpotent | commutative | band");
  e->add_option("--format", en.format, "members | bits")->default_str("members");
  e->add_option("--brute-cap", en.brute_cap,
                "largest table order the brute strategy accepts (hard limit 32)")
      ->default_str("27");
  e->add_flag("--normalizer-pruning", en.normalizer_pruning,
              "extend by stabilizer-orbit representatives only (needs symmetry)");
  e->add_flag("--no-equiv-generators", en.no_equiv_generators,
              "extend by every element instead of one per generator class");
  e->add_option("--jobs", en.jobs, "worker threads for --ideal-rank runs");
  e->add_option("--out", en.out, "output set file")->required();
  e->callback([&en] { run_enumerate(en); });

  ClassifyArgs cl;
  CLI::App* c = app.add_subcommand("classify", "census a set file");
  c->add_option("--in", cl.in, "input set file")->required();
  c->add_option("--table", cl.table, "table file or builtin spec (default: the file's header)");
  c->add_option("--report", cl.report,
                "size | rank | classes | nilpotent | commutative | band | regular | all")
      ->default_str("all");
  c->add_option("--mode", cl.mode, "iso | iso_anti (columns shown for class counts)")
      ->default_str("iso_anti");
  c->add_option("--csv", cl.csv, "also write the census as CSV");
  c->add_option("--out", cl.out, "also write the text report to a file");
  c->callback([&cl] { run_classify(cl); });

  LatticeArgs la;
  CLI::App* l = app.add_subcommand("lattice", "render the containment order as Graphviz");
  l->add_option("--in", la.in, "input set file")->required();
  l->add_option("--dot", la.dot, "output .dot file")->required();
  l->callback([&la] { run_lattice(la); });

  PipelineArgs pl;
  pl.jobs = jobs_env;
  CLI::App* p = app.add_subcommand("pipeline-t4", "the degree-4 reproduction pipeline");
  p->add_option("--tier", pl.tier, "desk | full")->default_str("desk");
  p->add_option("--jobs", pl.jobs, "worker threads");
  p->add_option("--work-dir", pl.work_dir, "state directory (required for --tier full)");
  p->add_flag("--resume", pl.resume, "reuse checkpoints and digest-matching shards");
  p->add_option("--shard-batch", pl.shard_batch, "upper torsos per shard file");
  p->add_flag("--quiet", pl.quiet, "suppress progress lines on stderr");
  p->add_option("--out", pl.out, "also write the report to a file");
  p->callback([&pl] { run_pipeline(pl); });

  ReportArgs rp;
  CLI::App* r = app.add_subcommand("report-paper-tables",
                                   "recompute the desk-tier census tables");
  r->add_option("--max-degree", rp.max_degree, "largest degree to include (default 4)");
  r->add_option("--out", rp.out, "also write the report to a file");
  r->callback([&rp] { run_report_tables(rp); });

  ValidateArgs va;
  CLI::App* v = app.add_subcommand("validate", "check a table file or builtin spec");
  v->add_option("--table", va.table, "table file or builtin spec")->required();
  v->callback([&va] { run_validate(va); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& pe) {
    int rc = app.exit(pe);
    return rc == 0 ? 0 : 2;
  } catch (const subsemi::error& err) {
    std::cerr << "error: " << err.what();
    if (!err.witness().empty()) {
      std::cerr << " [witness:";
      for (uint32_t w : err.witness()) std::cerr << ' ' << w;
      std::cerr << ']';
    }
    std::cerr << "\n";
    switch (err.code()) {
      case subsemi::errc::too_large:
      case subsemi::errc::too_large_for_canonicalization:
        return 3;
      case subsemi::errc::shard_corrupt:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
