#include "subsemi/torso.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "subsemi/closure.hpp"
#include "subsemi/error.hpp"
#include "subsemi/quotient.hpp"

namespace subsemi {

std::vector<UpperTorso> torso_uppers(const CayleyTable& t, const IndexSet& ideal,
                                     const SearchOptions& opts, SearchStats* upper_stats) {
  QuotientMap q = rees_quotient(t, ideal);
  const ConjugationAction* act = opts.symmetry;
  ConjugationAction qact;
  SearchOptions upper_opts;
  upper_opts.strategy = opts.strategy;
  upper_opts.use_equiv_generators = opts.use_equiv_generators;
  // Upper torsos must not be filtered: properties of a subsemigroup do not
  // carry over to its quotient-side part, so pruning here would lose lowers.
  upper_opts.property_filter = PropertyFilter::none;
  if (opts.max_size) upper_opts.max_size = *opts.max_size + 1;  // the zero may tag along
  if (act) {
    qact = act->induced_on_quotient(q, ideal);
    upper_opts.symmetry = &qact;
  }
  // The zero never needs to be adjoined explicitly: closures add it on their
  // own whenever a product falls into the ideal, and sets differing only in
  // the zero strip to the same upper.
  IndexSet x = IndexSet::full(q.quotient.n());
  x.remove(q.zero);
  upper_opts.restrict_extensions_to = x;

  EnumerationResult qr = enumerate_min_extensions(q.quotient, IndexSet(q.quotient.n()), upper_opts);
  if (upper_stats) upper_stats->merge(qr.stats);

  std::vector<UpperTorso> uppers;
  std::unordered_set<IndexSet, IndexSetHash> seen;
  uint64_t scratch = 0;
  for (const IndexSet& u : qr.found) {
    IndexSet stripped = u;
    stripped.remove(q.zero);
    IndexSet upper = q.map_back(stripped, t.n());
    if (act) upper = act->canonical_rep(upper);
    if (!seen.insert(upper).second) continue;
    IndexSet seedset(t.n());
    upper.for_each([&](uint32_t e) {
      if (!seedset.contains(e)) seedset = closure_extend(t, seedset, e, scratch);
    });
    uppers.push_back({std::move(upper), std::move(seedset)});
  }
  std::sort(uppers.begin(), uppers.end(),
            [](const UpperTorso& a, const UpperTorso& b) {
              return IndexSet::output_less(a.upper, b.upper);
            });
  return uppers;
}

EnumerationResult torso_lower_task(const CayleyTable& t, const IndexSet& ideal,
                                   const UpperTorso& u, const SearchOptions& opts) {
  SearchOptions lopts = opts;
  lopts.restrict_extensions_to = ideal;
  ConjugationAction stab;
  if (opts.symmetry) {
    stab = opts.symmetry->subaction(opts.symmetry->stabilizer_of(u.upper),
                                    opts.symmetry->description() + "/stab");
    lopts.symmetry = &stab;
  }
  return enumerate_min_extensions(t, u.seed, lopts);
}

TorsoResult torso_enumerate(const CayleyTable& t, const IndexSet& ideal,
                            const TorsoOptions& topts) {
  const SearchOptions& opts = topts.search;
  TorsoResult out;
  out.uppers = torso_uppers(t, ideal, opts, &out.merged.stats);
  size_t count = out.uppers.size();
  out.per_upper.resize(count);

  std::vector<EnumerationResult> locals(count);
  std::atomic<size_t> next{0};
  std::mutex sink_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        EnumerationResult local = torso_lower_task(t, ideal, out.uppers[i], opts);
        TorsoPerUpper& pu = out.per_upper[i];
        pu.class_count = local.found.size();
        pu.stats = local.stats;
        if (opts.symmetry) {
          for (const IndexSet& s : local.found) pu.raw_count += opts.symmetry->orbit_count(s);
        } else {
          pu.raw_count = pu.class_count;
        }
        if (topts.per_upper_sink) {
          std::lock_guard<std::mutex> lock(sink_mutex);
          topts.per_upper_sink(i, out.uppers[i], local);
        }
        if (topts.keep_found) locals[i] = std::move(local);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);  // drain remaining work
        return;
      }
    }
  };

  uint32_t jobs = std::max<uint32_t>(1, topts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (uint32_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  EnumerationResult& merged = out.merged;
  merged.provenance = "torso jobs=" + std::to_string(jobs);
  for (size_t i = 0; i < count; ++i) {
    merged.stats.merge(out.per_upper[i].stats);
    if (!topts.keep_found) continue;
    // Shards cannot collide: a conjugation mapping one stored set to another
    // maps upper part to upper part, and distinct shard uppers are
    // non-conjugate by construction.
    for (IndexSet& s : locals[i].found)
      merged.found.push_back(opts.symmetry ? opts.symmetry->canonical_rep(s) : std::move(s));
    locals[i].found.clear();
  }
  std::sort(merged.found.begin(), merged.found.end(), IndexSet::output_less);
  return out;
}

}  // namespace subsemi
