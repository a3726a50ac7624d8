#include "subsemi/closure.hpp"

#include "subsemi/error.hpp"

namespace subsemi {

IndexSet missing_elements(const CayleyTable& t, const IndexSet& s) {
  IndexSet out(t.n());
  s.for_each([&](uint32_t a) {
    auto row = t.row(a);
    s.for_each([&](uint32_t b) { out.add(row[b]); });
  });
  out -= s;
  return out;
}

bool is_closed(const CayleyTable& t, const IndexSet& s) {
  bool closed = true;
  // for_each has no early exit; sets here are small enough that the plain
  // scan is not worth complicating.
  s.for_each([&](uint32_t a) {
    if (!closed) return;
    auto row = t.row(a);
    s.for_each([&](uint32_t b) {
      if (!s.contains(row[b])) closed = false;
    });
  });
  return closed;
}

IndexSet closure_naive(const CayleyTable& t, const IndexSet& s) {
  IndexSet cur = s;
  for (;;) {
    IndexSet m = missing_elements(t, cur);
    if (m.empty()) return cur;
    cur |= m;
  }
}

namespace {

// Core of the incremental scan.  `cur` must be closed; elements of `pending`
// are incorporated smallest-first.  Every product that escapes cur ∪ pending
// joins pending, and on incorporation of x only the new cells of the grown
// subarray are read: row x over cur ∪ {x} and column x over cur.
void run_scan(const CayleyTable& t, IndexSet& cur, IndexSet& pending, ClosureTrace* trace,
              uint64_t& checked) {
  while (true) {
    uint32_t x = pending.min();
    if (x >= pending.universe()) break;
    pending.remove(x);

    ClosureStep* step = nullptr;
    if (trace) {
      trace->steps.push_back({x, {}});
      step = &trace->steps.back();
    }

    auto discover = [&](uint32_t p) {
      if (cur.contains(p) || pending.contains(p) || p == x) return;
      pending.add(p);
      if (step) step->forced.push_back(p);
    };

    auto row_x = t.row(x);
    // row x over cur ∪ {x} — covers the (x,x) cell exactly once
    cur.for_each([&](uint32_t c) {
      ++checked;
      discover(row_x[c]);
    });
    ++checked;
    discover(row_x[x]);
    // column x over cur
    cur.for_each([&](uint32_t c) {
      ++checked;
      discover(t.entry(c, x));
    });

    cur.add(x);
  }
}

}  // namespace

ClosureTrace closure_incremental(const CayleyTable& t, const IndexSet& base, const IndexSet& adds,
                                 BaseCheck check) {
  if (check == BaseCheck::strict) {
    if (!is_closed(t, base))
      throw error(errc::precondition_violated, "closure_incremental: base set is not closed");
    if (base.intersects(adds))
      throw error(errc::precondition_violated, "closure_incremental: adds overlaps the base");
  }
  ClosureTrace trace;
  IndexSet cur = base;
  IndexSet pending = adds;
  run_scan(t, cur, pending, &trace, trace.entries_checked);
  trace.result = std::move(cur);
  return trace;
}

IndexSet closure_extend(const CayleyTable& t, const IndexSet& base, uint32_t x,
                        uint64_t& entries_checked) {
  IndexSet cur = base;
  IndexSet pending(t.n());
  pending.add(x);
  run_scan(t, cur, pending, nullptr, entries_checked);
  return cur;
}

}  // namespace subsemi
