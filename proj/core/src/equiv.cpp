#include "subsemi/equiv.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "subsemi/closure.hpp"

namespace subsemi {

namespace {
struct SeqLess {
  bool operator()(const IndexSet& a, const IndexSet& b) const { return a.seq_compare(b) < 0; }
};
}  // namespace

EquivClasses::EquivClasses(const CayleyTable& t) {
  uint32_t n = t.n();
  _class_of.assign(n, 0);
  std::map<IndexSet, uint32_t, SeqLess> by_generated;
  for (uint32_t x = 0; x < n; ++x) {
    uint64_t scratch = 0;
    IndexSet gen = closure_extend(t, IndexSet(n), x, scratch);
    auto [it, fresh] = by_generated.emplace(std::move(gen), uint32_t(_members.size()));
    if (fresh) {
      _members.emplace_back();
      _generated.push_back(it->first);
    }
    _class_of[x] = it->second;
    _members[it->second].push_back(x);
  }
}

const EquivClasses& equiv_classes_cached(const CayleyTable& t) {
  struct Key {
    uint32_t n;
    uint64_t digest;
    bool operator<(const Key& o) const { return n != o.n ? n < o.n : digest < o.digest; }
  };
  static std::mutex mtx;
  static std::map<Key, std::unique_ptr<EquivClasses>> cache;

  uint64_t digest = 1469598103934665603ull;
  for (uint32_t v : t.entries()) {
    digest ^= v;
    digest *= 1099511628211ull;
  }
  Key key{t.n(), digest};

  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<EquivClasses>(t)).first;
  return *it->second;
}

}  // namespace subsemi
