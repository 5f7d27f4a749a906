#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace costrat::detail {

/// Memo table with shared reads and exclusive inserts. Values are computed
/// outside the lock; concurrent computations of the same key agree.
template <class Key, class Value, class Hash = std::hash<Key>>
class ConcurrentCache {
 public:
  template <class Compute>
  Value get_or_compute(const Key& key, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    Value value = compute();
    std::unique_lock lock(mutex_);
    return map_.try_emplace(key, std::move(value)).first->second;
  }

  void insert(const Key& key, Value value) {
    std::unique_lock lock(mutex_);
    map_.insert_or_assign(key, std::move(value));
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

  /// Snapshot of the contents, in unspecified order.
  std::vector<std::pair<Key, Value>> entries() const {
    std::shared_lock lock(mutex_);
    return {map_.begin(), map_.end()};
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, Value, Hash> map_;
};

template <std::size_t K>
struct ArrayHash {
  std::size_t operator()(const std::array<std::int16_t, K>& a) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : a) {
      h ^= static_cast<std::uint16_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using CgKey = std::array<std::int16_t, 6>;
using SixJKey = std::array<std::int16_t, 6>;
using NineJKey = std::array<std::int16_t, 9>;

using CgCache = ConcurrentCache<CgKey, double, ArrayHash<6>>;
using SixJCache = ConcurrentCache<SixJKey, double, ArrayHash<6>>;
using NineJCache = ConcurrentCache<NineJKey, double, ArrayHash<9>>;

CgCache& cg_cache();
SixJCache& six_j_cache();
NineJCache& nine_j_cache();
// Signed values keyed by the symbol as written; not persisted.
NineJCache& nine_j_as_written_cache();

}  // namespace costrat::detail
