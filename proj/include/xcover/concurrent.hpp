#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace xcover {

// Append-only arena with stable element addresses. Elements live in chunks of
// doubling size, so an index stays valid while other threads keep appending.
// Readers may access any index they obtained through a synchronizing
// operation (a mutex, a future, a join).
template <class T>
class ChunkedArena {
 public:
  ChunkedArena() = default;
  ChunkedArena(const ChunkedArena&) = delete;
  ChunkedArena& operator=(const ChunkedArena&) = delete;
  ~ChunkedArena() {
    for (auto& c : chunks_) delete[] c.load(std::memory_order_relaxed);
  }

  // Reserves a default-constructed slot and returns its index.
  std::uint32_t allocate() {
    const std::uint32_t i = size_.fetch_add(1, std::memory_order_relaxed);
    const auto [chunk, offset] = locate(i);
    if (chunks_[chunk].load(std::memory_order_acquire) == nullptr) {
      std::lock_guard lock(grow_);
      if (chunks_[chunk].load(std::memory_order_relaxed) == nullptr)
        chunks_[chunk].store(new T[capacity(chunk)], std::memory_order_release);
    }
    return i;
  }

  T& operator[](std::uint32_t i) {
    const auto [chunk, offset] = locate(i);
    return chunks_[chunk].load(std::memory_order_acquire)[offset];
  }
  const T& operator[](std::uint32_t i) const {
    const auto [chunk, offset] = locate(i);
    return chunks_[chunk].load(std::memory_order_acquire)[offset];
  }

  std::uint32_t size() const noexcept { return size_.load(std::memory_order_acquire); }

 private:
  static constexpr unsigned kBaseBits = 10;
  static constexpr unsigned kMaxChunks = 32 - kBaseBits;

  static std::size_t capacity(unsigned chunk) { return std::size_t{1} << (kBaseBits + chunk); }

  static std::pair<unsigned, std::size_t> locate(std::uint32_t i) {
    const std::uint64_t q = (std::uint64_t{i} >> kBaseBits) + 1;
    const auto chunk = static_cast<unsigned>(std::bit_width(q) - 1);
    const std::uint64_t start = ((std::uint64_t{1} << chunk) - 1) << kBaseBits;
    return {chunk, static_cast<std::size_t>(i - start)};
  }

  std::array<std::atomic<T*>, kMaxChunks> chunks_{};
  std::atomic<std::uint32_t> size_{0};
  std::mutex grow_;
};

// Hash map split into independently locked shards.
template <class Key, class Value, class Hash = std::hash<Key>, class Eq = std::equal_to<Key>>
class ShardedMap {
 public:
  std::optional<Value> find(const Key& key) const {
    const std::size_t h = Hash{}(key);
    const Shard& s = shards_[shard_of(h)];
    std::lock_guard lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }

  // Inserts make() under the shard lock unless the key is already present.
  // Returns the stored value either way.
  template <class Make>
  Value find_or_insert(const Key& key, Make&& make) {
    const std::size_t h = Hash{}(key);
    Shard& s = shards_[shard_of(h)];
    std::lock_guard lock(s.mutex);
    auto it = s.map.find(key);
    if (it != s.map.end()) return it->second;
    Value v = make();
    s.map.emplace(key, v);
    return v;
  }

  void insert_or_assign(const Key& key, Value value) {
    const std::size_t h = Hash{}(key);
    Shard& s = shards_[shard_of(h)];
    std::lock_guard lock(s.mutex);
    s.map.insert_or_assign(key, std::move(value));
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& s : shards_) {
      std::lock_guard lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

  void clear() {
    for (auto& s : shards_) {
      std::lock_guard lock(s.mutex);
      s.map.clear();
    }
  }

 private:
  static constexpr std::size_t kShards = 64;
  static std::size_t shard_of(std::size_t h) { return (h ^ (h >> 29)) % kShards; }

  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<Key, Value, Hash, Eq> map;
  };
  std::array<Shard, kShards> shards_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace xcover
