#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "triwalk/types.hpp"

namespace triwalk {

// Open-addressing hash map from slot keys to amplitudes. The per-step field
// passes are dominated by lookups and rebuilds, so this is kept flat and
// allocation-free on the hot path.
class SlotMap {
 public:
  SlotMap() { rehash(64); }

  explicit SlotMap(std::size_t expected) { rehash(capacity_for(expected)); }

  std::size_t size() const { return size_; }

  bool contains(std::uint64_t key) const { return find(key) != npos; }

  Amplitude get(std::uint64_t key) const {
    std::size_t i = find(key);
    return i == npos ? Amplitude{0.0, 0.0} : vals_[i];
  }

  void put(std::uint64_t key, Amplitude v) {
    if ((used_ + 1) * 8 > keys_.size() * 5) rehash(keys_.size() * 2);
    std::size_t mask = keys_.size() - 1;
    std::size_t i = mix(key) & mask;
    std::size_t first_tomb = npos;
    for (;;) {
      std::uint64_t k = keys_[i];
      if (k == key) {
        vals_[i] = v;
        return;
      }
      if (k == kEmpty) {
        if (first_tomb != npos) {
          i = first_tomb;
        } else {
          ++used_;
        }
        keys_[i] = key;
        vals_[i] = v;
        ++size_;
        return;
      }
      if (k == kTomb && first_tomb == npos) first_tomb = i;
      i = (i + 1) & mask;
    }
  }

  bool erase(std::uint64_t key) {
    std::size_t i = find(key);
    if (i == npos) return false;
    keys_[i] = kTomb;
    --size_;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] < kTomb) f(keys_[i], vals_[i]);
    }
  }

  void clear_and_reserve(std::size_t expected) {
    keys_.clear();
    vals_.clear();
    size_ = used_ = 0;
    rehash(capacity_for(expected));
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  static constexpr std::uint64_t kTomb = ~std::uint64_t{0} - 1;
  static constexpr std::size_t npos = ~std::size_t{0};

  static std::size_t mix(std::uint64_t k) {
    k *= 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(k >> 29);
  }

  static std::size_t capacity_for(std::size_t expected) {
    std::size_t cap = 64;
    while (cap * 5 < (expected + 1) * 8) cap *= 2;
    return cap;
  }

  std::size_t find(std::uint64_t key) const {
    std::size_t mask = keys_.size() - 1;
    std::size_t i = mix(key) & mask;
    for (;;) {
      std::uint64_t k = keys_[i];
      if (k == key) return i;
      if (k == kEmpty) return npos;
      i = (i + 1) & mask;
    }
  }

  void rehash(std::size_t new_cap) {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<Amplitude> old_vals = std::move(vals_);
    keys_.assign(new_cap, kEmpty);
    vals_.assign(new_cap, Amplitude{});
    size_ = used_ = 0;
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
      if (old_keys[i] < kTomb) put(old_keys[i], old_vals[i]);
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<Amplitude> vals_;
  std::size_t size_ = 0;
  std::size_t used_ = 0;  // live + tombstones
};

// Open-addressing map from arbitrary 64-bit keys to a small trivially
// copyable value. Unlike SlotMap it keeps an explicit per-bucket state, so
// every key value (including ~0) is usable; used for the lattice cell and
// vertex indices, which grow to millions of entries on long low-threshold
// runs.
template <class V>
class OpenMap {
 public:
  OpenMap() { buckets_.assign(64, Bucket{}); }

  std::size_t size() const { return size_; }

  const V* find(std::uint64_t key) const {
    std::size_t i = probe(key);
    return i == npos ? nullptr : &buckets_[i].val;
  }

  void put(std::uint64_t key, V v) {
    if ((used_ + 1) * 8 > buckets_.size() * 5) rehash(buckets_.size() * 2);
    std::size_t mask = buckets_.size() - 1;
    std::size_t i = mix(key) & mask;
    std::size_t first_tomb = npos;
    for (;;) {
      Bucket& b = buckets_[i];
      if (b.state == kLive && b.key == key) {
        b.val = v;
        return;
      }
      if (b.state == kFree) {
        std::size_t j = i;
        if (first_tomb != npos) {
          j = first_tomb;
        } else {
          ++used_;
        }
        buckets_[j] = Bucket{key, v, kLive};
        ++size_;
        return;
      }
      if (b.state == kTomb && first_tomb == npos) first_tomb = i;
      i = (i + 1) & mask;
    }
  }

  bool erase(std::uint64_t key) {
    std::size_t i = probe(key);
    if (i == npos) return false;
    buckets_[i].state = kTomb;
    --size_;
    return true;
  }

 private:
  static constexpr std::uint8_t kFree = 0, kLive = 1, kTomb = 2;
  static constexpr std::size_t npos = ~std::size_t{0};

  struct Bucket {
    std::uint64_t key = 0;
    V val{};
    std::uint8_t state = kFree;
  };

  static std::size_t mix(std::uint64_t k) {
    k *= 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(k >> 29);
  }

  std::size_t probe(std::uint64_t key) const {
    std::size_t mask = buckets_.size() - 1;
    std::size_t i = mix(key) & mask;
    for (;;) {
      const Bucket& b = buckets_[i];
      if (b.state == kLive && b.key == key) return i;
      if (b.state == kFree) return npos;
      i = (i + 1) & mask;
    }
  }

  void rehash(std::size_t new_cap) {
    std::vector<Bucket> old = std::move(buckets_);
    buckets_.assign(new_cap, Bucket{});
    size_ = used_ = 0;
    for (const Bucket& b : old)
      if (b.state == kLive) put(b.key, b.val);
  }

  std::vector<Bucket> buckets_;
  std::size_t size_ = 0;
  std::size_t used_ = 0;  // live + tombstones
};

}  // namespace triwalk
