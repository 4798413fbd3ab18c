#pragma once

// Partitions of n <= 28 packed as multiplicity vectors in 128 bits, so that
// the union of two partitions is integer addition. r_1 takes 5 bits and
// r_k (k >= 2) 4 bits; the bits from kOpenShift hold an extra "open block"
// size used by the connected-partition dynamic program.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "csft/partition.hpp"

namespace csft::packed {

using Key = unsigned __int128;

inline constexpr int kOpenShift = 113;
inline constexpr Key kClosedMask = (Key(1) << kOpenShift) - 1;

constexpr int offset(int part) { return part == 1 ? 0 : 5 + 4 * (part - 2); }
constexpr int width(int part) { return part == 1 ? 5 : 4; }
constexpr Key unit(int part) { return Key(1) << offset(part); }
constexpr Key open(int size) { return Key(size) << kOpenShift; }
constexpr int open_size(Key key) { return static_cast<int>(key >> kOpenShift); }

inline Key pack(const Partition& lambda) {
  Key key = 0;
  for (int p : lambda.parts()) key += unit(p);
  return key;
}

inline Partition unpack(Key key, int max_part) {
  std::vector<int> parts;
  for (int k = max_part; k >= 1; --k) {
    const int r = static_cast<int>((key >> offset(k)) & ((Key(1) << width(k)) - 1));
    parts.insert(parts.end(), r, k);
  }
  return Partition(std::move(parts));
}

inline std::uint64_t hash(Key key) {
  std::uint64_t x = static_cast<std::uint64_t>(key) ^ (static_cast<std::uint64_t>(key >> 64) * 0x9E3779B97F4A7C15ull);
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 29;
  return x;
}

/// Open-addressing accumulator Key -> count. Key 0 marks an empty slot, so
/// callers must never insert it.
class CountMap {
 public:
  struct Entry {
    Key key;
    std::uint64_t count;
  };

  explicit CountMap(std::size_t expected = 16) { reset(expected); }

  void reset(std::size_t expected) {
    std::size_t capacity = 16;
    while (capacity < 2 * expected) capacity <<= 1;
    keys_.assign(capacity, 0);
    counts_.assign(capacity, 0);
    size_ = 0;
  }

  void add(Key key, std::uint64_t count) {
    if (2 * (size_ + 1) > keys_.size()) grow();
    insert(key, count);
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] != 0) out.push_back({keys_[i], counts_[i]});
    }
    return out;
  }

 private:
  void insert(Key key, std::uint64_t count) {
    const std::size_t mask = keys_.size() - 1;
    std::size_t slot = hash(key) & mask;
    while (keys_[slot] != 0 && keys_[slot] != key) slot = (slot + 1) & mask;
    if (keys_[slot] == 0) {
      keys_[slot] = key;
      ++size_;
    }
    counts_[slot] += count;
  }

  void grow() {
    std::vector<Key> keys = std::move(keys_);
    std::vector<std::uint64_t> counts = std::move(counts_);
    keys_.assign(keys.size() * 2, 0);
    counts_.assign(keys.size() * 2, 0);
    size_ = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] != 0) insert(keys[i], counts[i]);
    }
  }

  std::vector<Key> keys_;
  std::vector<std::uint64_t> counts_;
  std::size_t size_ = 0;
};

/// Packed key -> catalog index for the partitions of one n.
class KeyIndex {
 public:
  explicit KeyIndex(const PartitionCatalog& catalog) {
    sorted_.reserve(catalog.count());
    for (std::size_t i = 0; i < catalog.count(); ++i) {
      sorted_.push_back({pack(catalog.at(i)), static_cast<std::uint32_t>(i)});
    }
    std::sort(sorted_.begin(), sorted_.end(), [](const Slot& a, const Slot& b) { return a.key < b.key; });
  }

  std::uint32_t index_of(Key key) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), key,
                               [](const Slot& s, Key k) { return s.key < k; });
    return it->index;
  }

 private:
  struct Slot {
    Key key;
    std::uint32_t index;
  };
  std::vector<Slot> sorted_;
};

}  // namespace csft::packed
