#include "csft/partition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace csft {

BigInt from_int128(__int128 value) {
  const bool negative = value < 0;
  unsigned __int128 magnitude = negative ? -static_cast<unsigned __int128>(value)
                                         : static_cast<unsigned __int128>(value);
  BigInt result = static_cast<std::uint64_t>(magnitude >> 64);
  result <<= 64;
  result += static_cast<std::uint64_t>(magnitude);
  return negative ? BigInt(-result) : result;
}

BigInt factorial(int n) {
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw std::invalid_argument("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts)) {}

int Partition::multiplicity(int k) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

BigInt Partition::part_product() const {
  BigInt product = 1;
  for (int p : parts_) product *= p;
  return product;
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  out += ']';
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_count(std::string_view s, std::string_view whole, int minimum) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < minimum) {
    throw std::invalid_argument("malformed partition '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Partition Partition::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && (s.front() == '[' || s.front() == '(')) {
    const char close = s.front() == '[' ? ']' : ')';
    if (s.size() < 2 || s.back() != close) {
      throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
    }
    s = trim(s.substr(1, s.size() - 2));
  }
  std::vector<int> parts;
  if (s.empty()) return Partition(parts);
  while (true) {
    const auto comma = s.find(',');
    std::string_view item = s.substr(0, comma);
    const auto caret = item.find('^');
    if (caret == std::string_view::npos) {
      parts.push_back(parse_count(item, text, 1));
    } else {
      const int part = parse_count(item.substr(0, caret), text, 1);
      // A zero exponent, as in (3,2^0), contributes nothing.
      const int reps = parse_count(item.substr(caret + 1), text, 0);
      parts.insert(parts.end(), reps, part);
    }
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_partitions: n must be nonnegative");
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> a{n};
  while (true) {
    out.emplace_back(a);
    // Rightmost part greater than one.
    int i = static_cast<int>(a.size()) - 1;
    int ones = 0;
    while (i >= 0 && a[i] == 1) {
      ++ones;
      --i;
    }
    if (i < 0) break;
    int remaining = ones + a[i];
    const int value = a[i] - 1;
    a.resize(i);
    while (remaining >= value) {
      a.push_back(value);
      remaining -= value;
    }
    if (remaining > 0) a.push_back(remaining);
  }
  return out;
}

namespace {

// Places the parts of lambda (largest first) into bins sized by mu.
class RefinementSearch {
 public:
  RefinementSearch(std::span<const int> parts, std::span<const int> bins)
      : parts_(parts.begin(), parts.end()), bins_(bins.begin(), bins.end()) {}

  bool run() { return place(0); }

 private:
  bool place(std::size_t index) {
    if (index == parts_.size()) return true;
    std::vector<int> key(bins_);
    std::sort(key.begin(), key.end());
    key.push_back(static_cast<int>(index));
    if (failed_.count(key)) return false;
    const int part = parts_[index];
    for (std::size_t b = 0; b < bins_.size(); ++b) {
      if (bins_[b] < part) continue;
      bool seen = false;
      for (std::size_t c = 0; c < b; ++c) seen = seen || bins_[c] == bins_[b];
      if (seen) continue;
      bins_[b] -= part;
      const bool ok = place(index + 1);
      bins_[b] += part;
      if (ok) return true;
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::vector<int> parts_;
  std::vector<int> bins_;
  std::set<std::vector<int>> failed_;
};

// Multiset of parts as (value, count) columns with the values decreasing.
struct Multiset {
  std::vector<int> values;
  std::vector<int> counts;
};

Multiset to_multiset(const Partition& lambda) {
  Multiset m;
  for (int p : lambda.parts()) {
    if (!m.values.empty() && m.values.back() == p) {
      ++m.counts.back();
    } else {
      m.values.push_back(p);
      m.counts.push_back(1);
    }
  }
  return m;
}

class CoarseningSearch {
 public:
  explicit CoarseningSearch(Multiset m) : values_(std::move(m.values)), start_(std::move(m.counts)) {}

  std::set<std::vector<int>> run() { return expand(start_); }

 private:
  // All block-sum multisets reachable from the remaining counts.
  const std::set<std::vector<int>>& expand(const std::vector<int>& counts) {
    if (auto it = memo_.find(counts); it != memo_.end()) return it->second;
    std::set<std::vector<int>> result;
    std::size_t lead = 0;
    while (lead < counts.size() && counts[lead] == 0) ++lead;
    if (lead == counts.size()) {
      result.insert(std::vector<int>{});
    } else {
      // The block holding one copy of the largest remaining part.
      std::vector<int> rest(counts);
      --rest[lead];
      std::vector<int> take(counts.size(), 0);
      choose_block(rest, take, 0, values_[lead], result);
    }
    return memo_.emplace(counts, std::move(result)).first->second;
  }

  void choose_block(const std::vector<int>& rest, std::vector<int>& take, std::size_t column,
                    int block_sum, std::set<std::vector<int>>& result) {
    if (column == rest.size()) {
      std::vector<int> remaining(rest);
      for (std::size_t i = 0; i < rest.size(); ++i) remaining[i] -= take[i];
      for (const auto& tail : expand(remaining)) {
        std::vector<int> blocks(tail);
        blocks.insert(std::upper_bound(blocks.begin(), blocks.end(), block_sum, std::greater<>()),
                      block_sum);
        result.insert(std::move(blocks));
      }
      return;
    }
    for (int c = 0; c <= rest[column]; ++c) {
      take[column] = c;
      choose_block(rest, take, column + 1, block_sum + c * values_[column], result);
    }
    take[column] = 0;
  }

  std::vector<int> values_;
  std::vector<int> start_;
  std::map<std::vector<int>, std::set<std::vector<int>>> memo_;
};

}  // namespace

bool refines(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) return false;
  if (lambda.length() < mu.length()) return false;
  return RefinementSearch(lambda.parts(), mu.parts()).run();
}

std::vector<Partition> coarsenings(const Partition& lambda) {
  std::vector<Partition> out;
  for (auto& blocks : CoarseningSearch(to_multiset(lambda)).run()) out.emplace_back(std::move(blocks));
  std::sort(out.begin(), out.end(), DecreasingLex{});
  return out;
}

BigInt z_value(const Partition& lambda) {
  BigInt z = 1;
  const Multiset m = to_multiset(lambda);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    for (int r = 0; r < m.counts[i]; ++r) z *= m.values[i];
    z *= factorial(m.counts[i]);
  }
  return z;
}

PartitionCatalog::PartitionCatalog(int n) : n_(n), partitions_(enumerate_partitions(n)) {
  for (std::size_t i = 0; i < partitions_.size(); ++i) index_.emplace(partitions_[i], i);
}

std::size_t PartitionCatalog::index_of(const Partition& lambda) const {
  auto it = index_.find(lambda);
  if (it == index_.end()) {
    throw std::out_of_range(lambda.to_string() + " is not a partition of " + std::to_string(n_));
  }
  return it->second;
}

const PartitionCatalog& PartitionCatalog::of(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PartitionCatalog>> catalogs;
  std::lock_guard lock(mutex);
  auto& slot = catalogs[n];
  if (!slot) slot = std::make_unique<PartitionCatalog>(n);
  return *slot;
}

}  // namespace csft
