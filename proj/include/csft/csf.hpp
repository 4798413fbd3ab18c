#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csft/numeric.hpp"
#include "csft/partition.hpp"
#include "csft/sympoly.hpp"
#include "csft/tree.hpp"

namespace csft {

/// Largest tree the partition-indexed routines accept.
inline constexpr int kMaxVertices = 28;

/// Connected-partition counts b_lambda of a fixed tree, indexed by the
/// partitions of n in decreasing lexicographic order.
class BTable {
 public:
  BTable(int n, std::vector<std::uint64_t> counts);

  int degree() const { return n_; }
  const PartitionCatalog& catalog() const { return *catalog_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t at(const Partition& lambda) const;
  std::uint64_t at_index(std::size_t index) const { return counts_[index]; }
  std::uint64_t total() const;

  /// Types with no connected partition, finest first (increasing lex).
  std::vector<Partition> missing_types() const;
  std::optional<Partition> first_missing() const;
  bool is_cpet() const { return !first_missing().has_value(); }

  nlohmann::json to_json() const;
  friend bool operator==(const BTable& a, const BTable& b) { return a.n_ == b.n_ && a.counts_ == b.counts_; }

 private:
  int n_;
  const PartitionCatalog* catalog_;
  std::vector<std::uint64_t> counts_;
};

struct EposReport {
  bool e_positive = false;
  std::map<Partition, BigInt, DecreasingLex> coefficients;
  /// First negative coefficient: the probe shape first, then decreasing lex.
  std::optional<std::pair<Partition, BigInt>> first_negative;
  std::vector<Partition> missing_types;

  SymPoly as_sympoly() const;
  nlohmann::json to_json() const;
};

/// sink(T, j) for j = 1..n; index 0 is unused and zero.
struct SinkTable {
  std::vector<BigInt> sinks;

  const BigInt& at(int j) const { return sinks.at(j); }
  BigInt total() const;
  nlohmann::json to_json() const;
  friend bool operator==(const SinkTable&, const SinkTable&) = default;
};

/// For every lambda of a degree, the coarsenings mu with their signed
/// weights (-1)^{l(lambda)-l(mu)} w(B_{lambda,mu}). Entries are built on
/// first request and then never change, so one instance is shared by all
/// threads scanning trees of that degree.
class WeightCache {
 public:
  struct Term {
    std::uint32_t mu;  // catalog index
    std::int64_t signed_weight;
  };

  static const WeightCache& of(int n);
  explicit WeightCache(int n);

  const PartitionCatalog& catalog() const { return catalog_; }
  std::span<const Term> terms(std::size_t lambda_index) const;

 private:
  const PartitionCatalog& catalog_;
  std::unique_ptr<std::once_flag[]> ready_;
  std::unique_ptr<std::vector<Term>[]> terms_;
};

/// Rooted dynamic program over (open block size, closed block partition).
BTable b_table(const Tree& t);
/// Tally over all 2^{n-1} edge subsets; refuses n > 24.
BTable b_table_bruteforce(const Tree& t);

SymPoly p_expansion(const BTable& b);
SymPoly p_expansion(const Tree& t);

BigInt e_coefficient(const BTable& b, const Partition& lambda);
BigInt e_coefficient(const Tree& t, const Partition& lambda);

EposReport e_expansion(const BTable& b);
EposReport e_expansion(const Tree& t);
/// The e-expansion by changing basis on the p-expansion.
SymPoly e_expansion_via_p(const Tree& t);

/// Ceiling bound that b_lambda must meet for [e_lambda] to be nonnegative.
BigInt positivity_threshold(const BTable& b, const Partition& lambda);

/// (3,2^{(n-3)/2}) for odd n >= 3, (2^{n/2}) for even n >= 2.
std::optional<Partition> probe_partition(int n);
std::optional<std::pair<Partition, BigInt>> first_negative(const BTable& b);

SinkTable sink_counts(const BTable& b);
SinkTable sink_counts(const Tree& t);
/// sink(T, j) from the length-j coefficients only.
BigInt sink_count(const BTable& b, int j);
/// Orientation enumeration; refuses n > 22.
SinkTable sink_counts_bruteforce(const Tree& t);

/// [e_{(s,t^k)}] using only partitions of the shape (s+it, t*lambda).
/// Requires s, t >= 2, n = s + k t and gcd(s,t) = 1, s > k t, or t = m s
/// with m >= 2; throws std::invalid_argument otherwise.
BigInt coefficient_stk(const BTable& b, int s, int t, int k);
/// sum_{lambda |- k} (-1)^{k-l} t^l b_{(s, t lambda)}; negative certifies
/// that the tree is not e-positive. Requires gcd(s,t) = 1 or s > k t.
BigInt reduced_stk_sum(const BTable& b, int s, int t, int k);

}  // namespace csft
