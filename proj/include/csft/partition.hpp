#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csft/numeric.hpp"

namespace csft {

/// An integer partition stored in canonical weakly decreasing order.
///
/// Every coefficient map in the library is keyed by this form, so two
/// partitions compare equal exactly when their multisets of parts agree.
/// The natural ordering is lexicographic on the parts; catalogs and rendered
/// output list partitions of a fixed n in *decreasing* lexicographic order.
class Partition {
 public:
  Partition() = default;
  /// Sorts `parts` into decreasing order. Throws std::invalid_argument on a
  /// nonpositive part.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts);

  std::span<const int> parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  int size() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// Multiplicity of part `k`.
  int multiplicity(int k) const;
  /// Product of all parts.
  BigInt part_product() const;

  std::string to_string() const;

  /// Accepts "[4,2]", "(3,2^7)", "3,2^7" and "[]".
  static Partition parse(std::string_view text);

  /// Parts follow their canonical order, so this is lexicographic comparison.
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// Decreasing lexicographic order, the order used for all reports.
struct DecreasingLex {
  bool operator()(const Partition& a, const Partition& b) const { return a > b; }
};

/// Every partition of n, in decreasing lexicographic order.
std::vector<Partition> enumerate_partitions(int n);

/// True iff `lambda` is obtained by splitting the parts of `mu`.
bool refines(const Partition& lambda, const Partition& mu);

/// Every distinct mu that `lambda` refines, in decreasing lexicographic order.
std::vector<Partition> coarsenings(const Partition& lambda);

/// prod_k k^{r_k} r_k! where r_k is the multiplicity of k.
BigInt z_value(const Partition& lambda);

/// Dense indexing of the partitions of a fixed n, shared process-wide.
class PartitionCatalog {
 public:
  /// Built on first use for each n; the returned reference stays valid and
  /// read-only for the life of the process.
  static const PartitionCatalog& of(int n);

  explicit PartitionCatalog(int n);

  int degree() const { return n_; }
  std::size_t count() const { return partitions_.size(); }
  const Partition& at(std::size_t index) const { return partitions_[index]; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  /// Position of `lambda` in decreasing lexicographic order; throws
  /// std::out_of_range if `lambda` is not a partition of n.
  std::size_t index_of(const Partition& lambda) const;

 private:
  int n_;
  std::vector<Partition> partitions_;
  std::map<Partition, std::size_t> index_;
};

}  // namespace csft
