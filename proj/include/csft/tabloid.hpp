#pragma once

#include <vector>

#include "csft/numeric.hpp"
#include "csft/partition.hpp"

namespace csft {

/// A Young diagram of `shape` whose rows are tiled by bricks with lengths
/// forming `content`. Rows follow the shape's canonical order.
struct BrickTabloid {
  Partition shape;
  Partition content;
  std::vector<std::vector<int>> rows;

  /// Product of the last brick length in each row.
  BigInt weight() const;

  friend bool operator==(const BrickTabloid&, const BrickTabloid&) = default;
};

/// Every distinct tabloid of the given shape and content. Throws
/// std::invalid_argument when the totals differ.
std::vector<BrickTabloid> enumerate_brick_tabloids(const Partition& content, const Partition& shape);

/// w(B) summed over all tabloids, by row-by-row convolution over the
/// remaining brick multiset.
BigInt weight_sum(const Partition& content, const Partition& shape);

/// The same weight sum by explicit enumeration.
BigInt weight_sum_by_enumeration(const Partition& content, const Partition& shape);

/// Number of ordered brick tabloids: labeled bricks distributed to rows so
/// each row's lengths sum to the row length.
BigInt ordered_count(const Partition& content, const Partition& shape);

}  // namespace csft
