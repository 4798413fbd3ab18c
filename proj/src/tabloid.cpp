#include "csft/tabloid.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace csft {

namespace {

void require_same_total(const Partition& content, const Partition& shape) {
  if (content.size() != shape.size()) {
    throw std::invalid_argument("content " + content.to_string() + " and shape " +
                                shape.to_string() + " have different totals");
  }
}

// Bricks remaining, as counts per distinct content value (values decreasing).
struct BrickPool {
  std::vector<int> values;
  std::vector<int> counts;
};

BrickPool make_pool(const Partition& content) {
  BrickPool pool;
  for (int p : content.parts()) {
    if (!pool.values.empty() && pool.values.back() == p) {
      ++pool.counts.back();
    } else {
      pool.values.push_back(p);
      pool.counts.push_back(1);
    }
  }
  return pool;
}

// Calls visit(taken) for each sub-multiset of `available` whose lengths sum
// to `target`.
void for_each_row_fill(const std::vector<int>& values, const std::vector<int>& available,
                       int target, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> taken(values.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t column, int left) {
    if (left == 0) {
      visit(taken);
      return;
    }
    if (column == values.size()) return;
    const int most = std::min(available[column], left / values[column]);
    for (int c = most; c >= 0; --c) {
      taken[column] = c;
      rec(column + 1, left - c * values[column]);
    }
    taken[column] = 0;
  };
  rec(0, target);
}

// Sum over all orderings of a row's bricks of the last brick's length.
BigInt row_weight(const std::vector<int>& values, const std::vector<int>& taken) {
  int total = 0;
  for (int c : taken) total += c;
  BigInt sum = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (taken[j] == 0) continue;
    BigInt arrangements = factorial(total - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      arrangements /= factorial(taken[i] - (i == j ? 1 : 0));
    }
    sum += arrangements * values[j];
  }
  return sum;
}

// Row-by-row recursion memoized on (row, remaining counts). `row_factor`
// gives the contribution of putting `taken` into `row` given `available`.
class RowConvolution {
 public:
  using Factor = std::function<BigInt(const std::vector<int>& available, const std::vector<int>& taken)>;

  RowConvolution(const Partition& content, const Partition& shape, Factor factor)
      : pool_(make_pool(content)), rows_(shape.parts().begin(), shape.parts().end()),
        factor_(std::move(factor)) {}

  BigInt run() { return from(0, pool_.counts); }

 private:
  BigInt from(std::size_t row, const std::vector<int>& available) {
    if (row == rows_.size()) return 1;
    auto key = std::make_pair(row, available);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    for_each_row_fill(pool_.values, available, rows_[row], [&](const std::vector<int>& taken) {
      std::vector<int> left(available);
      for (std::size_t i = 0; i < left.size(); ++i) left[i] -= taken[i];
      BigInt rest = from(row + 1, left);
      if (rest != 0) total += factor_(available, taken) * rest;
    });
    memo_.emplace(std::move(key), total);
    return total;
  }

  BrickPool pool_;
  std::vector<int> rows_;
  Factor factor_;
  std::map<std::pair<std::size_t, std::vector<int>>, BigInt> memo_;
};

}  // namespace

BigInt BrickTabloid::weight() const {
  BigInt w = 1;
  for (const auto& row : rows) w *= row.back();
  return w;
}

std::vector<BrickTabloid> enumerate_brick_tabloids(const Partition& content, const Partition& shape) {
  require_same_total(content, shape);
  BrickPool pool = make_pool(content);
  std::vector<BrickTabloid> out;
  std::vector<std::vector<int>> rows(shape.length());

  std::function<void(std::size_t, int)> fill = [&](std::size_t row, int left) {
    if (row == rows.size()) {
      out.push_back(BrickTabloid{shape, content, rows});
      return;
    }
    if (left == 0) {
      fill(row + 1, row + 1 < rows.size() ? shape[row + 1] : 0);
      return;
    }
    for (std::size_t v = 0; v < pool.values.size(); ++v) {
      if (pool.counts[v] == 0 || pool.values[v] > left) continue;
      --pool.counts[v];
      rows[row].push_back(pool.values[v]);
      fill(row, left - pool.values[v]);
      rows[row].pop_back();
      ++pool.counts[v];
    }
  };
  if (rows.empty()) {
    out.push_back(BrickTabloid{shape, content, {}});
  } else {
    fill(0, shape[0]);
  }
  return out;
}

BigInt weight_sum(const Partition& content, const Partition& shape) {
  require_same_total(content, shape);
  const BrickPool pool = make_pool(content);
  return RowConvolution(content, shape, [&](const std::vector<int>&, const std::vector<int>& taken) {
           return row_weight(pool.values, taken);
         }).run();
}

BigInt weight_sum_by_enumeration(const Partition& content, const Partition& shape) {
  BigInt total = 0;
  for (const auto& t : enumerate_brick_tabloids(content, shape)) total += t.weight();
  return total;
}

BigInt ordered_count(const Partition& content, const Partition& shape) {
  require_same_total(content, shape);
  // Labeled bricks of equal length are distinguishable: choose which ones
  // land in this row.
  return RowConvolution(content, shape, [](const std::vector<int>& available, const std::vector<int>& taken) {
           BigInt ways = 1;
           for (std::size_t i = 0; i < taken.size(); ++i) ways *= binomial(available[i], taken[i]);
           return ways;
         }).run();
}

}  // namespace csft
