#include <doctest.h>

#include "csft/partition.hpp"
#include "csft/tabloid.hpp"
#include "oracles.hpp"

using namespace csft;

namespace {

std::vector<int> as_vector(const Partition& p) { return {p.parts().begin(), p.parts().end()}; }

}  // namespace

TEST_SUITE("tabloid") {
  TEST_CASE("the (2,2,1,1) tabloids of shape (4,2)") {
    const Partition content{2, 2, 1, 1}, shape{4, 2};
    const auto all = enumerate_brick_tabloids(content, shape);
    REQUIRE(all.size() == 4);
    std::multiset<BigInt> weights;
    for (const auto& b : all) weights.insert(b.weight());
    CHECK(weights == std::multiset<BigInt>{2, 2, 2, 4});
    CHECK(weight_sum(content, shape) == 10);
    CHECK(ordered_count(content, shape) == 3);
  }

  TEST_CASE("weights and ordered counts match brute force") {
    for (int n = 1; n <= 8; ++n) {
      const auto all = enumerate_partitions(n);
      for (const auto& lambda : all) {
        for (const auto& mu : all) {
          const auto tally = oracle::tabloids(as_vector(lambda), as_vector(mu));
          CHECK(weight_sum(lambda, mu) == tally.total);
          CHECK(weight_sum_by_enumeration(lambda, mu) == tally.total);
          CHECK(enumerate_brick_tabloids(lambda, mu).size() == tally.weights.size());
          CHECK(ordered_count(lambda, mu) == oracle::ordered_tabloids(as_vector(lambda), as_vector(mu)));
        }
      }
    }
  }

  TEST_CASE("only refinements carry tabloids") {
    const auto all = enumerate_partitions(7);
    for (const auto& lambda : all) {
      for (const auto& mu : all) {
        CHECK((weight_sum(lambda, mu) != 0) == refines(lambda, mu));
      }
    }
  }

  TEST_CASE("degenerate inputs") {
    CHECK(enumerate_brick_tabloids(Partition{}, Partition{}).size() == 1);
    CHECK(weight_sum(Partition{3}, Partition{3}) == 3);
    CHECK(weight_sum(Partition{1, 1, 1}, Partition{3}) == 1);
    CHECK(weight_sum(Partition{3}, Partition{2, 1}) == 0);
    CHECK_THROWS_AS(enumerate_brick_tabloids(Partition{2}, Partition{3}), std::invalid_argument);
  }
}
