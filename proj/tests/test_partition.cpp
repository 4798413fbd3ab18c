#include <doctest.h>

#include "csft/partition.hpp"
#include "oracles.hpp"

using namespace csft;

TEST_SUITE("partition") {
  TEST_CASE("enumeration matches the pentagonal recurrence") {
    const auto expected = oracle::partition_counts(28);
    for (int n = 1; n <= 20; ++n) {
      CHECK(BigInt(enumerate_partitions(n).size()) == expected[n]);
    }
    CHECK(PartitionCatalog::of(28).count() == 3718);
    CHECK(expected[28] == 3718);
  }

  TEST_CASE("enumeration is strictly decreasing lex") {
    const auto all = enumerate_partitions(8);
    CHECK(all.front() == Partition{8});
    CHECK(all.back() == Partition{1, 1, 1, 1, 1, 1, 1, 1});
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(DecreasingLex{}(all[i - 1], all[i]));
    CHECK(enumerate_partitions(0).size() == 1);
  }

  TEST_CASE("construction normalizes and rejects bad parts") {
    CHECK(Partition({1, 3, 2}).parts()[0] == 3);
    CHECK(Partition({2, 1, 2}) == Partition{2, 2, 1});
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({-1}), std::invalid_argument);
    const Partition p{3, 2, 2, 1};
    CHECK(p.size() == 8);
    CHECK(p.length() == 4);
    CHECK(p.multiplicity(2) == 2);
    CHECK(p.multiplicity(5) == 0);
    CHECK(p.part_product() == 12);
    CHECK(p.to_string() == "[3,2,2,1]");
  }

  TEST_CASE("shorthand parsing") {
    CHECK(Partition::parse("(3,2^7)") == Partition({3, 2, 2, 2, 2, 2, 2, 2}));
    CHECK(Partition::parse("3,2^7").size() == 17);
    CHECK(Partition::parse("[1,4,2]") == Partition{4, 2, 1});
    CHECK(Partition::parse("[]").empty());
    CHECK(Partition::parse("2^0,1") == Partition{1});
    CHECK_THROWS_AS(Partition::parse("3,,2"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::parse("3,x"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::parse("0"), std::invalid_argument);
  }

  TEST_CASE("coarsenings agree with set partitions of the parts") {
    for (int n = 1; n <= 9; ++n) {
      for (const auto& lambda : enumerate_partitions(n)) {
        const std::vector<int> parts(lambda.parts().begin(), lambda.parts().end());
        const auto expected = oracle::coarsenings(parts);
        const auto got = coarsenings(lambda);
        REQUIRE(got.size() == expected.size());
        for (const auto& mu : got) {
          CHECK(expected.count(std::vector<int>(mu.parts().begin(), mu.parts().end())) == 1);
        }
        for (std::size_t i = 1; i < got.size(); ++i) CHECK(DecreasingLex{}(got[i - 1], got[i]));
      }
    }
  }

  TEST_CASE("refinement agrees with coarsening") {
    for (int n = 1; n <= 8; ++n) {
      const auto all = enumerate_partitions(n);
      for (const auto& lambda : all) {
        const std::vector<int> parts(lambda.parts().begin(), lambda.parts().end());
        const auto above = oracle::coarsenings(parts);
        for (const auto& mu : all) {
          const bool expected = above.count(std::vector<int>(mu.parts().begin(), mu.parts().end())) == 1;
          CHECK(refines(lambda, mu) == expected);
        }
      }
    }
    CHECK(refines(Partition{2, 2, 1, 1}, Partition{4, 2}));
    CHECK_FALSE(refines(Partition{3, 3}, Partition{4, 2}));
    CHECK_FALSE(refines(Partition{2, 1}, Partition{4}));
  }

  TEST_CASE("z values") {
    CHECK(z_value(Partition{1, 1, 1}) == 6);
    CHECK(z_value(Partition{3}) == 3);
    CHECK(z_value(Partition{2, 2, 1}) == 8);
    // sum over lambda of n!/z_lambda counts permutations
    for (int n = 1; n <= 8; ++n) {
      Rational total = 0;
      for (const auto& lambda : enumerate_partitions(n)) total += Rational(1) / Rational(z_value(lambda));
      CHECK(total == 1);
    }
  }

  TEST_CASE("catalog lookup") {
    const auto& cat = PartitionCatalog::of(6);
    CHECK(&cat == &PartitionCatalog::of(6));
    CHECK(cat.count() == 11);
    for (std::size_t i = 0; i < cat.count(); ++i) CHECK(cat.index_of(cat.at(i)) == i);
    CHECK_THROWS_AS(cat.index_of(Partition{5}), std::out_of_range);
  }
}
