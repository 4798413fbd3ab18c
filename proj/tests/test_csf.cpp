#include <doctest.h>

#include <random>

#include "csft/csf.hpp"
#include "oracles.hpp"

using namespace csft;

namespace {

std::vector<BigInt> random_point(std::mt19937& rng, int size) {
  std::uniform_int_distribution<int> dist(-3, 5);
  std::vector<BigInt> x;
  for (int i = 0; i < size; ++i) x.emplace_back(dist(rng));
  return x;
}

}  // namespace

TEST_SUITE("csf") {
  TEST_CASE("b-table agrees with connected set partitions") {
    for (int n = 1; n <= 9; ++n) {
      for (const auto& t : enumerate_free_trees(n)) {
        const BTable b = b_table(t);
        const auto expected = oracle::connected_partitions(t);
        for (std::size_t i = 0; i < b.counts().size(); ++i) {
          const auto& parts = b.catalog().at(i).parts();
          const auto it = expected.find(std::vector<int>(parts.begin(), parts.end()));
          CHECK(b.at_index(i) == (it == expected.end() ? 0 : it->second));
        }
        CHECK(b == b_table_bruteforce(t));
        CHECK(b.total() == (std::uint64_t{1} << (n - 1)));
      }
    }
  }

  TEST_CASE("b-table identities") {
    for (int n = 3; n <= 11; ++n) {
      for (const auto& t : enumerate_free_trees(n)) {
        const BTable b = b_table(t);
        CHECK(b.at(Partition{n}) == 1);
        CHECK(b.at(Partition{n - 1, 1}) == static_cast<std::uint64_t>(degree_stats(t).leaf_count));
        if (n >= 5) {
          CHECK(b.at(Partition{n - 2, 2}) == static_cast<std::uint64_t>(pendent_count(t, make_path(2))));
        }
      }
    }
    CHECK(b_table(make_path(2)).at(Partition{1, 1}) == 1);
    CHECK(b_table(make_path(3)).at(Partition{3}) == 1);
    CHECK(b_table(make_path(4)).at(Partition{5}) == 0);
  }

  TEST_CASE("cpet and missing types") {
    const BTable star = b_table(make_star(4));
    CHECK_FALSE(star.is_cpet());
    CHECK(star.first_missing() == Partition{2, 2, 1});
    CHECK(star.missing_types() == std::vector<Partition>{Partition{2, 2, 1}, Partition{3, 2}});
    CHECK(b_table(make_path(7)).is_cpet());
  }

  TEST_CASE("expansions agree with coloring sums") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 8; ++n) {
      for (const auto& t : enumerate_free_trees(n)) {
        const SymPoly p = p_expansion(t);
        const SymPoly e = e_expansion(t).as_sympoly();
        for (int trial = 0; trial < 2; ++trial) {
          const auto x = random_point(rng, n);
          const Rational value(oracle::chromatic_at(t, x));
          CHECK(oracle::evaluate(p, x) == value);
          CHECK(oracle::evaluate(e, x) == value);
        }
      }
    }
  }

  TEST_CASE("known expansions") {
    const EposReport claw = e_expansion(make_star(3));
    CHECK(claw.coefficients.at(Partition{4}) == 4);
    CHECK(claw.coefficients.at(Partition{3, 1}) == 5);
    CHECK(claw.coefficients.at(Partition{2, 2}) == -2);
    CHECK(claw.coefficients.at(Partition{2, 1, 1}) == 1);
    CHECK(claw.coefficients.at(Partition{1, 1, 1, 1}) == 0);
    CHECK_FALSE(claw.e_positive);
    CHECK(claw.first_negative->first == Partition{2, 2});
    CHECK(claw.first_negative->second == -2);
    const EposReport path = e_expansion(make_path(5));
    CHECK(path.e_positive);
    CHECK_FALSE(path.first_negative);
    CHECK(e_expansion_via_p(make_path(6)) == e_expansion(make_path(6)).as_sympoly());
    CHECK_THROWS_AS(e_coefficient(make_path(4), Partition{3}), std::invalid_argument);
  }

  TEST_CASE("probe coefficient comes first") {
    CHECK(probe_partition(7) == Partition{3, 2, 2});
    CHECK(probe_partition(8) == Partition{2, 2, 2, 2});
    CHECK_FALSE(probe_partition(1));
    const std::vector<int> legs{6, 4, 1, 1};
    const BTable b = b_table(make_spider(legs));
    CHECK(b.is_cpet());
    const auto neg = first_negative(b);
    REQUIRE(neg);
    CHECK(neg->first == Partition{3, 2, 2, 2, 2, 2});
    CHECK(neg->second == e_coefficient(b, neg->first));
    CHECK(neg->second < 0);
  }

  TEST_CASE("positivity threshold") {
    // [e_lambda] >= 0 iff b_lambda >= threshold
    for (int n = 4; n <= 9; ++n) {
      for (const auto& t : enumerate_free_trees(n)) {
        const BTable b = b_table(t);
        for (const auto& lambda : enumerate_partitions(n)) {
          const bool nonneg = e_coefficient(b, lambda) >= 0;
          CHECK(nonneg == (BigInt(b.at(lambda)) >= positivity_threshold(b, lambda)));
        }
      }
    }
  }

  TEST_CASE("sink counts agree with orientations") {
    for (int n = 1; n <= 10; ++n) {
      for (const auto& t : enumerate_free_trees(n)) {
        const SinkTable sinks = sink_counts(t);
        const auto expected = oracle::orientation_sinks(t);
        REQUIRE(sinks.sinks.size() == expected.size());
        for (int j = 1; j <= n; ++j) CHECK(sinks.at(j) == expected[j]);
        CHECK(sinks == sink_counts_bruteforce(t));
        CHECK(sinks.total() == BigInt(1) << (n - 1));
        if (n >= 2) CHECK(sink_count(b_table(t), 2) == expected[2]);
      }
    }
  }

  TEST_CASE("(s, t^k) coefficients") {
    for (int n = 7; n <= 11; ++n) {
      for (const auto& t : enumerate_free_trees(n)) {
        const BTable b = b_table(t);
        for (int s = 2; s <= n; ++s) {
          for (int tt = 2; tt <= n; ++tt) {
            if ((n - s) % tt != 0 || n == s) continue;
            const int k = (n - s) / tt;
            std::vector<int> parts{s};
            parts.insert(parts.end(), k, tt);
            const Partition shape(parts);
            const bool coprime = std::gcd(s, tt) == 1, dominant = s > k * tt;
            const bool multiple = tt % s == 0 && tt / s >= 2;
            if (coprime || dominant || multiple) {
              CHECK(coefficient_stk(b, s, tt, k) == e_coefficient(b, shape));
            } else {
              CHECK_THROWS_AS(coefficient_stk(b, s, tt, k), std::invalid_argument);
            }
            if ((coprime || dominant) && k >= 1) {
              // s times the reduced sum splits into two e-coefficients.
              std::vector<int> next{s + tt};
              next.insert(next.end(), k - 1, tt);
              CHECK(s * reduced_stk_sum(b, s, tt, k) == e_coefficient(b, shape) + e_coefficient(b, Partition(next)));
              if (reduced_stk_sum(b, s, tt, k) < 0) CHECK_FALSE(e_expansion(b).e_positive);
            }
          }
        }
      }
    }
    const BTable b = b_table(make_path(7));
    CHECK_THROWS_AS(coefficient_stk(b, 3, 2, 1), std::invalid_argument);
    CHECK(reduced_stk_sum(b_table(make_path(5)), 5, 2, 0) == 1);
  }

  TEST_CASE("weight cache guards") {
    CHECK_THROWS(b_table(make_path(kMaxVertices + 1)));
    CHECK(b_table(make_path(kMaxVertices)).at(Partition{kMaxVertices}) == 1);
  }
}
