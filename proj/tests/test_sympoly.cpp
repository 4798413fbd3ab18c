#include <doctest.h>

#include <random>

#include "csft/sympoly.hpp"
#include "oracles.hpp"

using namespace csft;

namespace {

std::vector<BigInt> random_point(std::mt19937& rng, int size) {
  std::uniform_int_distribution<int> dist(-4, 6);
  std::vector<BigInt> x;
  for (int i = 0; i < size; ++i) x.emplace_back(dist(rng));
  return x;
}

}  // namespace

TEST_SUITE("sympoly") {
  TEST_CASE("e to p agrees numerically") {
    std::mt19937 rng(7);
    for (int n = 1; n <= 7; ++n) {
      for (const auto& mu : enumerate_partitions(n)) {
        const SymPoly e = SymPoly::basis_element(Basis::E, mu);
        const SymPoly p = e_to_p(e);
        CHECK(p.basis() == Basis::P);
        for (int trial = 0; trial < 3; ++trial) {
          const auto x = random_point(rng, n);
          CHECK(oracle::evaluate(p, x) == oracle::evaluate(e, x));
        }
      }
    }
  }

  TEST_CASE("p to e agrees numerically") {
    std::mt19937 rng(11);
    for (int n = 1; n <= 7; ++n) {
      for (const auto& mu : enumerate_partitions(n)) {
        const SymPoly p = SymPoly::basis_element(Basis::P, mu);
        const SymPoly e = p_to_e(p);
        for (int trial = 0; trial < 3; ++trial) {
          const auto x = random_point(rng, n);
          CHECK(oracle::evaluate(e, x) == oracle::evaluate(p, x));
        }
      }
    }
  }

  TEST_CASE("small expansions") {
    // e_2 = (p_1^2 - p_2) / 2
    const SymPoly p = e_to_p(SymPoly::basis_element(Basis::E, Partition{2}));
    CHECK(p.coefficient(Partition{1, 1}) == Rational(1, 2));
    CHECK(p.coefficient(Partition{2}) == Rational(-1, 2));
    // p_2 = e_1^2 - 2 e_2
    const SymPoly e = p_to_e(SymPoly::basis_element(Basis::P, Partition{2}));
    CHECK(e.coefficient(Partition{1, 1}) == 1);
    CHECK(e.coefficient(Partition{2}) == -2);
    CHECK(e.terms().size() == 2);
  }

  TEST_CASE("arithmetic and errors") {
    SymPoly a(Basis::E, 3);
    a.add(Partition{2, 1}, Rational(3, 4));
    a.add(Partition{2, 1}, Rational(-3, 4));
    CHECK(a.is_zero());
    CHECK_THROWS_AS(a.add(Partition{2}, 1), std::invalid_argument);
    a.add(Partition{3}, 2);
    SymPoly b = a;
    b *= Rational(1, 2);
    CHECK(b.coefficient(Partition{3}) == 1);
    b += a;
    CHECK(b.coefficient(Partition{3}) == 3);
    CHECK_THROWS_AS(p_to_e(a), std::invalid_argument);
    CHECK_THROWS_AS(e_to_p(e_to_p(a)), std::invalid_argument);
  }

  TEST_CASE("rendering and json round trip") {
    SymPoly a(Basis::P, 4);
    a.add(Partition{2, 2}, Rational(-1, 3));
    a.add(Partition{4}, 5);
    CHECK(a.render() == "5 * p[4]\n-1/3 * p[2,2]\n");
    const auto j = a.to_json();
    CHECK(j["basis"] == "p");
    CHECK(SymPoly::from_json(j) == a);
    CHECK(rational_to_string(Rational(6, 4)) == "3/2");
  }

  TEST_CASE("specialization at ones") {
    // p_lambda(1^k) = k^l(lambda); e_n(1^k) = C(k, n)
    const SymPoly p = SymPoly::basis_element(Basis::P, Partition{2, 1});
    CHECK(specialize_ones(p, 3) == 9);
    const SymPoly e = SymPoly::basis_element(Basis::E, Partition{2, 1});
    CHECK(specialize_ones(e, 4) == 6 * 4);
    CHECK(specialize_ones(SymPoly::basis_element(Basis::E, Partition{5}), 3) == 0);
  }

  TEST_CASE("transition matrix rows") {
    const TransitionMatrix m(Basis::E, 5);
    for (const auto& mu : enumerate_partitions(5)) {
      CHECK(m.row(mu) == e_to_p(SymPoly::basis_element(Basis::E, mu)));
    }
    SymPoly mix(Basis::E, 5);
    mix.add(Partition{3, 2}, 2);
    mix.add(Partition{5}, -1);
    CHECK(m.apply(mix) == e_to_p(mix));
  }
}
