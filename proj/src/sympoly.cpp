#include "csft/sympoly.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "csft/tabloid.hpp"

namespace csft {

const char* basis_name(Basis basis) { return basis == Basis::E ? "e" : "p"; }

std::string rational_to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

SymPoly SymPoly::basis_element(Basis basis, const Partition& lambda) {
  SymPoly poly(basis, lambda.size());
  poly.add(lambda, 1);
  return poly;
}

Rational SymPoly::coefficient(const Partition& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SymPoly::add(const Partition& lambda, const Rational& c) {
  if (lambda.size() != degree_) {
    throw std::invalid_argument("term " + lambda.to_string() + " does not have degree " +
                                std::to_string(degree_));
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(lambda, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymPoly& SymPoly::operator+=(const SymPoly& other) {
  if (other.basis_ != basis_ || other.degree_ != degree_) {
    throw std::invalid_argument("cannot add symmetric functions of different basis or degree");
  }
  for (const auto& [lambda, c] : other.terms_) add(lambda, c);
  return *this;
}

SymPoly& SymPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [lambda, c] : terms_) c *= scalar;
  return *this;
}

std::string SymPoly::render() const {
  std::ostringstream out;
  for (const auto& [lambda, c] : terms_) {
    out << rational_to_string(c) << " * " << basis_name(basis_) << lambda.to_string() << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json integer_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(value);
  }
  return value.str();
}

BigInt integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

}  // namespace

nlohmann::json SymPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [lambda, c] : terms_) {
    terms.push_back({{"partition", std::vector<int>(lambda.parts().begin(), lambda.parts().end())},
                     {"num", integer_json(boost::multiprecision::numerator(c))},
                     {"den", integer_json(boost::multiprecision::denominator(c))}});
  }
  return {{"basis", basis_name(basis_)}, {"n", degree_}, {"terms", std::move(terms)}};
}

SymPoly SymPoly::from_json(const nlohmann::json& j) {
  const std::string basis = j.at("basis").get<std::string>();
  if (basis != "e" && basis != "p") throw std::invalid_argument("unknown basis '" + basis + "'");
  SymPoly poly(basis == "e" ? Basis::E : Basis::P, j.at("n").get<int>());
  for (const auto& term : j.at("terms")) {
    Partition lambda(term.at("partition").get<std::vector<int>>());
    poly.add(lambda, Rational(integer_from_json(term.at("num")), integer_from_json(term.at("den"))));
  }
  return poly;
}

namespace {

// The partitions of |mu| that refine mu.
std::vector<Partition> refinements_of(const Partition& mu) {
  std::vector<Partition> out;
  for (auto& lambda : enumerate_partitions(mu.size())) {
    if (refines(lambda, mu)) out.push_back(std::move(lambda));
  }
  return out;
}

int sign_of_parity(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

SymPoly expand_e_element(const Partition& mu) {
  const int n = mu.size();
  SymPoly out(Basis::P, n);
  for (const auto& lambda : refinements_of(mu)) {
    out.add(lambda, Rational(sign_of_parity(n - lambda.length()) * ordered_count(lambda, mu), z_value(lambda)));
  }
  return out;
}

SymPoly expand_p_element(const Partition& mu) {
  const int n = mu.size();
  SymPoly out(Basis::E, n);
  for (const auto& lambda : refinements_of(mu)) {
    out.add(lambda, Rational(sign_of_parity(n - lambda.length()) * weight_sum(lambda, mu)));
  }
  return out;
}

SymPoly change_basis(const SymPoly& poly, Basis expected, SymPoly (*row)(const Partition&)) {
  if (poly.basis() != expected) {
    throw std::invalid_argument(std::string("expected a polynomial in the ") + basis_name(expected) + " basis");
  }
  SymPoly out(expected == Basis::E ? Basis::P : Basis::E, poly.degree());
  for (const auto& [mu, c] : poly.terms()) {
    const SymPoly expansion = row(mu);
    for (const auto& [lambda, d] : expansion.terms()) out.add(lambda, c * d);
  }
  return out;
}

}  // namespace

SymPoly e_to_p(const SymPoly& poly) { return change_basis(poly, Basis::E, expand_e_element); }

SymPoly p_to_e(const SymPoly& poly) { return change_basis(poly, Basis::P, expand_p_element); }

Rational specialize_ones(const SymPoly& poly, int k) {
  Rational total = 0;
  for (const auto& [lambda, c] : poly.terms()) {
    BigInt value = 1;
    for (int part : lambda.parts()) value *= poly.basis() == Basis::P ? BigInt(k) : binomial(k, part);
    total += c * value;
  }
  return total;
}

TransitionMatrix::TransitionMatrix(Basis from, int degree) : from_(from), degree_(degree) {
  for (const auto& mu : enumerate_partitions(degree)) {
    rows_.emplace(mu, from == Basis::E ? expand_e_element(mu) : expand_p_element(mu));
  }
}

const SymPoly& TransitionMatrix::row(const Partition& mu) const { return rows_.at(mu); }

SymPoly TransitionMatrix::apply(const SymPoly& poly) const {
  if (poly.basis() != from_ || poly.degree() != degree_) {
    throw std::invalid_argument("transition matrix does not match the polynomial's basis or degree");
  }
  SymPoly out(from_ == Basis::E ? Basis::P : Basis::E, degree_);
  for (const auto& [mu, c] : poly.terms()) {
    const SymPoly expansion = row(mu);
    for (const auto& [lambda, d] : expansion.terms()) out.add(lambda, c * d);
  }
  return out;
}

}  // namespace csft
