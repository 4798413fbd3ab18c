#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "csft/numeric.hpp"
#include "csft/partition.hpp"

namespace csft {

enum class Basis { E, P };

const char* basis_name(Basis basis);

/// A homogeneous symmetric function of degree n written in the elementary
/// or power-sum basis with exact rational coefficients. Zero terms are never
/// stored.
class SymPoly {
 public:
  using Terms = std::map<Partition, Rational, DecreasingLex>;

  SymPoly(Basis basis, int degree) : basis_(basis), degree_(degree) {}

  /// The single basis element indexed by `lambda`.
  static SymPoly basis_element(Basis basis, const Partition& lambda);

  Basis basis() const { return basis_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of `lambda`, zero when absent.
  Rational coefficient(const Partition& lambda) const;

  /// Adds `c` to the coefficient of `lambda`. Throws std::invalid_argument
  /// if `lambda` has the wrong size.
  void add(const Partition& lambda, const Rational& c);

  SymPoly& operator+=(const SymPoly& other);
  SymPoly& operator*=(const Rational& scalar);

  friend bool operator==(const SymPoly&, const SymPoly&) = default;

  /// One term per line, e.g. "1/2 * p[1,1]".
  std::string render() const;
  nlohmann::json to_json() const;
  static SymPoly from_json(const nlohmann::json& j);

 private:
  Basis basis_;
  int degree_;
  Terms terms_;
};

std::string rational_to_string(const Rational& q);

SymPoly e_to_p(const SymPoly& poly);
SymPoly p_to_e(const SymPoly& poly);

/// Value at x_1 = ... = x_k = 1 and all other variables 0.
Rational specialize_ones(const SymPoly& poly, int k);

/// Sparse transition matrix for a fixed degree: row mu holds the expansion
/// of the basis element mu in the other basis. Read-only after construction.
class TransitionMatrix {
 public:
  TransitionMatrix(Basis from, int degree);

  Basis from() const { return from_; }
  int degree() const { return degree_; }
  const SymPoly& row(const Partition& mu) const;
  SymPoly apply(const SymPoly& poly) const;

 private:
  Basis from_;
  int degree_;
  std::map<Partition, SymPoly> rows_;
};

}  // namespace csft
