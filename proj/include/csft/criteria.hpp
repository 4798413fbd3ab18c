#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "csft/csf.hpp"
#include "csft/numeric.hpp"
#include "csft/tree.hpp"

namespace csft {

/// Outcome of one necessary condition for e-positivity. A violated entry
/// certifies that the tree is not e-positive; a satisfied one proves nothing.
struct CriterionResult {
  std::string name;
  bool applicable = false;
  bool violated = false;
  std::string witness;
  nlohmann::json detail = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct CriteriaVerdict {
  std::vector<CriterionResult> entries;

  bool any_violated() const;
  const CriterionResult* find(std::string_view name) const;
  nlohmann::json to_json() const;
};

/// Some lambda |- n has no connected partition.
CriterionResult check_cpet(const BTable& b);
/// b_{(n-4,2,2)} >= ceil((b_{(n-2,2)} + b_{(n-4,4)}) / 2), for n >= 9.
CriterionResult check_n22(const BTable& b);
/// Pendent-structure cases: no pendent P2; one pendent P2 with a pendent
/// claw; two pendent P2 without a pendent P4.
CriterionResult check_structural(const Tree& t);
/// sum_{k=ceil(n/2)}^{n-2} k(n-k) + (2l-n)(n-1)/2; the 2-sink check needs n >= 3.
BigInt sink2_lower_bound(int n, int leaves);
CriterionResult check_sink2(const Tree& t, const SinkTable& sinks);
CriterionResult check_sink2(const Tree& t, const BTable& b);
/// Closed form for the number of 2-sink orientations of C(alpha).
BigInt caterpillar_sink2(std::span<const int> alpha);

inline const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names{"structural", "cpet", "n22", "sink2"};
  return names;
}

struct CriteriaOptions {
  /// Criteria to evaluate, by name; empty means all.
  std::vector<std::string> only;
  /// Stop after the first violation.
  bool short_circuit = true;
};

/// Cheapest first: structural, CPET, the (n-4,2,2) inequality, 2-sinks.
CriteriaVerdict run_all(const Tree& t, const CriteriaOptions& options = {});
CriteriaVerdict run_all(const Tree& t, const BTable& b, const CriteriaOptions& options = {});

}  // namespace csft
