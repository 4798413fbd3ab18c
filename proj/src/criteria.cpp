#include "csft/criteria.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace csft {

nlohmann::json CriterionResult::to_json() const {
  return {{"name", name}, {"applicable", applicable}, {"violated", violated}, {"witness", witness}, {"detail", detail}};
}

bool CriteriaVerdict::any_violated() const {
  return std::any_of(entries.begin(), entries.end(), [](const CriterionResult& r) { return r.violated; });
}

const CriterionResult* CriteriaVerdict::find(std::string_view name) const {
  for (const auto& r : entries) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

nlohmann::json CriteriaVerdict::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : entries) out.push_back(r.to_json());
  return out;
}

CriterionResult check_cpet(const BTable& b) {
  CriterionResult r;
  r.name = "cpet";
  r.applicable = true;
  if (auto missing = b.first_missing()) {
    r.violated = true;
    r.witness = "no connected partition of type " + missing->to_string();
    r.detail["missing"] = std::vector<int>(missing->parts().begin(), missing->parts().end());
  }
  return r;
}

CriterionResult check_n22(const BTable& b) {
  const int n = b.degree();
  CriterionResult r;
  r.name = "n22";
  r.applicable = n >= 9;
  if (!r.applicable) return r;
  const std::uint64_t b422 = b.at(Partition{n - 4, 2, 2});
  const std::uint64_t b22 = b.at(Partition{n - 2, 2});
  const std::uint64_t b44 = b.at(Partition{n - 4, 4});
  const std::uint64_t bound = (b22 + b44 + 1) / 2;
  r.violated = b422 < bound;
  r.detail = {{"b_n422", b422}, {"b_n22", b22}, {"b_n44", b44}, {"bound", bound}};
  r.witness = "b(n-4,2,2) = " + std::to_string(b422) + (r.violated ? " < " : " >= ") + "ceil((" +
              std::to_string(b22) + " + " + std::to_string(b44) + ")/2) = " + std::to_string(bound);
  return r;
}

CriterionResult check_structural(const Tree& t) {
  const int n = t.size();
  CriterionResult r;
  r.name = "structural";
  r.applicable = n >= 3;
  if (!r.applicable) return r;
  const int p2 = pendent_count(t, make_path(2));
  r.detail["pendent_p2"] = p2;
  if (p2 == 0) {
    r.violated = true;
    r.witness = "case 1: no pendent P2";
    return r;
  }
  // The remaining cases rest on the (n-4,2,2) inequality.
  if (n < 7) return r;
  const int claws = pendent_count(t, make_star(3));
  const int p4 = pendent_count(t, make_path(4));
  r.detail["pendent_claw"] = claws;
  r.detail["pendent_p4"] = p4;
  if (p2 == 1 && claws >= 1) {
    r.violated = true;
    r.witness = "case 2: exactly one pendent P2 and a pendent claw";
  } else if (p2 == 2 && p4 == 0) {
    r.violated = true;
    r.witness = "case 3: exactly two pendent P2 and no pendent P4";
  }
  return r;
}

BigInt sink2_lower_bound(int n, int leaves) {
  if (n < 2) throw std::invalid_argument("sink2_lower_bound needs n >= 2");
  BigInt sum = 0;
  for (int k = (n + 1) / 2; k <= n - 2; ++k) sum += BigInt(k) * (n - k);
  const BigInt tail = BigInt(2 * leaves - n) * (n - 1);
  if (tail % 2 != 0) throw std::logic_error("2-sink bound is not an integer");
  return sum + tail / 2;
}

CriterionResult check_sink2(const Tree& t, const SinkTable& sinks) {
  const int n = t.size();
  CriterionResult r;
  r.name = "sink2";
  r.applicable = n >= 3;
  if (!r.applicable) return r;
  const int leaves = degree_stats(t).leaf_count;
  const BigInt bound = sink2_lower_bound(n, leaves);
  const BigInt& actual = sinks.at(2);
  r.violated = actual < bound;
  r.detail = {{"sink2", actual.str()}, {"bound", bound.str()}, {"leaves", leaves}};
  r.witness = "sink(T,2) = " + actual.str() + (r.violated ? " < " : " >= ") + bound.str();
  return r;
}

CriterionResult check_sink2(const Tree& t, const BTable& b) {
  SinkTable partial;
  partial.sinks.assign(b.degree() + 1, 0);
  if (b.degree() >= 2) partial.sinks[2] = sink_count(b, 2);
  return check_sink2(t, partial);
}

BigInt caterpillar_sink2(std::span<const int> alpha) {
  if (alpha.empty() || alpha.front() < 1 || alpha.back() < 1) {
    throw std::invalid_argument("caterpillar needs at least one leaf on each end spine vertex");
  }
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("caterpillar leaf counts must be nonnegative");
  }
  const int d = static_cast<int>(alpha.size());
  BigInt total = 0;
  for (int i = 0; i < d; ++i) {
    // Both sinks are leaves on v_i.
    total += BigInt(alpha[i]) * (alpha[i] - 1) / 2;
    // A leaf on v_i and the spine vertex v_j.
    for (int j = 0; j < d; ++j) total += BigInt(alpha[i]) * std::abs(j - i);
    for (int j = i + 1; j < d; ++j) {
      // Leaves on v_i and v_j, then the spine vertices v_i and v_j.
      total += BigInt(alpha[i]) * alpha[j] * (j - i + 1);
      total += j - i - 1;
    }
  }
  return total;
}

namespace {

bool wanted(const CriteriaOptions& options, std::string_view name) {
  return options.only.empty() || std::find(options.only.begin(), options.only.end(), name) != options.only.end();
}

template <typename TableSource>
CriteriaVerdict evaluate(const Tree& t, TableSource&& table, const CriteriaOptions& options) {
  for (const auto& name : options.only) {
    if (std::find(criterion_names().begin(), criterion_names().end(), name) == criterion_names().end()) {
      throw std::invalid_argument("unknown criterion '" + name + "'");
    }
  }
  CriteriaVerdict verdict;
  auto record = [&](CriterionResult r) {
    verdict.entries.push_back(std::move(r));
    return options.short_circuit && verdict.entries.back().violated;
  };
  if (wanted(options, "structural") && record(check_structural(t))) return verdict;
  if (wanted(options, "cpet") && record(check_cpet(table()))) return verdict;
  if (wanted(options, "n22") && record(check_n22(table()))) return verdict;
  if (wanted(options, "sink2")) record(check_sink2(t, table()));
  return verdict;
}

}  // namespace

CriteriaVerdict run_all(const Tree& t, const BTable& b, const CriteriaOptions& options) {
  return evaluate(t, [&]() -> const BTable& { return b; }, options);
}

CriteriaVerdict run_all(const Tree& t, const CriteriaOptions& options) {
  std::optional<BTable> b;
  return evaluate(
      t,
      [&]() -> const BTable& {
        if (!b) b = b_table(t);
        return *b;
      },
      options);
}

}  // namespace csft
