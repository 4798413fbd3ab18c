// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failures.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "csft/criteria.hpp"
#include "csft/csf.hpp"
#include "csft/scan.hpp"
#include "csft/sympoly.hpp"
#include "csft/tabloid.hpp"
#include "oracles.hpp"

using namespace csft;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) note = what;
    ok = ok && condition;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

fs::path scratch_dir() {
  std::random_device rd;
  auto dir = fs::temp_directory_path() / ("csft-acceptance-" + std::to_string(rd()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome tabloid_anchors() {
  Outcome o;
  const Partition content{2, 2, 1, 1}, shape{4, 2};
  const auto start = Clock::now();
  const BigInt w = weight_sum(content, shape);
  const BigInt ob = ordered_count(content, shape);
  const auto tabloids = enumerate_brick_tabloids(content, shape);
  const double ms = seconds_since(start) * 1000;
  std::multiset<BigInt> weights;
  for (const auto& b : tabloids) weights.insert(b.weight());
  o.require(w == 10, "weight sum " + w.str());
  o.require(tabloids.size() == 4, "tabloid count");
  o.require(weights == std::multiset<BigInt>{2, 2, 2, 4}, "weights");
  o.require(ob == 3, "ordered count " + ob.str());
  o.require(ms < 1.0, "took " + std::to_string(ms) + " ms");
  return o;
}

Outcome basis_roundtrip() {
  Outcome o;
  const auto start = Clock::now();
  for (int n = 1; n <= 9; ++n) {
    for (const auto& mu : enumerate_partitions(n)) {
      const SymPoly e = SymPoly::basis_element(Basis::E, mu);
      const SymPoly p = SymPoly::basis_element(Basis::P, mu);
      o.require(p_to_e(e_to_p(e)) == e, "e roundtrip at " + mu.to_string());
      o.require(e_to_p(p_to_e(p)) == p, "p roundtrip at " + mu.to_string());
    }
  }
  o.require(seconds_since(start) < 10, "over 10 s");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  for (int n = 1; n <= 10; ++n) {
    for (const auto& t : enumerate_free_trees(n)) {
      const std::string code = canonical_code(t).to_string();
      const BTable b = b_table(t);
      o.require(b == b_table_bruteforce(t), "b-table at " + code);
      o.require(sink_counts(b) == sink_counts_bruteforce(t), "sinks at " + code);
      o.require(e_expansion(b).as_sympoly() == p_to_e(p_expansion(b)), "e-expansion at " + code);
    }
  }
  o.require(seconds_since(start) < 300, "over 5 min");
  return o;
}

Outcome chromatic_specialization() {
  Outcome o;
  for (int n = 1; n <= 9; ++n) {
    for (const auto& t : enumerate_free_trees(n)) {
      const SymPoly p = p_expansion(t);
      for (int k = 0; k <= 5; ++k) {
        BigInt expected = k;
        for (int i = 1; i < n; ++i) expected *= k - 1;
        o.require(specialize_ones(p, k) == Rational(expected),
                  "k=" + std::to_string(k) + " at " + canonical_code(t).to_string());
      }
    }
  }
  return o;
}

Outcome caterpillar_example() {
  Outcome o;
  const std::vector<int> alpha{1, 1, 2, 1, 2};
  const Tree c = make_caterpillar(alpha);
  o.require(caterpillar_sink2(alpha) == 125, "closed form");
  o.require(sink_count(b_table(c), 2) == 125, "via the tabloid formula");
  o.require(sink_counts_bruteforce(c).at(2) == 125, "via orientations");
  o.require(sink2_lower_bound(12, 7) == 161, "bound");
  o.require(check_sink2(c, b_table(c)).violated, "criterion not violated");
  return o;
}

Outcome t4_example() {
  Outcome o;
  const BTable b = b_table(fixture_tree("T4"));
  const std::vector<std::pair<Partition, std::uint64_t>> expected{{Partition{4, 4, 4, 4, 3}, 1},
                                                                  {Partition{8, 4, 4, 3}, 6},
                                                                  {Partition{12, 4, 3}, 6},
                                                                  {Partition{8, 8, 3}, 2},
                                                                  {Partition{16, 3}, 3}};
  for (const auto& [lambda, value] : expected) {
    o.require(b.at(lambda) == value, "b" + lambda.to_string() + " = " + std::to_string(b.at(lambda)));
  }
  const BigInt r = reduced_stk_sum(b, 3, 4, 4);
  o.require(r == -12, "reduced sum " + r.str());
  return o;
}

Outcome degree4_cpet_scan(const fs::path& dir, std::string& timing) {
  Outcome o;
  std::set<std::string> fixtures;
  for (const auto& name : fixture_names()) fixtures.insert(canonical_code(fixture_tree(name)).to_string());
  std::set<std::string> found;
  for (int n : {17, 19}) {
    ScanConfig c;
    c.n_min = c.n_max = n;
    c.min_delta = 4;
    c.max_delta = 4;
    c.mode = ScanMode::FindCpet;
    c.output_path = (dir / ("cpet-" + std::to_string(n) + ".jsonl")).string();
    c.checkpoint_path = c.output_path + ".ckpt";
    const auto start = Clock::now();
    const auto summary = run_scan(c);
    const double secs = seconds_since(start);
    std::ostringstream t;
    t << std::fixed << std::setprecision(1) << "n=" << n << " " << secs << " s; ";
    timing += t.str();
    const auto& cpet = summary.document["cpet_trees"];
    o.require(cpet.size() == 2, std::to_string(cpet.size()) + " CPET classes at n=" + std::to_string(n));
    for (const auto& row : cpet) {
      found.insert(row["code"].get<std::string>());
      const Tree tree = parse_tree_spec(row["code"].get<std::string>());
      o.require(e_coefficient(tree, *probe_partition(n)) < 0, "probe coefficient not negative");
    }
    o.require(secs < (n == 17 ? 600 : 7200), "too slow at n=" + std::to_string(n));
  }
  o.require(found == fixtures, "fixture codes differ from scan output");
  return o;
}

Outcome conjecture_slice(const fs::path& dir) {
  Outcome o;
  ScanConfig c;
  c.n_min = 1;
  c.n_max = 13;
  c.min_delta = 4;
  c.include_spiders = true;
  c.mode = ScanMode::VerifyConjecture;
  c.output_path = (dir / "conjecture.jsonl").string();
  c.checkpoint_path = c.output_path + ".ckpt";
  const auto start = Clock::now();
  const auto summary = run_scan(c);
  o.require(summary.completed, "scan incomplete");
  o.require(!summary.counterexample_found, "e-positive tree with maximum degree >= 4");
  std::uint64_t positive = 0;
  for (const auto& row : summary.document["per_n"]) positive += row["e_positive"].get<std::uint64_t>();
  o.require(positive == 0, std::to_string(positive) + " e-positive records");
  o.require(seconds_since(start) < 600, "over 10 min");
  return o;
}

Outcome spider_witness() {
  Outcome o;
  const std::vector<int> legs{6, 4, 1, 1};
  const BTable b = b_table(make_spider(legs));
  o.require(b.is_cpet(), "not CPET");
  o.require(!e_expansion(b).e_positive, "e-positive");
  return o;
}

Outcome soundness_sweep() {
  Outcome o;
  for (int n = 1; n <= 12; ++n) {
    for (const auto& t : enumerate_free_trees(n)) {
      const std::string code = canonical_code(t).to_string();
      const BTable b = b_table(t);
      const bool positive = !first_negative(b);
      const auto verdict = run_all(t, b, CriteriaOptions{{}, false});
      o.require(!(positive && verdict.any_violated()), "violation on e-positive " + code);
      const SinkTable sinks = sink_counts(b);
      o.require(sinks.at(1) == n, "sink(T,1) at " + code);
      o.require(sinks.total() == BigInt(1) << (n - 1), "sink total at " + code);
      o.require(e_coefficient(b, Partition{n}) == n, "[e_n] at " + code);
    }
  }
  return o;
}

Outcome resume_determinism(const fs::path& dir) {
  Outcome o;
  ScanConfig full;
  full.n_min = full.n_max = 12;
  full.include_spiders = true;
  full.mode = ScanMode::FindCpet;
  full.output_path = (dir / "full12.jsonl").string();
  full.checkpoint_path = full.output_path + ".ckpt";
  full.checkpoint_every = 100;
  run_scan(full);
  ScanConfig part = full;
  part.output_path = (dir / "part12.jsonl").string();
  part.checkpoint_path = part.output_path + ".ckpt";
  part.workers = 2;
  ScanControl stop;
  stop.stop_after = 551 / 2;
  const auto first = run_scan(part, stop);
  o.require(first.interrupted, "first half did not stop");
  const auto rest = resume(part);
  o.require(rest.completed, "resume incomplete");
  const std::string a = slurp(full.output_path), b = slurp(part.output_path);
  o.require(!a.empty() && a == b, "outputs differ");
  return o;
}

}  // namespace

int main() {
  const fs::path dir = scratch_dir();
  std::string scan_timing;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tabloid anchors", tabloid_anchors},
      {"basis roundtrip through degree 9", basis_roundtrip},
      {"oracle equivalence through 10 vertices", oracle_equivalence},
      {"chromatic polynomial specialization", chromatic_specialization},
      {"five-spine caterpillar 2-sink example", caterpillar_example},
      {"T4 b-values and reduced sum", t4_example},
      {"non-spider CPET trees with max degree 4 at n=17,19", [&] { return degree4_cpet_scan(dir, scan_timing); }},
      {"no e-positive tree with max degree >= 4 through 13 vertices", [&] { return conjecture_slice(dir); }},
      {"S(6,4,1,1) is CPET but not e-positive", spider_witness},
      {"criteria soundness and sink identities through 12 vertices", soundness_sweep},
      {"interrupted n=12 scan resumes byte-identically", [&] { return resume_determinism(dir); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(start);
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << std::setw(2) << i + 1 << " " << criteria[i].first << " ("
              << std::fixed << std::setprecision(3) << secs << " s)";
    if (i == 6 && !scan_timing.empty()) std::cout << " [" << scan_timing.substr(0, scan_timing.size() - 2) << "]";
    if (!o.ok) std::cout << ": " << o.note;
    std::cout << std::endl;
    failures += o.ok ? 0 : 1;
  }
  fs::remove_all(dir);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures;
}
