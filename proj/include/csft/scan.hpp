#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csft/csf.hpp"
#include "csft/criteria.hpp"
#include "csft/numeric.hpp"
#include "csft/partition.hpp"
#include "csft/tree.hpp"

namespace csft {

enum class ScanMode { VerifyConjecture, FindCpet, ProbeProblems };

const char* mode_name(ScanMode mode);
ScanMode parse_mode(std::string_view text);

struct ScanConfig {
  int n_min = 1;
  int n_max = 1;
  int min_delta = 0;
  /// Optional upper degree filter; unset means no upper bound.
  std::optional<int> max_delta;
  bool include_spiders = false;
  ScanMode mode = ScanMode::FindCpet;
  int workers = 1;
  std::string output_path;
  std::string checkpoint_path;
  /// Defaults to output_path + ".summary.json".
  std::string summary_path;
  std::uint64_t checkpoint_every = 10000;
  std::chrono::milliseconds checkpoint_interval{30000};
  /// Adds per-record wall time; records are then no longer reproducible.
  bool record_timing = false;

  void validate() const;
  /// Fields that determine the record stream.
  nlohmann::json identity() const;
  std::string fingerprint() const;
};

/// Per-tree analysis result, one line of the scan output.
struct ScanRecord {
  std::uint64_t index = 0;  // generation index within its n
  std::string code;
  int n = 0;
  int max_degree = 0;
  int leaf_count = 0;
  bool is_spider = false;
  bool cpet = false;
  std::optional<Partition> missing_type;
  bool e_positive = false;
  std::optional<std::pair<Partition, BigInt>> first_negative;
  /// b_{(3,2^{(n-3)/2})} for odd n.
  std::optional<std::uint64_t> b_32probe;
  /// Coefficient at the probe shape (3,2^{(n-3)/2}) or (2^{n/2}).
  std::optional<BigInt> probe_coefficient;
  /// Adjacent leaves of each degree-4 vertex, in vertex order.
  std::vector<int> degree4_leaf_neighbors;
  std::vector<std::string> violated;
  /// First pipeline stage that settled e-positivity.
  std::string decided_by;
  std::optional<double> elapsed_ms;

  nlohmann::ordered_json to_json() const;
  static ScanRecord from_json(const nlohmann::json& j);
};

/// Runs every stage of the scan pipeline on one tree.
ScanRecord analyze_tree(const Tree& t, std::uint64_t index = 0);

struct ProblemRow {
  std::string code;
  int n = 0;
  bool is_spider = false;
  bool has_degree4_with_two_leaves = false;
  bool unique_degree4 = false;
  bool n_prime = false;
  bool n_odd = false;
  /// Sign of [e_{(3,2^{(n-3)/2})}] < 0; unset for even n.
  std::optional<bool> probe_negative;
  std::vector<std::string> counterexamples;

  nlohmann::ordered_json to_json() const;
};

/// Evidence for the open problems on CPET trees with maximum degree 4.
std::vector<ProblemRow> probe_problems(const std::vector<ScanRecord>& records);

class ScanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a checkpoint cannot be used to continue a run.
class ResumeRefused : public ScanError {
 public:
  using ScanError::ScanError;
};

struct ScanSummary {
  bool completed = false;
  bool interrupted = false;
  bool counterexample_found = false;
  std::uint64_t records_written = 0;
  nlohmann::ordered_json document;
};

struct ScanControl {
  /// Polled between batches; when set the run checkpoints and returns.
  const std::atomic<bool>* cancel = nullptr;
  /// Stop (with a checkpoint) once this many trees have been generated in
  /// this invocation.
  std::optional<std::uint64_t> stop_after;
  /// Discard an existing checkpoint instead of refusing to start.
  bool restart = false;
};

/// Fresh run. Refuses (ResumeRefused) if an unfinished checkpoint exists
/// unless control.restart is set.
ScanSummary run_scan(const ScanConfig& config, const ScanControl& control = {});
/// Continue from config.checkpoint_path. The finished output equals that of
/// an uninterrupted run byte for byte.
ScanSummary resume(const ScanConfig& config, const ScanControl& control = {});

}  // namespace csft
