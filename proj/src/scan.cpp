#include "csft/scan.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace csft {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const char* mode_name(ScanMode mode) {
  switch (mode) {
    case ScanMode::VerifyConjecture: return "verify_conjecture";
    case ScanMode::FindCpet: return "find_cpet";
    case ScanMode::ProbeProblems: return "probe_problems";
  }
  return "?";
}

ScanMode parse_mode(std::string_view text) {
  if (text == "verify_conjecture") return ScanMode::VerifyConjecture;
  if (text == "find_cpet") return ScanMode::FindCpet;
  if (text == "probe_problems") return ScanMode::ProbeProblems;
  throw std::invalid_argument("unknown scan mode '" + std::string(text) + "'");
}

void ScanConfig::validate() const {
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("scan needs 1 <= n_min <= n_max");
  if (n_max > kMaxVertices) {
    throw std::invalid_argument("scan is limited to " + std::to_string(kMaxVertices) + " vertices");
  }
  if (workers < 1) throw std::invalid_argument("scan needs at least one worker");
  if (max_delta && *max_delta < min_delta) throw std::invalid_argument("max_delta is below min_delta");
  if (output_path.empty()) throw std::invalid_argument("scan needs an output path");
  if (checkpoint_path.empty()) throw std::invalid_argument("scan needs a checkpoint path");
  if (checkpoint_every == 0) throw std::invalid_argument("checkpoint cadence must be positive");
}

nlohmann::json ScanConfig::identity() const {
  nlohmann::json j = {{"n_min", n_min},
                      {"n_max", n_max},
                      {"min_delta", min_delta},
                      {"max_delta", nullptr},
                      {"include_spiders", include_spiders},
                      {"mode", mode_name(mode)},
                      {"record_timing", record_timing}};
  if (max_delta) j["max_delta"] = *max_delta;
  return j;
}

std::string ScanConfig::fingerprint() const {
  // FNV-1a, stable across builds.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : identity().dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

// ---------------------------------------------------------------------------
// Records

namespace {

nlohmann::json big_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(value);
  }
  return value.str();
}

BigInt big_from_json(const nlohmann::json& j) {
  return j.is_string() ? BigInt(j.get<std::string>()) : BigInt(j.get<std::int64_t>());
}

std::vector<int> parts_of(const Partition& p) { return {p.parts().begin(), p.parts().end()}; }

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

nlohmann::ordered_json ScanRecord::to_json() const {
  nlohmann::ordered_json j;
  j["index"] = index;
  j["code"] = code;
  j["n"] = n;
  j["max_degree"] = max_degree;
  j["leaf_count"] = leaf_count;
  j["is_spider"] = is_spider;
  j["cpet"] = cpet;
  j["missing_type"] = missing_type ? nlohmann::ordered_json(parts_of(*missing_type)) : nlohmann::ordered_json();
  j["e_positive"] = e_positive;
  if (first_negative) {
    j["first_negative"] = {{"partition", parts_of(first_negative->first)},
                           {"value", big_json(first_negative->second)}};
  } else {
    j["first_negative"] = nullptr;
  }
  j["b_32probe"] = b_32probe ? nlohmann::ordered_json(*b_32probe) : nlohmann::ordered_json();
  j["probe_coefficient"] = probe_coefficient ? nlohmann::ordered_json(big_json(*probe_coefficient))
                                             : nlohmann::ordered_json();
  j["degree4_vertex_leaf_adjacency"] = {{"count", degree4_leaf_neighbors.size()},
                                        {"leaf_neighbors", degree4_leaf_neighbors}};
  j["violated"] = violated;
  j["decided_by"] = decided_by;
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

ScanRecord ScanRecord::from_json(const nlohmann::json& j) {
  ScanRecord r;
  r.index = j.at("index").get<std::uint64_t>();
  r.code = j.at("code").get<std::string>();
  r.n = j.at("n").get<int>();
  r.max_degree = j.at("max_degree").get<int>();
  r.leaf_count = j.at("leaf_count").get<int>();
  r.is_spider = j.at("is_spider").get<bool>();
  r.cpet = j.at("cpet").get<bool>();
  if (!j.at("missing_type").is_null()) r.missing_type = Partition(j["missing_type"].get<std::vector<int>>());
  r.e_positive = j.at("e_positive").get<bool>();
  if (const auto& fn = j.at("first_negative"); !fn.is_null()) {
    r.first_negative = std::make_pair(Partition(fn.at("partition").get<std::vector<int>>()), big_from_json(fn.at("value")));
  }
  if (!j.at("b_32probe").is_null()) r.b_32probe = j["b_32probe"].get<std::uint64_t>();
  if (!j.at("probe_coefficient").is_null()) r.probe_coefficient = big_from_json(j["probe_coefficient"]);
  r.degree4_leaf_neighbors = j.at("degree4_vertex_leaf_adjacency").at("leaf_neighbors").get<std::vector<int>>();
  r.violated = j.at("violated").get<std::vector<std::string>>();
  r.decided_by = j.at("decided_by").get<std::string>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<double>();
  return r;
}

ScanRecord analyze_tree(const Tree& t, std::uint64_t index) {
  ScanRecord r;
  r.index = index;
  r.code = canonical_code(t).to_string();
  r.n = t.size();
  const DegreeStats stats = degree_stats(t);
  r.max_degree = stats.max_degree;
  r.leaf_count = stats.leaf_count;
  r.is_spider = stats.is_spider;
  for (int v = 0; v < t.size(); ++v) {
    if (t.degree(v) != 4) continue;
    int leaves = 0;
    for (int w : t.neighbors(v)) leaves += t.degree(w) == 1 ? 1 : 0;
    r.degree4_leaf_neighbors.push_back(leaves);
  }

  const BTable b = b_table(t);
  const CriteriaVerdict verdict = run_all(t, b, CriteriaOptions{{}, false});
  for (const auto& entry : verdict.entries) {
    if (entry.violated) r.violated.push_back(entry.name);
  }
  r.missing_type = b.first_missing();
  r.cpet = !r.missing_type;

  if (auto probe = probe_partition(r.n)) {
    r.probe_coefficient = e_coefficient(b, *probe);
    if (r.n % 2 == 1) r.b_32probe = b.at(*probe);
  }
  r.first_negative = first_negative(b);
  r.e_positive = !r.first_negative;

  if (!r.violated.empty()) {
    r.decided_by = r.violated.front();
  } else if (r.probe_coefficient && *r.probe_coefficient < 0) {
    r.decided_by = "probe";
  } else {
    r.decided_by = "expansion";
  }
  if (r.e_positive && !r.violated.empty()) {
    throw std::logic_error("criterion " + r.violated.front() + " flagged the e-positive tree " + r.code);
  }
  if (r.e_positive && !r.cpet) throw std::logic_error("e-positive tree without every connected type: " + r.code);
  return r;
}

nlohmann::ordered_json ProblemRow::to_json() const {
  nlohmann::ordered_json j;
  j["code"] = code;
  j["n"] = n;
  j["is_spider"] = is_spider;
  j["degree4_adjacent_to_two_leaves"] = has_degree4_with_two_leaves;
  j["unique_degree4_vertex"] = unique_degree4;
  j["n_prime"] = n_prime;
  j["n_odd"] = n_odd;
  j["probe_negative"] = probe_negative ? nlohmann::ordered_json(*probe_negative) : nlohmann::ordered_json();
  j["counterexamples"] = counterexamples;
  return j;
}

std::vector<ProblemRow> probe_problems(const std::vector<ScanRecord>& records) {
  std::vector<ProblemRow> rows;
  for (const auto& r : records) {
    if (!r.cpet || r.max_degree != 4) continue;
    ProblemRow row;
    row.code = r.code;
    row.n = r.n;
    row.is_spider = r.is_spider;
    row.has_degree4_with_two_leaves =
        std::any_of(r.degree4_leaf_neighbors.begin(), r.degree4_leaf_neighbors.end(), [](int l) { return l >= 2; });
    row.unique_degree4 = r.degree4_leaf_neighbors.size() == 1;
    row.n_prime = is_prime(r.n);
    row.n_odd = r.n % 2 == 1;
    if (row.n_odd && r.probe_coefficient) row.probe_negative = *r.probe_coefficient < 0;
    if (!row.has_degree4_with_two_leaves) row.counterexamples.push_back("degree4_two_leaves");
    if (!row.unique_degree4) row.counterexamples.push_back("unique_degree4");
    if (!row.is_spider && !row.n_prime) row.counterexamples.push_back("prime_order");
    if (!row.n_odd) row.counterexamples.push_back("odd_order");
    if (row.probe_negative == false) row.counterexamples.push_back("negative_probe");
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Harness

namespace {

struct Tally {
  int n = 0;
  std::uint64_t generated = 0;
  std::uint64_t analyzed = 0;
  std::uint64_t cpet = 0;
  std::uint64_t e_positive = 0;
};

struct RunState {
  int n = 0;
  std::uint64_t next_index = 0;
  std::uint64_t output_bytes = 0;
  std::uint64_t records_written = 0;
  std::vector<Tally> tallies;
  std::vector<ScanRecord> cpet_records;
  std::vector<std::string> counterexamples;
  bool completed = false;

  Tally& tally(int degree) {
    for (auto& t : tallies) {
      if (t.n == degree) return t;
    }
    tallies.push_back({.n = degree});
    return tallies.back();
  }
};

nlohmann::ordered_json tallies_json(const std::vector<Tally>& tallies) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& t : tallies) {
    out.push_back({{"n", t.n}, {"generated", t.generated}, {"analyzed", t.analyzed}, {"cpet", t.cpet},
                   {"e_positive", t.e_positive}});
  }
  return out;
}

nlohmann::ordered_json checkpoint_json(const ScanConfig& config, const RunState& s) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : s.cpet_records) records.push_back(r.to_json());
  nlohmann::ordered_json j;
  j["format"] = 1;
  j["fingerprint"] = config.fingerprint();
  j["config"] = config.identity();
  j["position"] = {{"n", s.n}, {"next_index", s.next_index}};
  j["output_bytes"] = s.output_bytes;
  j["records_written"] = s.records_written;
  j["tallies"] = tallies_json(s.tallies);
  j["cpet_records"] = std::move(records);
  j["counterexamples"] = s.counterexamples;
  j["completed"] = s.completed;
  return j;
}

RunState state_from_checkpoint(const nlohmann::json& j) {
  RunState s;
  s.n = j.at("position").at("n").get<int>();
  s.next_index = j.at("position").at("next_index").get<std::uint64_t>();
  s.output_bytes = j.at("output_bytes").get<std::uint64_t>();
  s.records_written = j.at("records_written").get<std::uint64_t>();
  for (const auto& t : j.at("tallies")) {
    s.tallies.push_back({t.at("n").get<int>(), t.at("generated").get<std::uint64_t>(),
                         t.at("analyzed").get<std::uint64_t>(), t.at("cpet").get<std::uint64_t>(),
                         t.at("e_positive").get<std::uint64_t>()});
  }
  for (const auto& r : j.at("cpet_records")) s.cpet_records.push_back(ScanRecord::from_json(r));
  s.counterexamples = j.at("counterexamples").get<std::vector<std::string>>();
  s.completed = j.at("completed").get<bool>();
  return s;
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw ScanError("cannot write " + temp);
    out << text;
    out.flush();
    if (!out) throw ScanError("failed writing " + temp);
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) throw ScanError("cannot replace " + path + ": " + ec.message());
}

std::optional<nlohmann::json> read_checkpoint(const std::string& path, bool& corrupted) {
  corrupted = false;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format").get<int>() != 1) throw std::runtime_error("format");
    state_from_checkpoint(j);
    return j;
  } catch (const std::exception&) {
    corrupted = true;
    return std::nullopt;
  }
}

bool passes_filter(const DegreeStats& stats, const ScanConfig& config) {
  if (stats.max_degree < config.min_delta) return false;
  if (config.max_delta && stats.max_degree > *config.max_delta) return false;
  if (stats.is_spider && !config.include_spiders) return false;
  return true;
}

struct Pending {
  std::uint64_t index;
  std::vector<int> levels;
};

// Analyzes the batch; worker w takes the trees whose generation index is
// congruent to w modulo the worker count.
std::vector<std::optional<ScanRecord>> analyze_batch(const std::vector<Pending>& batch, const ScanConfig& config) {
  std::vector<std::optional<ScanRecord>> results(batch.size());
  const int workers = std::min<int>(config.workers, static_cast<int>(batch.size()));
  auto work = [&](int shard) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (static_cast<int>(batch[i].index % workers) != shard) continue;
      const auto start = Clock::now();
      const Tree t = Tree::from_level_sequence(batch[i].levels);
      if (!passes_filter(degree_stats(t), config)) continue;
      ScanRecord r = analyze_tree(t, batch[i].index);
      if (config.record_timing) {
        r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      }
      results[i] = std::move(r);
    }
  };
  if (workers <= 1) {
    work(0);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        work(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

ScanSummary summarize(const ScanConfig& config, const RunState& s, bool interrupted, double seconds) {
  ScanSummary summary;
  summary.completed = s.completed;
  summary.interrupted = interrupted;
  summary.records_written = s.records_written;
  summary.counterexample_found = config.mode == ScanMode::VerifyConjecture && !s.counterexamples.empty();

  auto& doc = summary.document;
  doc["config"] = config.identity();
  doc["completed"] = s.completed;
  doc["interrupted"] = interrupted;
  doc["records_written"] = s.records_written;
  doc["per_n"] = tallies_json(s.tallies);
  nlohmann::ordered_json cpet = nlohmann::ordered_json::array();
  for (const auto& r : s.cpet_records) {
    nlohmann::ordered_json row;
    row["code"] = r.code;
    row["n"] = r.n;
    row["max_degree"] = r.max_degree;
    row["is_spider"] = r.is_spider;
    row["e_positive"] = r.e_positive;
    row["first_negative"] = r.to_json()["first_negative"];
    cpet.push_back(std::move(row));
  }
  doc["cpet_trees"] = std::move(cpet);
  doc["counterexamples"] = s.counterexamples;
  if (config.mode == ScanMode::ProbeProblems) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : probe_problems(s.cpet_records)) rows.push_back(row.to_json());
    doc["problems"] = std::move(rows);
  }
  doc["elapsed_seconds"] = seconds;
  return summary;
}

std::string summary_path(const ScanConfig& config) {
  return config.summary_path.empty() ? config.output_path + ".summary.json" : config.summary_path;
}

ScanSummary execute(const ScanConfig& config, RunState state, const ScanControl& control) {
  const auto started = Clock::now();
  std::ofstream out(config.output_path, std::ios::binary | std::ios::app);
  if (!out) throw ScanError("cannot open output " + config.output_path);

  auto checkpoint = [&] {
    out.flush();
    if (!out) throw ScanError("failed writing " + config.output_path);
    write_atomically(config.checkpoint_path, checkpoint_json(config, state).dump() + "\n");
  };
  checkpoint();

  const std::uint64_t batch_size = 256 * static_cast<std::uint64_t>(config.workers);
  std::uint64_t generated_here = 0;
  std::uint64_t since_checkpoint = 0;
  auto last_checkpoint = Clock::now();
  bool interrupted = false;

  if (state.n < config.n_min) state.n = config.n_min;
  while (state.n <= config.n_max && !interrupted) {
    state.tally(state.n);
    FreeTreeGenerator gen(state.n);
    bool have = gen.skip_to(state.next_index);
    while (have) {
      std::uint64_t limit = std::min(batch_size, config.checkpoint_every - since_checkpoint);
      if (control.stop_after) limit = std::min(limit, *control.stop_after - generated_here);
      std::vector<Pending> batch;
      while (have && batch.size() < limit) {
        batch.push_back({gen.index(), std::vector<int>(gen.levels().begin(), gen.levels().end())});
        have = gen.next();
      }
      const auto results = analyze_batch(batch, config);
      Tally& tally = state.tally(state.n);
      for (const auto& r : results) {
        if (!r) continue;
        const std::string line = r->to_json().dump() + "\n";
        out << line;
        state.output_bytes += line.size();
        ++state.records_written;
        ++tally.analyzed;
        if (r->cpet) {
          ++tally.cpet;
          state.cpet_records.push_back(*r);
        }
        if (r->e_positive) {
          ++tally.e_positive;
          if (r->max_degree >= 4) state.counterexamples.push_back(r->code);
        }
      }
      tally.generated += batch.size();
      generated_here += batch.size();
      since_checkpoint += batch.size();
      state.next_index = batch.empty() ? state.next_index : batch.back().index + 1;

      const bool cancelled = control.cancel && control.cancel->load();
      const bool budget_spent = control.stop_after && generated_here >= *control.stop_after;
      if (!have) break;
      if (cancelled || budget_spent) {
        interrupted = true;
        break;
      }
      if (since_checkpoint >= config.checkpoint_every || Clock::now() - last_checkpoint >= config.checkpoint_interval) {
        checkpoint();
        since_checkpoint = 0;
        last_checkpoint = Clock::now();
      }
    }
    if (interrupted) break;
    ++state.n;
    state.next_index = 0;
    const bool cancelled = control.cancel && control.cancel->load();
    const bool budget_spent = control.stop_after && generated_here >= *control.stop_after;
    if ((cancelled || budget_spent) && state.n <= config.n_max) interrupted = true;
  }
  state.completed = !interrupted;
  checkpoint();
  const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
  ScanSummary summary = summarize(config, state, interrupted, seconds);
  write_atomically(summary_path(config), summary.document.dump(2) + "\n");
  return summary;
}

}  // namespace

ScanSummary run_scan(const ScanConfig& config, const ScanControl& control) {
  config.validate();
  bool corrupted = false;
  if (fs::exists(config.checkpoint_path) && !control.restart) {
    auto existing = read_checkpoint(config.checkpoint_path, corrupted);
    if (corrupted) {
      throw ResumeRefused("checkpoint " + config.checkpoint_path + " is unreadable; pass --restart to discard it");
    }
    if (existing && !existing->at("completed").get<bool>()) {
      throw ResumeRefused("unfinished checkpoint " + config.checkpoint_path +
                          " exists; pass --resume to continue or --restart to discard it");
    }
  }
  {
    std::ofstream truncate(config.output_path, std::ios::binary | std::ios::trunc);
    if (!truncate) throw ScanError("cannot write output " + config.output_path);
  }
  RunState state;
  state.n = config.n_min;
  return execute(config, std::move(state), control);
}

ScanSummary resume(const ScanConfig& config, const ScanControl& control) {
  config.validate();
  if (!fs::exists(config.checkpoint_path)) {
    throw ResumeRefused("no checkpoint at " + config.checkpoint_path + "; start a fresh run without --resume");
  }
  bool corrupted = false;
  auto j = read_checkpoint(config.checkpoint_path, corrupted);
  if (!j) {
    throw ResumeRefused("checkpoint " + config.checkpoint_path + " is corrupted; pass --restart to start over");
  }
  if (j->at("fingerprint").get<std::string>() != config.fingerprint()) {
    throw ResumeRefused("scan configuration differs from checkpoint " + config.checkpoint_path + " (was " +
                        j->at("config").dump() + ")");
  }
  RunState state = state_from_checkpoint(*j);
  std::error_code ec;
  const auto size = fs::file_size(config.output_path, ec);
  if (ec || size < state.output_bytes) {
    throw ResumeRefused("output " + config.output_path + " is shorter than the checkpoint records");
  }
  // Drop anything written after the checkpoint.
  fs::resize_file(config.output_path, state.output_bytes, ec);
  if (ec) throw ScanError("cannot truncate " + config.output_path + ": " + ec.message());
  if (state.completed) {
    ScanSummary summary = summarize(config, state, false, 0.0);
    write_atomically(summary_path(config), summary.document.dump(2) + "\n");
    return summary;
  }
  return execute(config, std::move(state), control);
}

}  // namespace csft
