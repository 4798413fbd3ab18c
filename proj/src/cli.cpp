#include "csft/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "csft/criteria.hpp"
#include "csft/csf.hpp"
#include "csft/scan.hpp"
#include "csft/sympoly.hpp"
#include "csft/tabloid.hpp"
#include "csft/tree.hpp"

namespace csft {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  bool json = false;
  bool quiet = false;
  int threads = 0;
};

std::vector<int> parts_of(const Partition& p) { return {p.parts().begin(), p.parts().end()}; }

void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw UsageError("--n expects N or A..B, got '" + text + "'");
  }
}

std::string status_word(const CriterionResult& r) {
  if (!r.applicable) return "n/a";
  return r.violated ? "violated" : "ok";
}

int run_expand(const Globals& g, const std::string& spec, const std::string& basis, std::ostream& out) {
  const Tree t = parse_tree_spec(spec);
  const std::string code = canonical_code(t).to_string();
  if (basis == "p") {
    const SymPoly poly = p_expansion(t);
    if (g.json) {
      emit(out, {{"tree", code}, {"expansion", poly.to_json()}});
    } else {
      out << poly.render();
    }
    return exit_code::ok;
  }
  const EposReport report = e_expansion(t);
  if (g.json) {
    nlohmann::json j = report.to_json();
    j["tree"] = code;
    j["expansion"] = report.as_sympoly().to_json();
    emit(out, j);
    return exit_code::ok;
  }
  out << report.as_sympoly().render();
  if (!g.quiet) {
    out << "e-positive: " << (report.e_positive ? "yes" : "no");
    if (report.first_negative) {
      out << " (first negative coefficient " << report.first_negative->second.str() << " at "
          << report.first_negative->first.to_string() << ")";
    }
    out << '\n';
  }
  return exit_code::ok;
}

int run_btable(const Globals& g, const std::string& spec, bool nonzero, std::ostream& out) {
  const Tree t = parse_tree_spec(spec);
  const BTable b = b_table(t);
  if (g.json) {
    nlohmann::json j = b.to_json();
    j["tree"] = canonical_code(t).to_string();
    j["cpet"] = b.is_cpet();
    emit(out, j);
    return exit_code::ok;
  }
  for (std::size_t i = 0; i < b.counts().size(); ++i) {
    if (nonzero && b.at_index(i) == 0) continue;
    out << b.catalog().at(i).to_string() << ": " << b.at_index(i) << '\n';
  }
  return exit_code::ok;
}

int run_sinks(const Globals& g, const std::string& spec, std::ostream& out) {
  const Tree t = parse_tree_spec(spec);
  const SinkTable sinks = sink_counts(t);
  if (g.json) {
    nlohmann::json j = sinks.to_json();
    j["tree"] = canonical_code(t).to_string();
    emit(out, j);
    return exit_code::ok;
  }
  for (std::size_t j = 1; j < sinks.sinks.size(); ++j) out << "j=" << j << ": " << sinks.sinks[j].str() << '\n';
  return exit_code::ok;
}

int run_stk(const Globals& g, const std::string& spec, int s, int tt, int k, bool reduced, std::ostream& out) {
  const Tree t = parse_tree_spec(spec);
  const BTable b = b_table(t);
  const BigInt value = reduced ? reduced_stk_sum(b, s, tt, k) : coefficient_stk(b, s, tt, k);
  if (g.json) {
    emit(out, {{"tree", canonical_code(t).to_string()},
               {"s", s},
               {"t", tt},
               {"k", k},
               {"reduced", reduced},
               {"value", value.str()}});
  } else {
    out << value.str() << '\n';
  }
  return exit_code::ok;
}

int run_criteria(const Globals& g, const std::string& spec, const std::vector<std::string>& only, bool all,
                 std::ostream& out) {
  for (const auto& name : only) {
    const auto& names = criterion_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw UsageError("unknown criterion '" + name + "'");
    }
  }
  const Tree t = parse_tree_spec(spec);
  CriteriaOptions options;
  options.only = only;
  options.short_circuit = !all;
  const CriteriaVerdict verdict = run_all(t, options);
  if (g.json) {
    emit(out, verdict.to_json());
    return exit_code::ok;
  }
  for (const auto& r : verdict.entries) {
    out << r.name << ": " << status_word(r);
    if (r.applicable && !r.witness.empty()) out << " (" << r.witness << ")";
    out << '\n';
  }
  return exit_code::ok;
}

int run_tabloid(const Globals& g, const std::string& kind, const std::string& content_text,
                const std::string& shape_text, bool list, std::ostream& out) {
  Partition content, shape;
  try {
    content = Partition::parse(content_text);
    shape = Partition::parse(shape_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (content.size() != shape.size()) throw UsageError("content and shape must have the same size");
  const BigInt value = kind == "w" ? weight_sum(content, shape) : ordered_count(content, shape);
  std::vector<BrickTabloid> tabloids;
  if (list) tabloids = enumerate_brick_tabloids(content, shape);
  if (g.json) {
    nlohmann::json j = {{"kind", kind}, {"content", parts_of(content)}, {"shape", parts_of(shape)},
                        {"value", value.str()}};
    if (list) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& b : tabloids) rows.push_back({{"rows", b.rows}, {"weight", b.weight().str()}});
      j["tabloids"] = std::move(rows);
    }
    emit(out, j);
    return exit_code::ok;
  }
  out << value.str() << '\n';
  for (const auto& b : tabloids) {
    for (std::size_t r = 0; r < b.rows.size(); ++r) {
      out << (r == 0 ? "" : " | ");
      for (std::size_t i = 0; i < b.rows[r].size(); ++i) out << (i ? " " : "") << b.rows[r][i];
    }
    out << "  weight " << b.weight().str() << '\n';
  }
  return exit_code::ok;
}

int run_fixtures(const Globals& g, const std::string& only, std::ostream& out) {
  std::vector<std::string> names = fixture_names();
  if (!only.empty()) {
    if (std::find(names.begin(), names.end(), only) == names.end()) throw UsageError("unknown fixture '" + only + "'");
    names = {only};
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& name : names) {
    const Tree t = fixture_tree(name);
    if (g.json) {
      nlohmann::json edges = nlohmann::json::array();
      for (const auto& [u, v] : t.edges()) edges.push_back({u, v});
      rows.push_back({{"name", name}, {"n", t.size()}, {"code", canonical_code(t).to_string()}, {"edges", edges}});
    } else {
      out << "# " << name << " n=" << t.size() << " " << canonical_code(t).to_string() << '\n';
      out << format_edge_list(t);
    }
  }
  if (g.json) emit(out, rows);
  return exit_code::ok;
}

struct ScanArgs {
  std::string n_range;
  int min_delta = 0;
  std::optional<int> max_delta;
  std::string mode = "find_cpet";
  int jobs = 0;
  std::string out_path;
  std::string checkpoint_path;
  std::string summary_path;
  bool include_spiders = false;
  bool resume = false;
  bool restart = false;
  bool timing = false;
  std::uint64_t checkpoint_every = 10000;
  std::optional<std::uint64_t> stop_after;
};

int run_scan_verb(const Globals& g, const ScanArgs& a, std::ostream& out, std::ostream& err,
                  const std::atomic<bool>* cancel) {
  if (a.resume && a.restart) throw UsageError("--resume and --restart are mutually exclusive");
  ScanConfig config;
  std::tie(config.n_min, config.n_max) = parse_range(a.n_range);
  config.min_delta = a.min_delta;
  config.max_delta = a.max_delta;
  config.include_spiders = a.include_spiders;
  try {
    config.mode = parse_mode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.workers = a.jobs > 0 ? a.jobs : (g.threads > 0 ? g.threads : 1);
  config.output_path = a.out_path;
  config.checkpoint_path = a.checkpoint_path.empty() ? a.out_path + ".ckpt.json" : a.checkpoint_path;
  config.summary_path = a.summary_path;
  config.checkpoint_every = a.checkpoint_every;
  config.record_timing = a.timing;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  ScanControl control;
  control.cancel = cancel;
  control.stop_after = a.stop_after;
  control.restart = a.restart;
  ScanSummary summary;
  try {
    summary = a.resume ? resume(config, control) : run_scan(config, control);
  } catch (const ResumeRefused& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::resume_refused;
  }

  if (g.json) {
    emit(out, summary.document);
  } else if (!g.quiet) {
    for (const auto& row : summary.document["per_n"]) {
      out << "n=" << row["n"].get<int>() << ": generated " << row["generated"].get<std::uint64_t>() << ", analyzed "
          << row["analyzed"].get<std::uint64_t>() << ", cpet " << row["cpet"].get<std::uint64_t>()
          << ", e-positive " << row["e_positive"].get<std::uint64_t>() << '\n';
    }
    for (const auto& row : summary.document["cpet_trees"]) {
      out << "cpet n=" << row["n"].get<int>() << " " << row["code"].get<std::string>()
          << (row["e_positive"].get<bool>() ? " e-positive" : " not e-positive") << '\n';
    }
    for (const auto& code : summary.document["counterexamples"]) {
      out << "e-positive with max degree >= 4: " << code.get<std::string>() << '\n';
    }
    if (summary.interrupted) out << "interrupted; continue with --resume\n";
  }
  if (summary.interrupted) return exit_code::interrupted;
  return summary.counterexample_found ? exit_code::counterexample : exit_code::ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* cancel) {
  CLI::App app{"Chromatic symmetric functions of trees: expansions, e-positivity criteria and exhaustive scans",
               "csft"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--quiet", g.quiet, "Suppress informational output");
  app.add_option("--threads", g.threads, "Worker threads for scan")->check(CLI::PositiveNumber);

  std::string spec, basis = "e";
  auto* expand = app.add_subcommand("expand", "Chromatic symmetric function in the e or p basis");
  expand->add_option("--tree", spec, "Tree spec")->required();
  expand->add_option("--basis", basis, "e or p")->check(CLI::IsMember({"e", "p"}));

  bool nonzero = false;
  auto* btable = app.add_subcommand("btable", "Connected partition counts by type");
  btable->add_option("--tree", spec, "Tree spec")->required();
  btable->add_flag("--nonzero", nonzero, "Only list types that occur");

  auto* sinks = app.add_subcommand("sinks", "Acyclic orientations by number of sinks");
  sinks->add_option("--tree", spec, "Tree spec")->required();

  int s = 0, t = 0, k = 0;
  bool reduced = false;
  auto* stk = app.add_subcommand("stk");
  stk->description("Coefficient of e at the shape (s, t^k) or its reduced sum");
  stk->add_option("--tree", spec, "Tree spec")->required();
  stk->add_option("--s", s)->required();
  stk->add_option("--t", t)->required();
  stk->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  stk->add_flag("--reduced", reduced, "Print the reduced sum instead of the coefficient");

  std::vector<std::string> only;
  bool all = false;
  auto* criteria = app.add_subcommand("criteria", "Necessary conditions for e-positivity");
  criteria->add_option("--tree", spec, "Tree spec")->required();
  criteria->add_option("--only", only, "Comma-separated criterion names")->delimiter(',');
  criteria->add_flag("--all", all, "Keep evaluating after the first violation");

  std::string kind, content, shape;
  bool list = false;
  auto* tabloid = app.add_subcommand("tabloid", "Brick tabloid weight sums (w) and ordered counts (ob)");
  tabloid->add_option("kind", kind)->required()->check(CLI::IsMember({"w", "ob"}));
  tabloid->add_option("content", content, "Brick lengths, e.g. 2,2,1,1")->required();
  tabloid->add_option("shape", shape, "Row lengths, e.g. 4,2")->required();
  tabloid->add_flag("--list", list, "Also list the tabloids");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Exhaustive scan over non-isomorphic trees");
  scan->add_option("--n", sa.n_range, "Vertex count N or range A..B")->required();
  scan->add_option("--min-delta", sa.min_delta, "Minimum maximum degree");
  scan->add_option("--max-delta", sa.max_delta, "Maximum maximum degree");
  scan->add_option("--mode", sa.mode, "verify_conjecture, find_cpet or probe_problems");
  scan->add_option("--jobs", sa.jobs, "Worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--out", sa.out_path, "Record output (JSON lines)")->required();
  scan->add_option("--checkpoint", sa.checkpoint_path, "Checkpoint file (default <out>.ckpt.json)");
  scan->add_option("--summary", sa.summary_path, "Summary file (default <out>.summary.json)");
  scan->add_option("--checkpoint-every", sa.checkpoint_every, "Trees between checkpoints")
      ->check(CLI::PositiveNumber);
  scan->add_option("--stop-after", sa.stop_after, "Checkpoint and stop after this many trees");
  scan->add_flag("--include-spiders", sa.include_spiders, "Also analyze spiders");
  scan->add_flag("--timing", sa.timing, "Record per-tree wall time");
  scan->add_flag("--resume", sa.resume, "Continue from the checkpoint");
  scan->add_flag("--restart", sa.restart, "Discard an existing checkpoint");

  std::string fixture_name;
  auto* fixtures = app.add_subcommand("fixtures", "Print the built-in trees T1..T4 as edge lists");
  fixtures->add_option("--name", fixture_name, "Only this fixture");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_code::ok;
    }
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return exit_code::usage;
  }

  try {
    if (*expand) return run_expand(g, spec, basis, out);
    if (*btable) return run_btable(g, spec, nonzero, out);
    if (*sinks) return run_sinks(g, spec, out);
    if (*stk) return run_stk(g, spec, s, t, k, reduced, out);
    if (*criteria) return run_criteria(g, spec, only, all, out);
    if (*tabloid) return run_tabloid(g, kind, content, shape, list, out);
    if (*scan) return run_scan_verb(g, sa, out, err, cancel);
    if (*fixtures) return run_fixtures(g, fixture_name, out);
  } catch (const std::invalid_argument& e) {
    // Malformed tree specs, partitions and unsupported parameters.
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  return exit_code::usage;
}

}  // namespace csft
