// Copyright 2026 The drtest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "drt/curve_table.hpp"
#include "drt/error.hpp"
#include "drt/harness.hpp"
#include "drt/rank_tests.hpp"
#include "drt/results_io.hpp"
#include "drt/simgen.hpp"

namespace drt::cli {
namespace {

using nlohmann::json;

struct TestOptions {
  std::string input;
  std::string layout = "auto";
  std::string summary = "suff";
  std::string preprocess = "pve=0.99";
  std::string alternative = "two-sided";
  std::string format = "text";
  int exact_threshold = kDefaultExactThreshold;
  bool no_continuity_correction = false;
  bool verbose = false;
};

struct ExperimentOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  bool full_scale = false;
  int groups = 2;
  std::string S;
  std::string n;
  std::string distributions;
  std::string mean_fns;
  std::string xi;
  std::string noise;
  std::optional<int> K;
  std::string summaries;
  std::string preprocess;
  std::optional<double> alpha;
  std::optional<int> threads;
  std::string out;
  std::string out_format = "csv";
  bool quiet = false;
};

struct SimulateOptions {
  std::uint64_t seed = 1;
  std::string n = "10x10";
  int S = 40;
  int K = 1000;
  std::string distribution = "gaussian";
  std::string mean_fn = "none";
  double xi = 0.0;
  std::string noise = "ar1";
  std::string out;
};

std::optional<double> parse_preprocess_flag(const std::string& text) {
  if (text == "none") return std::nullopt;
  const std::string number = text.starts_with("pve=") ? text.substr(4) : text;
  try {
    std::size_t used = 0;
    const double pve = std::stod(number, &used);
    if (used != number.size()) throw std::invalid_argument(number);
    if (!(pve > 0.0 && pve <= 1.0)) throw InvalidInput("--preprocess pve must lie in (0, 1]");
    return pve;
  } catch (const std::logic_error&) {
    throw InvalidInput("--preprocess expects none or pve=<p>, got '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string statistic_name(const TestResult& r) { return r.method == TestMethod::KwChiSq ? "H_DR" : "T+_DR"; }

json report_json(const CurveTable& table, const DoublyRankedDetail& detail, const DoublyRankedConfig& config) {
  const TestResult& r = detail.result;
  json j;
  j["schema"] = kReportSchema;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = software_version();
  j["test"] = r.method == TestMethod::KwChiSq ? "KW" : "MWW";
  j["method"] = to_string(r.method);
  j["statistic_name"] = statistic_name(r);
  j["statistic"] = r.statistic;
  j["z_or_df"] = r.z_or_df;
  j["p_value"] = r.p_value;
  j["alternative"] = to_string(r.alternative);
  j["group_labels"] = table.group_labels;
  j["group_sizes"] = r.group_sizes;
  j["tie_correction_applied"] = r.tie_correction_applied;
  j["continuity_correction"] = r.continuity_correction;
  j["summary"] = to_string(config.summary);
  j["n"] = table.curves.n();
  j["S"] = table.curves.S();
  if (config.preprocess_pve) {
    j["preprocess"] = {{"method", "fpca"},
                       {"pve", *config.preprocess_pve},
                       {"components_kept", *detail.components_kept},
                       {"pve_achieved", *detail.pve_achieved}};
  } else {
    j["preprocess"] = nullptr;
  }
  return j;
}

void print_report_text(std::ostream& out, const CurveTable& table, const DoublyRankedDetail& detail,
                       const DoublyRankedConfig& config, const std::optional<TestResult>& uncorrected) {
  const TestResult& r = detail.result;
  const bool kw = r.method == TestMethod::KwChiSq;
  out << "Doubly ranked " << (kw ? "Kruskal-Wallis" : "Mann-Whitney-Wilcoxon") << " test\n";
  out << "  summary        : " << to_string(config.summary) << '\n';
  out << "  preprocessing  : ";
  if (config.preprocess_pve) {
    out << "fpca pve=" << *config.preprocess_pve << " (" << *detail.components_kept << " components, "
        << std::setprecision(6) << *detail.pve_achieved << " of variance)\n";
  } else {
    out << "none\n";
  }
  out << "  groups         :";
  for (std::size_t g = 0; g < r.group_sizes.size(); ++g) {
    out << ' ' << table.group_labels[g] << '=' << r.group_sizes[g];
  }
  out << "  (n=" << table.curves.n() << ", S=" << table.curves.S() << ")\n";
  out << std::setprecision(10);
  out << "  " << std::left << std::setw(15) << statistic_name(r) << ": " << r.statistic << '\n';
  if (kw) {
    out << "  df             : " << r.z_or_df << '\n';
  } else {
    out << "  normal deviate : " << r.z_or_df << '\n';
    out << "  alternative    : " << to_string(r.alternative) << '\n';
  }
  out << "  method         : " << to_string(r.method) << (r.tie_correction_applied ? " (tie-corrected)" : "") << '\n';
  out << "  p-value        : " << r.p_value << '\n';
  if (uncorrected) {
    out << "  p-value (no continuity correction): " << uncorrected->p_value << '\n';
  }
}

int cmd_test(const TestOptions& opts, std::ostream& out, std::ostream& err) {
  const CurveTable table = read_curve_table(opts.input, parse_curve_layout(opts.layout));
  for (const auto& w : table.warnings) err << "warning: " << w << '\n';

  DoublyRankedConfig config;
  config.summary = parse_summary_kind(opts.summary);
  config.preprocess_pve = parse_preprocess_flag(opts.preprocess);
  config.alternative = parse_alternative(opts.alternative);
  config.exact_threshold = opts.exact_threshold;
  config.continuity_correction = !opts.no_continuity_correction;
  const auto detail = doubly_ranked_test_detailed(table.curves, config);

  std::optional<TestResult> uncorrected;
  if (opts.verbose && detail.result.method == TestMethod::MwwNormal && config.continuity_correction) {
    DoublyRankedConfig plain = config;
    plain.continuity_correction = false;
    uncorrected = test_scores(detail.scores.scores, table.curves.groups(), table.curves.G(), plain);
  }

  if (opts.format == "json") {
    json j = report_json(table, detail, config);
    if (uncorrected) j["p_value_no_continuity_correction"] = uncorrected->p_value;
    out << j.dump(2) << '\n';
  } else if (opts.format == "text") {
    print_report_text(out, table, detail, config, uncorrected);
  } else {
    throw InvalidInput("--format must be text or json");
  }
  return kExitOk;
}

int default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      return std::stoi(env);
    } catch (const std::logic_error&) {
      throw InvalidInput(std::string(kThreadsEnv) + " must be an integer");
    }
  }
  return 0;
}

ExperimentGrid build_grid(const ExperimentOptions& opts, bool power) {
  if (opts.groups < 2) throw InvalidInput("--groups must be >= 2");
  ExperimentGrid grid = power ? default_power_grid(opts.groups) : default_type1_grid(opts.groups);
  grid.threads = default_threads();
  if (opts.full_scale) grid.replicates = power ? kFullPowerReplicates : kFullType1Replicates;
  if (!opts.config.empty()) grid = load_grid(opts.config, grid);

  if (opts.seed) grid.base.seed = *opts.seed;
  if (opts.replicates) grid.replicates = *opts.replicates;
  if (!opts.S.empty()) {
    grid.S_values.clear();
    for (const auto& s : split_list(opts.S)) grid.S_values.push_back(std::stoi(s));
  }
  if (!opts.n.empty()) grid.n_schemes = parse_n_schemes(opts.n);
  if (!opts.distributions.empty()) {
    grid.distributions.clear();
    for (const auto& d : split_list(opts.distributions)) grid.distributions.push_back(parse_coeff_dist(d));
  }
  if (!opts.mean_fns.empty()) {
    grid.mean_fns.clear();
    for (const auto& m : split_list(opts.mean_fns)) grid.mean_fns.push_back(parse_mean_fn(m));
  }
  if (!opts.xi.empty()) grid.xi_values = parse_xi_values(opts.xi);
  if (!opts.noise.empty()) grid.base.noise = parse_noise(opts.noise);
  if (opts.K) grid.base.K = *opts.K;
  if (!opts.summaries.empty()) {
    grid.summaries.clear();
    for (const auto& s : split_list(opts.summaries)) grid.summaries.push_back(parse_summary_kind(s));
  }
  if (!opts.preprocess.empty()) grid.preprocess_pve = parse_preprocess_flag(opts.preprocess);
  if (opts.alpha) grid.alpha = *opts.alpha;
  if (opts.threads) grid.threads = *opts.threads;
  validate(grid);
  return grid;
}

void print_cell(std::ostream& out, const CellResult& r) {
  const CellKey& c = r.cell;
  std::string scheme;
  for (std::size_t g = 0; g < c.n_per_group.size(); ++g) scheme += (g ? "x" : "") + std::to_string(c.n_per_group[g]);
  out << c.test() << ' ' << to_string(c.distribution) << ' ' << to_string(c.mean_fn) << " S=" << c.S
      << " n=" << scheme << " xi=" << format_double(c.xi) << ' ' << to_string(c.summary) << "  rate=" << std::fixed
      << std::setprecision(4) << r.rejection_rate << " (se " << r.mc_stderr << ", reps " << r.replicates_used << ")\n"
      << std::defaultfloat;
}

int cmd_experiment(const ExperimentOptions& opts, bool power, std::ostream& out) {
  const ExperimentGrid grid = build_grid(opts, power);
  const ResultFormat format = parse_result_format(opts.out_format);
  if (!opts.quiet) {
    out << (power ? "power" : "type-I") << " study: seed " << grid.base.seed << ", " << grid.replicates
        << " replicates per cell, K=" << grid.base.K << ", noise " << to_string(grid.base.noise) << '\n';
  }
  auto on_cell = [&](const CellResult& r) {
    if (!opts.quiet) print_cell(out, r);
  };
  const auto results = power ? run_power(grid, on_cell) : run_type1(grid, on_cell);
  if (!opts.out.empty()) {
    write_results(results, opts.out, format);
    if (!opts.quiet) out << "wrote " << results.size() << " cells to " << opts.out << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
  SimConfig config;
  config.seed = opts.seed;
  config.n_per_group = parse_n_schemes(opts.n).front();
  config.S = opts.S;
  config.K = opts.K;
  config.coeff_dist = parse_coeff_dist(opts.distribution);
  config.mean_fn = parse_mean_fn(opts.mean_fn);
  config.xi = opts.xi;
  config.noise = parse_noise(opts.noise);
  validate(config);
  const CurveSet data = generate_dataset(config);
  if (opts.out.empty()) {
    write_wide_csv(out, data);
    return kExitOk;
  }
  std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + opts.out + "' for writing");
  write_wide_csv(file, data);
  if (!file.flush()) throw std::runtime_error("write to '" + opts.out + "' failed");
  return kExitOk;
}

void add_experiment_flags(CLI::App* cmd, ExperimentOptions& o, bool power) {
  cmd->add_option("--config", o.config, "Grid config file (key = value lines)");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--replicates", o.replicates, "Replicates per cell");
  cmd->add_flag("--full-scale", o.full_scale, "Use 10000 (type-I) / 500 (power) replicates");
  cmd->add_option("--groups", o.groups, "Groups per default n scheme (2 = MWW, 3 = KW)");
  cmd->add_option("--S", o.S, "Comma list of grid sizes");
  cmd->add_option("--n", o.n, "Group-size schemes, e.g. 10x10;25x25");
  cmd->add_option("--distributions", o.distributions, "Comma list: gaussian,t2");
  if (power) {
    cmd->add_option("--mean-fns", o.mean_fns, "Comma list: mu1,mu2,mu3");
    cmd->add_option("--xi", o.xi, "Comma list or start:stop:step");
  }
  cmd->add_option("--noise", o.noise, "none | white | ar1 | ar1(<rho>)");
  cmd->add_option("--K", o.K, "Karhunen-Loeve truncation");
  cmd->add_option("--summaries", o.summaries, "Comma list: suff,avg");
  cmd->add_option("--preprocess", o.preprocess, "none | pve=<p>");
  cmd->add_option("--alpha", o.alpha, "Test level");
  cmd->add_option("--threads", o.threads, std::string("Worker threads (default $") + kThreadsEnv + " or all cores)");
  cmd->add_option("--out", o.out, "Result table path");
  cmd->add_option("--out-format", o.out_format, "csv | jsonl");
  cmd->add_flag("--quiet", o.quiet, "Suppress per-cell lines");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Doubly ranked rank tests for grouped functional data", "drtest"};
  app.require_subcommand(1);
  app.set_version_flag("--version", software_version());

  TestOptions test_opts;
  auto* test_cmd = app.add_subcommand("test", "Run a doubly ranked MWW/KW test on a CSV curve table");
  test_cmd->add_option("input", test_opts.input, "CSV file (wide: id,group,v1..vS; long: id,group,s,value)")->required();
  test_cmd->add_option("--layout", test_opts.layout, "auto | wide | long");
  test_cmd->add_option("--summary", test_opts.summary, "suff | avg");
  test_cmd->add_option("--preprocess", test_opts.preprocess, "none | pve=<p>");
  test_cmd->add_option("--alternative", test_opts.alternative, "two-sided | less | greater (MWW only)");
  test_cmd->add_option("--format", test_opts.format, "text | json");
  test_cmd->add_option("--exact-threshold", test_opts.exact_threshold, "Largest n for the exact MWW null");
  test_cmd->add_flag("--no-continuity-correction", test_opts.no_continuity_correction);
  test_cmd->add_flag("--verbose", test_opts.verbose, "Also report the uncorrected normal p-value");

  ExperimentOptions type1_opts;
  auto* type1_cmd = app.add_subcommand("type1", "Monte Carlo type-I error study");
  add_experiment_flags(type1_cmd, type1_opts, false);

  ExperimentOptions power_opts;
  auto* power_cmd = app.add_subcommand("power", "Monte Carlo power study");
  add_experiment_flags(power_cmd, power_opts, true);

  SimulateOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "Write one simulated dataset as a wide CSV");
  sim_cmd->add_option("--seed", sim_opts.seed, "Seed");
  sim_cmd->add_option("--n", sim_opts.n, "Group sizes, e.g. 10x10");
  sim_cmd->add_option("--S", sim_opts.S, "Grid size");
  sim_cmd->add_option("--K", sim_opts.K, "Karhunen-Loeve truncation");
  sim_cmd->add_option("--distribution", sim_opts.distribution, "gaussian | t2");
  sim_cmd->add_option("--mean-fn", sim_opts.mean_fn, "none | mu1 | mu2 | mu3");
  sim_cmd->add_option("--xi", sim_opts.xi, "Mean-shift scale");
  sim_cmd->add_option("--noise", sim_opts.noise, "none | white | ar1 | ar1(<rho>)");
  sim_cmd->add_option("--out", sim_opts.out, "Output path (default stdout)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*test_cmd) return cmd_test(test_opts, out, err);
    if (*type1_cmd) return cmd_experiment(type1_opts, false, out);
    if (*power_cmd) return cmd_experiment(power_opts, true, out);
    if (*sim_cmd) return cmd_simulate(sim_opts, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSize& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // std::stoi and friends on malformed flag values
    err << "error: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace drt::cli
