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

#include "drt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "drt/error.hpp"
#include "drt/preprocess.hpp"
#include "drt/rank_tests.hpp"
#include "drt/ranking.hpp"

namespace drt {

std::vector<double> default_xi_values() {
  std::vector<double> xi;
  for (int i = 0; i <= 25; ++i) xi.push_back(0.12 * i);
  return xi;
}

ExperimentGrid default_type1_grid(int groups) {
  if (groups < 2) throw InvalidInput("default_type1_grid: need at least 2 groups");
  ExperimentGrid grid;
  grid.n_schemes.clear();
  for (int size : {10, 25, 50}) grid.n_schemes.emplace_back(static_cast<std::size_t>(groups), size);
  grid.xi_values = {0.0};
  grid.mean_fns = {MeanFn::None};
  grid.replicates = kDeskType1Replicates;
  return grid;
}

ExperimentGrid default_power_grid(int groups) {
  ExperimentGrid grid = default_type1_grid(groups);
  grid.xi_values = default_xi_values();
  grid.mean_fns = {MeanFn::Mu1, MeanFn::Mu2, MeanFn::Mu3};
  grid.replicates = kDeskPowerReplicates;
  return grid;
}

void validate(const ExperimentGrid& grid) {
  if (grid.replicates < 1) throw InvalidInput("grid: replicates must be >= 1");
  if (!(grid.alpha > 0.0 && grid.alpha < 1.0)) throw InvalidInput("grid: alpha must lie in (0, 1)");
  if (grid.S_values.empty()) throw InvalidInput("grid: S list is empty");
  if (grid.n_schemes.empty()) throw InvalidInput("grid: n scheme list is empty");
  if (grid.distributions.empty()) throw InvalidInput("grid: distribution list is empty");
  if (grid.summaries.empty()) throw InvalidInput("grid: summary list is empty");
  if (grid.preprocess_pve && !(*grid.preprocess_pve > 0.0 && *grid.preprocess_pve <= 1.0)) {
    throw InvalidInput("grid: preprocess pve must lie in (0, 1]");
  }
  for (int S : grid.S_values) {
    if (S < 1) throw InvalidInput("grid: S values must be >= 1");
  }
  for (double xi : grid.xi_values) {
    if (!(xi >= 0.0)) throw InvalidInput("grid: xi values must be >= 0");
  }
  for (const auto& scheme : grid.n_schemes) {
    SimConfig probe = grid.base;
    probe.n_per_group = scheme;
    validate(probe);
  }
  validate(grid.base);
}

double binomial_stderr(double rate, int replicates) {
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(replicates));
}

namespace {

std::uint64_t scheme_key(const std::vector<int>& scheme) {
  std::uint64_t key = scheme.size();
  for (int size : scheme) key = splitmix64(key ^ static_cast<std::uint64_t>(size));
  return key;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Rejection flags for every (replicate, summary) pair of one data cell.
std::vector<std::uint8_t> simulate_cell(const ExperimentGrid& grid, const SimConfig& config,
                                        const std::vector<double>& grid_points) {
  const KlBasis basis(grid_points, config.K);
  const int reps = grid.replicates;
  const std::size_t n_summaries = grid.summaries.size();
  std::vector<std::uint8_t> rejected(static_cast<std::size_t>(reps) * n_summaries, 0);

  const std::uint64_t stream_keys[3] = {static_cast<std::uint64_t>(config.coeff_dist),
                                        static_cast<std::uint64_t>(config.S), scheme_key(config.n_per_group)};
  std::atomic<int> next{0};
  std::mutex failure_mutex;
  std::string failure;

  auto worker = [&] {
    for (int rep = next++; rep < reps; rep = next++) {
      try {
        Rng rng = make_stream(config.seed,
                              {stream_keys[0], stream_keys[1], stream_keys[2], static_cast<std::uint64_t>(rep)});
        const CurveSet data = generate_dataset(config, basis, rng);
        const RankCurves ranks =
            grid.preprocess_pve ? rank_columns(fpca_smooth(data, *grid.preprocess_pve).smoothed) : rank_curves(data);
        for (std::size_t j = 0; j < n_summaries; ++j) {
          DoublyRankedConfig test_config;
          test_config.summary = grid.summaries[j];
          const auto scores = summarize(ranks, grid.summaries[j]);
          const auto result = test_scores(scores.scores, data.groups(), data.G(), test_config);
          rejected[static_cast<std::size_t>(rep) * n_summaries + j] = result.p_value <= grid.alpha ? 1 : 0;
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (failure.empty()) {
          std::ostringstream os;
          os << "replicate " << rep << " of cell (dist=" << to_string(config.coeff_dist) << ", S=" << config.S
             << ", xi=" << config.xi << ") failed: " << e.what();
          failure = os.str();
        }
        next = reps;
      }
    }
  };

  const int workers = std::min(resolve_threads(grid.threads), reps);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (!failure.empty()) throw std::runtime_error(failure);
  return rejected;
}

std::vector<CellResult> run_cells(const ExperimentGrid& grid, const std::vector<double>& xi_values,
                                  const std::vector<MeanFn>& mean_fns, const CellCallback& on_cell) {
  validate(grid);
  std::vector<CellResult> results;
  for (CoeffDist dist : grid.distributions) {
    for (MeanFn mean : mean_fns) {
      for (int S : grid.S_values) {
        const auto grid_points = unit_grid(S);
        for (const auto& scheme : grid.n_schemes) {
          // summaries vary inside xi in the output, so buffer per scheme
          std::vector<std::vector<CellResult>> by_summary(grid.summaries.size());
          for (double xi : xi_values) {
            SimConfig config = grid.base;
            config.coeff_dist = dist;
            config.mean_fn = mean;
            config.xi = xi;
            config.S = S;
            config.n_per_group = scheme;
            const auto rejected = simulate_cell(grid, config, grid_points);
            for (std::size_t j = 0; j < grid.summaries.size(); ++j) {
              int count = 0;
              for (int rep = 0; rep < grid.replicates; ++rep) {
                count += rejected[static_cast<std::size_t>(rep) * grid.summaries.size() + j];
              }
              CellResult cell;
              cell.cell = CellKey{dist,  mean, config.noise,       S, config.K, scheme, xi, grid.summaries[j],
                                  grid.preprocess_pve, grid.alpha};
              cell.replicates_used = grid.replicates;
              cell.rejection_rate = static_cast<double>(count) / grid.replicates;
              cell.mc_stderr = binomial_stderr(cell.rejection_rate, grid.replicates);
              cell.seed = config.seed;
              if (on_cell) on_cell(cell);
              by_summary[j].push_back(std::move(cell));
            }
          }
          for (auto& cells : by_summary) {
            for (auto& cell : cells) results.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return results;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput(what + ": cannot parse '" + text + "' as a number");
  }
}

long long parse_integer(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput(what + ": cannot parse '" + text + "' as an integer");
  }
}

}  // namespace

std::vector<CellResult> run_type1(const ExperimentGrid& grid, const CellCallback& on_cell) {
  return run_cells(grid, {0.0}, {MeanFn::None}, on_cell);
}

std::vector<CellResult> run_power(const ExperimentGrid& grid, const CellCallback& on_cell) {
  if (grid.xi_values.empty()) throw InvalidInput("run_power: xi list is empty");
  if (grid.mean_fns.empty()) throw InvalidInput("run_power: mean function list is empty");
  return run_cells(grid, grid.xi_values, grid.mean_fns, on_cell);
}

std::vector<std::vector<int>> parse_n_schemes(const std::string& text) {
  std::vector<std::vector<int>> schemes;
  for (const auto& scheme_text : split(text, ';')) {
    std::vector<int> scheme;
    for (const auto& size : split(scheme_text, 'x')) {
      scheme.push_back(static_cast<int>(parse_integer(size, "n scheme")));
    }
    if (scheme.size() < 2) throw InvalidInput("n scheme '" + scheme_text + "' needs at least two groups (e.g. 10x10)");
    schemes.push_back(std::move(scheme));
  }
  if (schemes.empty()) throw InvalidInput("empty n scheme list");
  return schemes;
}

std::vector<double> parse_xi_values(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidInput("xi range must be start:stop:step, got '" + text + "'");
    const double start = parse_double(parts[0], "xi");
    const double stop = parse_double(parts[1], "xi");
    const double step = parse_double(parts[2], "xi");
    if (!(step > 0.0) || stop < start) throw InvalidInput("xi range '" + text + "' is empty or has a bad step");
    const auto count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> xi;
    for (int i = 0; i < count; ++i) xi.push_back(start + step * i);
    return xi;
  }
  std::vector<double> xi;
  for (const auto& v : split(text, ',')) xi.push_back(parse_double(v, "xi"));
  if (xi.empty()) throw InvalidInput("empty xi list");
  return xi;
}

ExperimentGrid parse_grid(std::istream& in, ExperimentGrid grid) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("grid config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string where = "grid config line " + std::to_string(line_no) + " (" + key + ")";
    try {
      if (key == "seed") {
        grid.base.seed = static_cast<std::uint64_t>(parse_integer(value, where));
      } else if (key == "replicates") {
        grid.replicates = static_cast<int>(parse_integer(value, where));
      } else if (key == "alpha") {
        grid.alpha = parse_double(value, where);
      } else if (key == "threads") {
        grid.threads = static_cast<int>(parse_integer(value, where));
      } else if (key == "S") {
        grid.S_values.clear();
        for (const auto& v : split(value, ',')) grid.S_values.push_back(static_cast<int>(parse_integer(v, where)));
      } else if (key == "n") {
        grid.n_schemes = parse_n_schemes(value);
      } else if (key == "xi") {
        grid.xi_values = parse_xi_values(value);
      } else if (key == "distributions") {
        grid.distributions.clear();
        for (const auto& v : split(value, ',')) grid.distributions.push_back(parse_coeff_dist(v));
      } else if (key == "mean_fns") {
        grid.mean_fns.clear();
        for (const auto& v : split(value, ',')) grid.mean_fns.push_back(parse_mean_fn(v));
      } else if (key == "noise") {
        grid.base.noise = parse_noise(value);
      } else if (key == "K") {
        grid.base.K = static_cast<int>(parse_integer(value, where));
      } else if (key == "summaries") {
        grid.summaries.clear();
        for (const auto& v : split(value, ',')) grid.summaries.push_back(parse_summary_kind(v));
      } else if (key == "preprocess") {
        if (value == "none") {
          grid.preprocess_pve.reset();
        } else {
          grid.preprocess_pve = parse_double(value.starts_with("pve=") ? value.substr(4) : value, where);
        }
      } else {
        throw InvalidInput("unknown key");
      }
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + ": " + e.what());
    }
  }
  validate(grid);
  return grid;
}

ExperimentGrid load_grid(const std::string& path, ExperimentGrid defaults) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open grid config '" + path + "'");
  return parse_grid(in, std::move(defaults));
}

}  // namespace drt
