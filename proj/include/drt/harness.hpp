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

#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "drt/simgen.hpp"
#include "drt/summaries.hpp"

namespace drt {

inline constexpr int kDeskType1Replicates = 2000;
inline constexpr int kDeskPowerReplicates = 300;
inline constexpr int kFullType1Replicates = 10000;
inline constexpr int kFullPowerReplicates = 500;

// Factor grid for a Monte Carlo study. `base` supplies noise, K and the
// master seed; the list fields are crossed with each other.
struct ExperimentGrid {
  SimConfig base;
  std::vector<int> S_values{40, 120, 360};
  std::vector<std::vector<int>> n_schemes{{10, 10}, {25, 25}, {50, 50}};
  std::vector<double> xi_values;
  std::vector<CoeffDist> distributions{CoeffDist::Gaussian, CoeffDist::StudentT2};
  std::vector<MeanFn> mean_fns{MeanFn::Mu1, MeanFn::Mu2, MeanFn::Mu3};
  int replicates = kDeskType1Replicates;
  double alpha = 0.05;
  std::vector<SummaryKind> summaries{SummaryKind::Sufficient, SummaryKind::AverageRank};
  std::optional<double> preprocess_pve;
  int threads = 1;  // worker count; <= 0 means hardware concurrency
};

// 0, 0.12, ..., 3.0 (26 values).
std::vector<double> default_xi_values();

// Desk-scale defaults; `groups` = 2 gives the MWW design, 3 the KW design.
ExperimentGrid default_type1_grid(int groups = 2);
ExperimentGrid default_power_grid(int groups = 2);

void validate(const ExperimentGrid& grid);

struct CellKey {
  CoeffDist distribution = CoeffDist::Gaussian;
  MeanFn mean_fn = MeanFn::None;
  NoiseModel noise;
  int S = 0;
  int K = 0;
  std::vector<int> n_per_group;
  double xi = 0.0;
  SummaryKind summary = SummaryKind::Sufficient;
  std::optional<double> preprocess_pve;
  double alpha = 0.05;

  // "MWW" for two groups, "KW" otherwise.
  std::string test() const { return n_per_group.size() == 2 ? "MWW" : "KW"; }
  bool operator==(const CellKey&) const = default;
};

struct CellResult {
  CellKey cell;
  double rejection_rate = 0.0;
  int replicates_used = 0;
  double mc_stderr = 0.0;  // √(p̂(1 − p̂) / replicates)
  std::uint64_t seed = 0;

  bool operator==(const CellResult&) const = default;
};

double binomial_stderr(double rate, int replicates);

using CellCallback = std::function<void(const CellResult&)>;

// Null experiments: ξ forced to 0 and μ to None. One result per
// (distribution, S, n scheme, summary).
std::vector<CellResult> run_type1(const ExperimentGrid& grid, const CellCallback& on_cell = {});

// Power experiments, one result per (distribution, μ, S, n scheme,
// summary, ξ), ordered with ξ varying fastest.
//
// Replicate r of a data cell draws from the stream keyed by (seed,
// distribution, S, n scheme, r), independent of ξ, μ and the summary.
// Every point on a power curve therefore reuses the same underlying
// curves, and the ξ = 0 cell reproduces the matching type-I cell.
std::vector<CellResult> run_power(const ExperimentGrid& grid, const CellCallback& on_cell = {});

// Key-value grid description, one `key = value` per line, `#` comments.
// Keys: seed, replicates, alpha, threads, S, n, xi, distributions,
// mean_fns, noise, K, summaries, preprocess. Unset keys keep `defaults`.
ExperimentGrid parse_grid(std::istream& in, ExperimentGrid defaults);
ExperimentGrid load_grid(const std::string& path, ExperimentGrid defaults);

// "10x10;25x25" -> {{10,10},{25,25}}.
std::vector<std::vector<int>> parse_n_schemes(const std::string& text);
// Comma list "0,0.5,1" or inclusive range "start:stop:step".
std::vector<double> parse_xi_values(const std::string& text);

}  // namespace drt
