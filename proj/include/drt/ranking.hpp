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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "drt/curve_set.hpp"

namespace drt {

// Per-occasion ranks z_i(s) of a curve set, one row per subject.
// Every column is a mid-rank assignment of {1..n}.
struct RankCurves {
  Eigen::MatrixXd ranks;

  int n() const { return static_cast<int>(ranks.rows()); }
  int S() const { return static_cast<int>(ranks.cols()); }
};

// Mid-ranks (ties share the average of the ranks they span), 1-based.
// Throws InvalidInput on non-finite or empty input.
std::vector<double> rank_vector(std::span<const double> values);

// True when at least two entries of `values` compare equal.
bool has_ties(std::span<const double> values);

// Ranks every column of the curve matrix across all subjects.
// Group labels are deliberately not consulted.
RankCurves rank_curves(const CurveSet& curves);

// Column-wise ranking of a bare matrix (n >= 1 rows).
RankCurves rank_columns(const Eigen::MatrixXd& values);

}  // namespace drt
