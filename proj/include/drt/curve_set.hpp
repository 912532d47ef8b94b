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

#include <vector>

#include <Eigen/Dense>

namespace drt {

// A sample of n curves observed on a shared grid of S measurement
// occasions, each curve tagged with a group label in {1..G}.
//
// Construction validates the invariants: n >= 2, S >= 1, a strictly
// increasing grid, finite values, labels covering every integer in 1..G
// with G >= 2. Once built, a CurveSet is immutable.
class CurveSet {
 public:
  CurveSet(Eigen::MatrixXd values, std::vector<double> grid, std::vector<int> groups);

  // Same as above with the grid defaulted to S equally spaced points on [0, 1].
  CurveSet(Eigen::MatrixXd values, std::vector<int> groups);

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<int>& groups() const { return groups_; }

  int n() const { return static_cast<int>(values_.rows()); }
  int S() const { return static_cast<int>(values_.cols()); }
  int G() const { return group_count_; }

  // Subject counts per group, index 0 holding group 1.
  std::vector<int> group_sizes() const;

  // Copy of this set with the value matrix replaced (same grid and labels).
  CurveSet with_values(Eigen::MatrixXd values) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<double> grid_;
  std::vector<int> groups_;
  int group_count_ = 0;
};

// S equally spaced points from 0 to 1 inclusive (a single point sits at 0.5).
std::vector<double> unit_grid(int S);

}  // namespace drt
