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

#include <Eigen/Dense>

#include "drt/curve_set.hpp"

namespace drt {

struct FpcaResult {
  Eigen::MatrixXd smoothed;    // n × S reconstruction
  Eigen::VectorXd mean_curve;  // cross-subject mean, length S
  int components_kept = 0;
  double pve_achieved = 1.0;   // cumulative share of centered variance kept
};

// Truncated functional PCA presmoother.
//
// Centers columns by the mean curve, takes the SVD of the centered matrix
// and keeps the fewest leading components whose squared singular values
// reach `pve` of the total. Group labels are not used. When every component
// is kept (including pve = 1) the input is returned unchanged.
//
// Throws InvalidInput for pve outside (0, 1] or fewer than two rows.
FpcaResult fpca_smooth(const Eigen::MatrixXd& values, double pve);

FpcaResult fpca_smooth(const CurveSet& curves, double pve);

}  // namespace drt
