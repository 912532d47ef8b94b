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

#include "drt/curve_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "drt/error.hpp"

namespace drt {

CurveSet::CurveSet(Eigen::MatrixXd values, std::vector<double> grid, std::vector<int> groups)
    : values_(std::move(values)), grid_(std::move(grid)), groups_(std::move(groups)) {
  const auto n = values_.rows();
  const auto S = values_.cols();
  if (n < 2) throw InvalidInput("CurveSet: need at least 2 curves, got " + std::to_string(n));
  if (S < 1) throw InvalidInput("CurveSet: need at least 1 measurement occasion");
  if (static_cast<Eigen::Index>(grid_.size()) != S) {
    throw InvalidInput("CurveSet: grid has " + std::to_string(grid_.size()) + " points but values have " +
                       std::to_string(S) + " columns");
  }
  if (static_cast<Eigen::Index>(groups_.size()) != n) {
    throw InvalidInput("CurveSet: " + std::to_string(groups_.size()) + " group labels for " + std::to_string(n) +
                       " curves");
  }
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (!std::isfinite(grid_[k])) throw InvalidInput("CurveSet: non-finite grid point");
    if (k > 0 && !(grid_[k] > grid_[k - 1])) throw InvalidInput("CurveSet: grid must be strictly increasing");
  }
  if (!values_.allFinite()) throw InvalidInput("CurveSet: values must be finite");

  const int max_label = *std::max_element(groups_.begin(), groups_.end());
  const int min_label = *std::min_element(groups_.begin(), groups_.end());
  if (min_label < 1) throw InvalidInput("CurveSet: group labels must be >= 1");
  std::vector<int> counts(static_cast<std::size_t>(max_label), 0);
  for (int g : groups_) ++counts[static_cast<std::size_t>(g - 1)];
  for (int g = 0; g < max_label; ++g) {
    if (counts[static_cast<std::size_t>(g)] == 0) {
      throw InvalidInput("CurveSet: group label " + std::to_string(g + 1) + " has no curves");
    }
  }
  if (max_label < 2) throw InvalidInput("CurveSet: need at least 2 groups");
  group_count_ = max_label;
}

CurveSet::CurveSet(Eigen::MatrixXd values, std::vector<int> groups)
    : CurveSet(values, unit_grid(static_cast<int>(values.cols())), std::move(groups)) {}

std::vector<int> CurveSet::group_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(group_count_), 0);
  for (int g : groups_) ++sizes[static_cast<std::size_t>(g - 1)];
  return sizes;
}

CurveSet CurveSet::with_values(Eigen::MatrixXd values) const {
  return CurveSet(std::move(values), grid_, groups_);
}

std::vector<double> unit_grid(int S) {
  if (S < 1) throw InvalidInput("unit_grid: S must be >= 1");
  if (S == 1) return {0.5};
  std::vector<double> grid(static_cast<std::size_t>(S));
  for (int k = 0; k < S; ++k) grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (S - 1);
  return grid;
}

}  // namespace drt
