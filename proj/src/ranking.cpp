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

#include "drt/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "drt/error.hpp"

namespace drt {

std::vector<double> rank_vector(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw InvalidInput("rank_vector: empty input");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("rank_vector: non-finite value");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) share ranks i+1..j
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

bool has_ties(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

RankCurves rank_columns(const Eigen::MatrixXd& values) {
  RankCurves out{Eigen::MatrixXd(values.rows(), values.cols())};
  std::vector<double> column(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index s = 0; s < values.cols(); ++s) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) column[static_cast<std::size_t>(i)] = values(i, s);
    const auto ranks = rank_vector(column);
    for (Eigen::Index i = 0; i < values.rows(); ++i) out.ranks(i, s) = ranks[static_cast<std::size_t>(i)];
  }
  return out;
}

RankCurves rank_curves(const CurveSet& curves) { return rank_columns(curves.values()); }

}  // namespace drt
