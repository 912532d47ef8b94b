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

#include "drt/preprocess.hpp"

#include <string>

#include "drt/error.hpp"

namespace drt {

FpcaResult fpca_smooth(const Eigen::MatrixXd& values, double pve) {
  if (!(pve > 0.0 && pve <= 1.0)) throw InvalidInput("fpca_smooth: pve must lie in (0, 1], got " + std::to_string(pve));
  if (values.rows() < 2) throw InvalidInput("fpca_smooth: need at least 2 curves");
  if (values.cols() < 1) throw InvalidInput("fpca_smooth: need at least 1 measurement occasion");

  FpcaResult out;
  out.mean_curve = values.colwise().mean().transpose();
  const Eigen::MatrixXd centered = values.rowwise() - out.mean_curve.transpose();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd energy = svd.singularValues().array().square();
  const double total = energy.sum();
  const int available = static_cast<int>(energy.size());

  int kept = available;
  double cumulative = 0.0;
  if (total > 0.0 && pve < 1.0) {
    for (int k = 0; k < available; ++k) {
      cumulative += energy(k);
      if (cumulative / total >= pve) {
        kept = k + 1;
        break;
      }
    }
  }

  if (total == 0.0 || kept == available) {
    out.smoothed = values;
    out.components_kept = total == 0.0 ? 1 : available;
    out.pve_achieved = 1.0;
    return out;
  }

  out.components_kept = kept;
  out.pve_achieved = cumulative / total;
  out.smoothed = (svd.matrixU().leftCols(kept) * svd.singularValues().head(kept).asDiagonal() *
                  svd.matrixV().leftCols(kept).transpose())
                     .rowwise() +
                 out.mean_curve.transpose();
  return out;
}

FpcaResult fpca_smooth(const CurveSet& curves, double pve) { return fpca_smooth(curves.values(), pve); }

}  // namespace drt
