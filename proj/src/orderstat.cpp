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

#include "drt/orderstat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drt/error.hpp"
#include "drt/special.hpp"

namespace drt {

void validate(const OrderStatParams& p) {
  if (p.n < 1) throw InvalidInput("order statistic: n must be >= 1, got " + std::to_string(p.n));
  if (p.r < 1 || p.r > p.n) throw InvalidInput("order statistic: r must lie in [1, n], got " + std::to_string(p.r));
  if (p.z < 1 || p.z > p.n) throw InvalidInput("order statistic: z must lie in [1, n], got " + std::to_string(p.z));
}

double ExpFamParts::reconstruct() const { return h * c * std::exp(w * t); }

double exact_pmf(int n, int r, int z) {
  validate({n, r, z});
  const double a = r;
  const double b = n - r + 1;
  const double lo = static_cast<double>(z - 1) / n;
  const double hi = static_cast<double>(z) / n;
  double p;
  if (0.5 * (lo + hi) <= a / (a + b)) {
    p = special::incomplete_beta(hi, a, b) - special::incomplete_beta(lo, a, b);
  } else {
    // Upper half: difference of complements I_{1-x}(b, a) keeps the tail accurate.
    const double lo_c = static_cast<double>(n - z) / n;
    const double hi_c = static_cast<double>(n - z + 1) / n;
    p = special::incomplete_beta(hi_c, b, a) - special::incomplete_beta(lo_c, b, a);
  }
  return std::clamp(p, 0.0, 1.0);
}

double approx_pmf(int n, int r, int z) {
  validate({n, r, z});
  // midpoint of ((z-1)/n, z/n] and its complement, both in (0, 1)
  const double mid = (2.0 * z - 1.0) / (2.0 * n);
  const double mid_c = (2.0 * n - 2.0 * z + 1.0) / (2.0 * n);
  const double log_p = special::log_order_stat_norm(n, r) - std::log(static_cast<double>(n)) +
                       (r - 1) * std::log(mid) + (n - r) * std::log(mid_c);
  return std::exp(log_p);
}

double suff_stat(double z, int n) {
  if (n < 1) throw InvalidInput("suff_stat: n must be >= 1, got " + std::to_string(n));
  if (!(z >= 1.0 && z <= static_cast<double>(n))) {
    throw InvalidInput("suff_stat: rank " + std::to_string(z) + " outside [1, " + std::to_string(n) + "]");
  }
  return std::log(2.0 * z - 1.0) - std::log(2.0 * n - 2.0 * z + 1.0);
}

ExpFamParts expfam_parts(int n, int r, int z) {
  validate({n, r, z});
  const double mid = (2.0 * z - 1.0) / (2.0 * n);
  const double mid_c = (2.0 * n - 2.0 * z + 1.0) / (2.0 * n);
  ExpFamParts parts;
  parts.c = std::exp(special::log_order_stat_norm(n, r) - std::log(static_cast<double>(n)));
  parts.w = r;
  parts.h = std::exp(n * std::log(mid_c) - std::log(mid));
  parts.t = suff_stat(z, n);
  return parts;
}

double mean_suff_under_null(int n) {
  if (n < 1) throw InvalidInput("mean_suff_under_null: n must be >= 1");
  special::CompensatedSum sum;
  for (int z = 1; z <= n; ++z) sum.add(suff_stat(z, n));
  return sum.value() / n;
}

}  // namespace drt
