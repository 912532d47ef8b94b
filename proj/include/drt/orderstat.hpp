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

namespace drt {

// Indices for the rank distribution of the r-th order statistic among n
// exchangeable continuous draws: 1 <= r <= n, 1 <= z <= n.
struct OrderStatParams {
  int n = 1;
  int r = 1;
  int z = 1;
};

// Exponential-family factorization of the midpoint-approximated rank PMF:
//   approx_pmf(n, r, z) = h(z) * c(r) * exp(w(r) * t(z)).
struct ExpFamParts {
  double h = 0.0;  // base measure, depends on z only
  double c = 0.0;  // normalizer, depends on r only
  double w = 0.0;  // natural parameter, w(r) = r
  double t = 0.0;  // sufficient statistic t(z)

  double reconstruct() const;
};

// Throws InvalidInput unless 1 <= r <= n and 1 <= z <= n.
void validate(const OrderStatParams& p);

// Exact P[Z_(r) = z]: the beta(r, n−r+1) mass on ((z−1)/n, z/n],
// computed as a difference of regularized incomplete beta values.
double exact_pmf(int n, int r, int z);

// Single-interval midpoint-rule approximation of exact_pmf, evaluated in
// log space so large n does not overflow the gamma ratio.
double approx_pmf(int n, int r, int z);

// t(z) = log[(z/n − 1/(2n)) / (1 − z/n + 1/(2n))].
//
// Accepts any real z in [1, n] so mid-ranks flow through. Evaluated as
// log(2z − 1) − log(2n − 2z + 1), which makes t(z) = −t(n + 1 − z) hold
// bit-exactly. Throws InvalidInput when z is outside [1, n] or n < 1.
double suff_stat(double z, int n);

ExpFamParts expfam_parts(int n, int r, int z);

// (1/n) Σ_{z=1}^{n} t(z): the null expectation of t under uniform ranks.
// Zero for every n; evaluated numerically so callers can check that.
double mean_suff_under_null(int n);

}  // namespace drt
