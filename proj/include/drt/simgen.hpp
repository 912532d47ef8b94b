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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drt/curve_set.hpp"
#include "drt/rng.hpp"

namespace drt {

enum class CoeffDist { Gaussian, StudentT2 };
enum class MeanFn { None, Mu1, Mu2, Mu3 };

struct NoiseModel {
  enum class Kind { None, White, AR1 };
  Kind kind = Kind::AR1;
  double rho = 0.5;  // AR(1) lag-one correlation, |rho| < 1

  static NoiseModel none() { return {Kind::None, 0.0}; }
  static NoiseModel white() { return {Kind::White, 0.0}; }
  static NoiseModel ar1(double rho = 0.5) { return {Kind::AR1, rho}; }
  bool operator==(const NoiseModel&) const = default;
};

// One simulation cell: Karhunen-Loève curves with K terms on an equally
// spaced grid of S points over [0, 1]. Group 1 has no mean shift; every
// later group gets ξ·μ(s) added. Measurement noise is added last.
struct SimConfig {
  std::vector<int> n_per_group{10, 10};
  int S = 40;
  int K = 1000;
  CoeffDist coeff_dist = CoeffDist::Gaussian;
  MeanFn mean_fn = MeanFn::None;
  double xi = 0.0;
  NoiseModel noise = NoiseModel::ar1();
  std::uint64_t seed = 1;
};

void validate(const SimConfig& config);

std::string_view to_string(CoeffDist dist);
std::string_view to_string(MeanFn fn);
std::string to_string(const NoiseModel& noise);
CoeffDist parse_coeff_dist(std::string_view text);
MeanFn parse_mean_fn(std::string_view text);
// "none", "white", "ar1" or "ar1(<rho>)".
NoiseModel parse_noise(std::string_view text);

// Basis values √2 / ((k − ½)π) · sin((k − ½)π s) tabulated on a grid.
class KlBasis {
 public:
  KlBasis(std::span<const double> grid, int K);

  int S() const { return S_; }
  int K() const { return K_; }

  // Σ_k basis_k(s) · coeffs[k] at every grid point, compensated.
  void evaluate(std::span<const double> coeffs, std::span<double> out) const;

 private:
  int S_;
  int K_;
  std::vector<double> table_;  // S rows of K, row-major
};

// X(s) = Σ_{k=1}^{K} √2 [(k − ½)π]^{-1} Z_k sin[(k − ½)π s], K = coeffs.size().
std::vector<double> eigen_curve(std::span<const double> coeffs, std::span<const double> grid);

// μ₁ = ξs, μ₂ = 4ξs(1−s), μ₃ = ξ s(1−s)⁵ / max_s s(1−s)⁵ (peak ξ at s = 1/6).
double mean_fn(MeanFn kind, double s, double xi);

// One coefficient Z_k: standard normal, or t₂ drawn as N / √(χ²₂ / 2).
double draw_coefficient(CoeffDist dist, Rng& rng);

// White: iid N(0,1). AR1: ε₁ = η₁, ε_t = ρε_{t−1} + √(1−ρ²)η_t (unit
// marginal variance, lag-h correlation ρ^h). None: zeros.
std::vector<double> noise_vector(const NoiseModel& model, int S, Rng& rng);

// Deterministic dataset for config.seed.
CurveSet generate_dataset(const SimConfig& config);

// Dataset drawn from an explicit stream with a prebuilt basis (basis.S()
// must equal config.S and basis.K() config.K).
CurveSet generate_dataset(const SimConfig& config, const KlBasis& basis, Rng& rng);

}  // namespace drt
