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

#include "drt/simgen.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "drt/error.hpp"
#include "drt/special.hpp"

namespace drt {
namespace {

double basis_weight(int k) { return std::numbers::sqrt2 / ((k - 0.5) * std::numbers::pi); }

// s(1−s)⁵ peaks at s = 1/6.
const double kMu3Peak = (1.0 / 6.0) * std::pow(5.0 / 6.0, 5);

}  // namespace

void validate(const SimConfig& config) {
  if (config.n_per_group.size() < 2) throw InvalidInput("SimConfig: need at least 2 groups");
  for (int size : config.n_per_group) {
    if (size < 1) throw InvalidInput("SimConfig: group sizes must be >= 1");
  }
  if (config.S < 1) throw InvalidInput("SimConfig: S must be >= 1");
  if (config.K < 1) throw InvalidInput("SimConfig: K must be >= 1");
  if (!(config.xi >= 0.0) || !std::isfinite(config.xi)) throw InvalidInput("SimConfig: xi must be finite and >= 0");
  if (config.noise.kind == NoiseModel::Kind::AR1 && !(std::fabs(config.noise.rho) < 1.0)) {
    throw InvalidInput("SimConfig: AR(1) rho must lie in (-1, 1)");
  }
}

std::string_view to_string(CoeffDist dist) { return dist == CoeffDist::Gaussian ? "gaussian" : "t2"; }

std::string_view to_string(MeanFn fn) {
  switch (fn) {
    case MeanFn::None: return "none";
    case MeanFn::Mu1: return "mu1";
    case MeanFn::Mu2: return "mu2";
    case MeanFn::Mu3: return "mu3";
  }
  return "none";
}

std::string to_string(const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseModel::Kind::None: return "none";
    case NoiseModel::Kind::White: return "white";
    case NoiseModel::Kind::AR1: {
      char buffer[32];
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), noise.rho);
      return "ar1(" + std::string(buffer, ec == std::errc() ? ptr : buffer) + ")";
    }
  }
  return "none";
}

CoeffDist parse_coeff_dist(std::string_view text) {
  if (text == "gaussian" || text == "G" || text == "normal") return CoeffDist::Gaussian;
  if (text == "t2" || text == "T" || text == "student_t2") return CoeffDist::StudentT2;
  throw InvalidInput("unknown coefficient distribution '" + std::string(text) + "' (expected gaussian or t2)");
}

MeanFn parse_mean_fn(std::string_view text) {
  if (text == "none") return MeanFn::None;
  if (text == "mu1") return MeanFn::Mu1;
  if (text == "mu2") return MeanFn::Mu2;
  if (text == "mu3") return MeanFn::Mu3;
  throw InvalidInput("unknown mean function '" + std::string(text) + "' (expected none, mu1, mu2 or mu3)");
}

NoiseModel parse_noise(std::string_view text) {
  if (text == "none") return NoiseModel::none();
  if (text == "white") return NoiseModel::white();
  if (text == "ar1") return NoiseModel::ar1();
  if (text.starts_with("ar1(") && text.ends_with(")")) {
    const std::string inner(text.substr(4, text.size() - 5));
    try {
      std::size_t used = 0;
      const double rho = std::stod(inner, &used);
      if (used != inner.size()) throw InvalidInput("");
      if (!(std::fabs(rho) < 1.0)) throw InvalidInput("AR(1) rho must lie in (-1, 1)");
      return NoiseModel::ar1(rho);
    } catch (const std::logic_error&) {
      throw InvalidInput("malformed noise model '" + std::string(text) + "'");
    }
  }
  throw InvalidInput("unknown noise model '" + std::string(text) + "' (expected none, white, ar1 or ar1(<rho>))");
}

KlBasis::KlBasis(std::span<const double> grid, int K) : S_(static_cast<int>(grid.size())), K_(K) {
  if (K < 1) throw InvalidInput("KlBasis: K must be >= 1");
  table_.resize(static_cast<std::size_t>(S_) * static_cast<std::size_t>(K_));
  for (int s = 0; s < S_; ++s) {
    for (int k = 1; k <= K_; ++k) {
      table_[static_cast<std::size_t>(s) * K_ + (k - 1)] =
          basis_weight(k) * std::sin((k - 0.5) * std::numbers::pi * grid[static_cast<std::size_t>(s)]);
    }
  }
}

void KlBasis::evaluate(std::span<const double> coeffs, std::span<double> out) const {
  if (static_cast<int>(coeffs.size()) != K_ || static_cast<int>(out.size()) != S_) {
    throw InvalidInput("KlBasis::evaluate: size mismatch");
  }
  for (int s = 0; s < S_; ++s) {
    const double* row = table_.data() + static_cast<std::size_t>(s) * K_;
    special::CompensatedSum sum;
    for (int k = 0; k < K_; ++k) sum.add(row[k] * coeffs[static_cast<std::size_t>(k)]);
    out[static_cast<std::size_t>(s)] = sum.value();
  }
}

std::vector<double> eigen_curve(std::span<const double> coeffs, std::span<const double> grid) {
  std::vector<double> out(grid.size(), 0.0);
  if (coeffs.empty()) return out;
  KlBasis(grid, static_cast<int>(coeffs.size())).evaluate(coeffs, out);
  return out;
}

double mean_fn(MeanFn kind, double s, double xi) {
  switch (kind) {
    case MeanFn::None: return 0.0;
    case MeanFn::Mu1: return xi * s;
    case MeanFn::Mu2: return xi * 4.0 * s * (1.0 - s);
    case MeanFn::Mu3: return xi * s * std::pow(1.0 - s, 5) / kMu3Peak;
  }
  return 0.0;
}

double draw_coefficient(CoeffDist dist, Rng& rng) {
  std::normal_distribution<double> normal;
  const double z = normal(rng);
  if (dist == CoeffDist::Gaussian) return z;
  // χ²₂ / 2 is a unit exponential
  std::exponential_distribution<double> exponential(1.0);
  return z / std::sqrt(exponential(rng));
}

std::vector<double> noise_vector(const NoiseModel& model, int S, Rng& rng) {
  std::vector<double> eps(static_cast<std::size_t>(S), 0.0);
  if (model.kind == NoiseModel::Kind::None) return eps;
  std::normal_distribution<double> normal;
  for (double& e : eps) e = normal(rng);
  if (model.kind == NoiseModel::Kind::AR1) {
    const double innovation = std::sqrt(1.0 - model.rho * model.rho);
    for (std::size_t t = 1; t < eps.size(); ++t) eps[t] = model.rho * eps[t - 1] + innovation * eps[t];
  }
  return eps;
}

CurveSet generate_dataset(const SimConfig& config, const KlBasis& basis, Rng& rng) {
  validate(config);
  if (basis.S() != config.S || basis.K() != config.K) throw InvalidInput("generate_dataset: basis does not match config");

  int n = 0;
  for (int size : config.n_per_group) n += size;
  const auto grid = unit_grid(config.S);

  std::vector<double> shift(static_cast<std::size_t>(config.S));
  for (int s = 0; s < config.S; ++s) {
    shift[static_cast<std::size_t>(s)] = mean_fn(config.mean_fn, grid[static_cast<std::size_t>(s)], config.xi);
  }

  Eigen::MatrixXd values(n, config.S);
  std::vector<int> groups;
  groups.reserve(static_cast<std::size_t>(n));
  std::vector<double> coeffs(static_cast<std::size_t>(config.K));
  std::vector<double> curve(static_cast<std::size_t>(config.S));
  std::normal_distribution<double> normal;
  std::exponential_distribution<double> exponential(1.0);
  int row = 0;
  for (std::size_t g = 0; g < config.n_per_group.size(); ++g) {
    for (int i = 0; i < config.n_per_group[g]; ++i, ++row) {
      for (double& c : coeffs) {
        c = normal(rng);
        if (config.coeff_dist == CoeffDist::StudentT2) c /= std::sqrt(exponential(rng));
      }
      basis.evaluate(coeffs, curve);
      const auto eps = noise_vector(config.noise, config.S, rng);
      for (int s = 0; s < config.S; ++s) {
        const auto k = static_cast<std::size_t>(s);
        values(row, s) = (g > 0 ? shift[k] : 0.0) + curve[k] + eps[k];
      }
      groups.push_back(static_cast<int>(g) + 1);
    }
  }
  return CurveSet(std::move(values), grid, std::move(groups));
}

CurveSet generate_dataset(const SimConfig& config) {
  validate(config);
  const auto grid = unit_grid(config.S);
  const KlBasis basis(grid, config.K);
  Rng rng = make_stream(config.seed, {});
  return generate_dataset(config, basis, rng);
}

}  // namespace drt
