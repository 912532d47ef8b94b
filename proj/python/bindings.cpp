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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drt/error.hpp"
#include "drt/harness.hpp"
#include "drt/orderstat.hpp"
#include "drt/preprocess.hpp"
#include "drt/rank_tests.hpp"
#include "drt/ranking.hpp"
#include "drt/simgen.hpp"
#include "drt/summaries.hpp"

namespace py = pybind11;
using namespace drt;

namespace {

CurveSet make_curves(const Eigen::MatrixXd& values, const std::vector<int>& groups,
                     const std::optional<std::vector<double>>& grid) {
  return grid ? CurveSet(values, *grid, groups) : CurveSet(values, groups);
}

DoublyRankedConfig make_config(const std::string& summary, std::optional<double> preprocess_pve,
                               const std::string& alternative, int exact_threshold, bool continuity_correction) {
  DoublyRankedConfig config;
  config.summary = parse_summary_kind(summary);
  config.preprocess_pve = preprocess_pve;
  config.alternative = parse_alternative(alternative);
  config.exact_threshold = exact_threshold;
  config.continuity_correction = continuity_correction;
  return config;
}

py::dict cell_to_dict(const CellResult& r) {
  py::dict d;
  d["test"] = r.cell.test();
  d["distribution"] = std::string(to_string(r.cell.distribution));
  d["mean_fn"] = std::string(to_string(r.cell.mean_fn));
  d["noise"] = to_string(r.cell.noise);
  d["S"] = r.cell.S;
  d["K"] = r.cell.K;
  d["n_per_group"] = r.cell.n_per_group;
  d["xi"] = r.cell.xi;
  d["summary"] = std::string(to_string(r.cell.summary));
  d["preprocess_pve"] = r.cell.preprocess_pve;
  d["alpha"] = r.cell.alpha;
  d["replicates"] = r.replicates_used;
  d["rejection_rate"] = r.rejection_rate;
  d["mc_stderr"] = r.mc_stderr;
  d["seed"] = r.seed;
  return d;
}

ExperimentGrid make_grid(int groups, std::uint64_t seed, std::optional<int> replicates, std::optional<std::vector<int>> S,
                         std::optional<std::string> n, std::optional<std::vector<std::string>> distributions,
                         std::optional<std::vector<std::string>> mean_fns, std::optional<std::string> xi,
                         std::optional<std::string> noise, std::optional<int> K,
                         std::optional<std::vector<std::string>> summaries, std::optional<double> preprocess_pve,
                         double alpha, int threads, bool power) {
  ExperimentGrid grid = power ? default_power_grid(groups) : default_type1_grid(groups);
  grid.base.seed = seed;
  if (replicates) grid.replicates = *replicates;
  if (S) grid.S_values = *S;
  if (n) grid.n_schemes = parse_n_schemes(*n);
  if (distributions) {
    grid.distributions.clear();
    for (const auto& d : *distributions) grid.distributions.push_back(parse_coeff_dist(d));
  }
  if (mean_fns) {
    grid.mean_fns.clear();
    for (const auto& m : *mean_fns) grid.mean_fns.push_back(parse_mean_fn(m));
  }
  if (xi) grid.xi_values = parse_xi_values(*xi);
  if (noise) grid.base.noise = parse_noise(*noise);
  if (K) grid.base.K = *K;
  if (summaries) {
    grid.summaries.clear();
    for (const auto& s : *summaries) grid.summaries.push_back(parse_summary_kind(s));
  }
  grid.preprocess_pve = preprocess_pve;
  grid.alpha = alpha;
  grid.threads = threads;
  return grid;
}

}  // namespace

PYBIND11_MODULE(_drtest, m) {
  m.doc() = "Doubly ranked rank tests for functional data";
  m.attr("__version__") = DRTEST_VERSION;

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<UnsupportedSize>(m, "UnsupportedSize", PyExc_ValueError);

  py::class_<TestResult>(m, "TestResult")
      .def_property_readonly("method", [](const TestResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("statistic", &TestResult::statistic)
      .def_readonly("z_or_df", &TestResult::z_or_df)
      .def_readonly("p_value", &TestResult::p_value)
      .def_property_readonly("alternative", [](const TestResult& r) { return std::string(to_string(r.alternative)); })
      .def_readonly("group_sizes", &TestResult::group_sizes)
      .def_readonly("tie_correction_applied", &TestResult::tie_correction_applied)
      .def_readonly("continuity_correction", &TestResult::continuity_correction)
      .def("__repr__", [](const TestResult& r) {
        return "TestResult(method=" + std::string(to_string(r.method)) + ", statistic=" + std::to_string(r.statistic) +
               ", p_value=" + std::to_string(r.p_value) + ")";
      });

  m.def("exact_pmf", &exact_pmf, py::arg("n"), py::arg("r"), py::arg("z"));
  m.def("approx_pmf", &approx_pmf, py::arg("n"), py::arg("r"), py::arg("z"));
  m.def("suff_stat", &suff_stat, py::arg("z"), py::arg("n"));
  m.def("mean_suff_under_null", &mean_suff_under_null, py::arg("n"));

  m.def(
      "rank_curves", [](const Eigen::MatrixXd& values) { return rank_columns(values).ranks; }, py::arg("values"),
      "Per-column mid-ranks of an n x S array.");
  m.def(
      "summarize",
      [](const Eigen::MatrixXd& ranks, const std::string& kind) {
        return summarize(RankCurves{ranks}, parse_summary_kind(kind)).scores;
      },
      py::arg("ranks"), py::arg("kind") = "sufficient");

  m.def(
      "mww_test",
      [](const std::vector<double>& x, const std::vector<double>& y, const std::string& alternative,
         int exact_threshold, bool continuity_correction) {
        return mww_test(x, y, {parse_alternative(alternative), exact_threshold, continuity_correction});
      },
      py::arg("x"), py::arg("y"), py::arg("alternative") = "two-sided",
      py::arg("exact_threshold") = kDefaultExactThreshold, py::arg("continuity_correction") = true);
  m.def(
      "kruskal_wallis_test", [](const std::vector<std::vector<double>>& groups) { return kruskal_wallis_test(groups); },
      py::arg("groups"));
  m.def(
      "exact_mww_null_distribution",
      [](int n1, int n2, int threshold) { return exact_mww_null_distribution(n1, n2, threshold); }, py::arg("n1"),
      py::arg("n2"), py::arg("exact_threshold") = kDefaultExactThreshold);

  m.def(
      "doubly_ranked_test",
      [](const Eigen::MatrixXd& values, const std::vector<int>& groups, const std::optional<std::vector<double>>& grid,
         const std::string& summary, std::optional<double> preprocess_pve, const std::string& alternative,
         int exact_threshold, bool continuity_correction) {
        return doubly_ranked_test(make_curves(values, groups, grid),
                                  make_config(summary, preprocess_pve, alternative, exact_threshold, continuity_correction));
      },
      py::arg("values"), py::arg("groups"), py::arg("grid") = py::none(), py::arg("summary") = "sufficient",
      py::arg("preprocess_pve") = py::none(), py::arg("alternative") = "two-sided",
      py::arg("exact_threshold") = kDefaultExactThreshold, py::arg("continuity_correction") = true,
      "Doubly ranked MWW (two groups) or KW (three or more) test. Groups are labels 1..G per row.");

  m.def(
      "fpca_smooth",
      [](const Eigen::MatrixXd& values, double pve) {
        const auto r = fpca_smooth(values, pve);
        py::dict d;
        d["smoothed"] = r.smoothed;
        d["mean_curve"] = r.mean_curve;
        d["components_kept"] = r.components_kept;
        d["pve_achieved"] = r.pve_achieved;
        return d;
      },
      py::arg("values"), py::arg("pve"));

  m.def(
      "generate_dataset",
      [](const std::vector<int>& n_per_group, int S, int K, const std::string& distribution,
         const std::string& mean_fn, double xi, const std::string& noise, std::uint64_t seed) {
        SimConfig config;
        config.n_per_group = n_per_group;
        config.S = S;
        config.K = K;
        config.coeff_dist = parse_coeff_dist(distribution);
        config.mean_fn = parse_mean_fn(mean_fn);
        config.xi = xi;
        config.noise = parse_noise(noise);
        config.seed = seed;
        const CurveSet data = generate_dataset(config);
        return py::make_tuple(data.values(), data.groups(), data.grid());
      },
      py::arg("n_per_group") = std::vector<int>{10, 10}, py::arg("S") = 40, py::arg("K") = 1000,
      py::arg("distribution") = "gaussian", py::arg("mean_fn") = "none", py::arg("xi") = 0.0,
      py::arg("noise") = "ar1(0.5)", py::arg("seed") = 1, "Returns (values, groups, grid).");

  auto add_study = [&m](const char* name, bool power) {
    m.def(
        name,
        [power](int groups, std::uint64_t seed, std::optional<int> replicates, std::optional<std::vector<int>> S,
                std::optional<std::string> n, std::optional<std::vector<std::string>> distributions,
                std::optional<std::vector<std::string>> mean_fns, std::optional<std::string> xi,
                std::optional<std::string> noise, std::optional<int> K,
                std::optional<std::vector<std::string>> summaries, std::optional<double> preprocess_pve, double alpha,
                int threads) {
          const ExperimentGrid grid = make_grid(groups, seed, replicates, S, n, distributions, mean_fns, xi, noise, K,
                                                summaries, preprocess_pve, alpha, threads, power);
          std::vector<CellResult> results;
          {
            py::gil_scoped_release release;
            results = power ? run_power(grid) : run_type1(grid);
          }
          py::list out;
          for (const auto& r : results) out.append(cell_to_dict(r));
          return out;
        },
        py::arg("groups") = 2, py::arg("seed") = 1, py::arg("replicates") = py::none(), py::arg("S") = py::none(),
        py::arg("n") = py::none(), py::arg("distributions") = py::none(), py::arg("mean_fns") = py::none(),
        py::arg("xi") = py::none(), py::arg("noise") = py::none(), py::arg("K") = py::none(),
        py::arg("summaries") = py::none(), py::arg("preprocess_pve") = py::none(), py::arg("alpha") = 0.05,
        py::arg("threads") = 0);
  };
  add_study("run_type1", false);
  add_study("run_power", true);
}
