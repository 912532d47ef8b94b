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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "drt/curve_set.hpp"
#include "drt/summaries.hpp"

namespace drt {

// Direction of the MWW alternative, stated for the second sample `y`:
// Greater means y tends to exceed x (large T⁺). KW is always TwoSided.
enum class Alternative { TwoSided, Less, Greater };

enum class TestMethod { MwwExact, MwwNormal, KwChiSq };

std::string_view to_string(Alternative alt);
std::string_view to_string(TestMethod method);
// Accepts "two-sided"/"two.sided"/"two_sided", "less", "greater".
Alternative parse_alternative(std::string_view text);

inline constexpr int kDefaultExactThreshold = 50;

struct TestResult {
  TestMethod method = TestMethod::MwwExact;
  // T⁺ (MWW) or H (KW); for doubly ranked inputs these are T⁺_DR and H_DR.
  double statistic = 0.0;
  // MWW: standard-normal deviate (continuity-corrected on the normal path,
  // uncorrected on the exact path). KW: degrees of freedom G − 1.
  double z_or_df = 0.0;
  double p_value = 1.0;
  Alternative alternative = Alternative::TwoSided;
  std::vector<int> group_sizes;
  bool tie_correction_applied = false;
  bool continuity_correction = false;
};

struct MwwOptions {
  Alternative alternative = Alternative::TwoSided;
  int exact_threshold = kDefaultExactThreshold;
  bool continuity_correction = true;
};

// Mann-Whitney-Wilcoxon test of x (group 1) against y (group 2).
//
// T⁺ = Σ R[y_j] − n₂(n₂+1)/2 over pooled mid-ranks. When n₁+n₂ is at most
// the exact threshold and the pooled sample has no ties, the p-value comes
// from the exact null distribution of T⁺; otherwise from the normal
// approximation with tie-adjusted variance and (optionally) continuity
// correction. Two-sided p-values are min(1, 2·min(lower, upper)).
TestResult mww_test(std::span<const double> x, std::span<const double> y, const MwwOptions& options = {});

// Kruskal-Wallis H with the usual tie-correction divisor and a chi-square
// (G − 1 df) upper-tail p-value. All values identical gives H = 0, p = 1.
TestResult kruskal_wallis_test(std::span<const std::vector<double>> groups);

// Null distribution P(T⁺ = k), k = 0..n₁n₂, by the standard count
// recursion over rank-subset sums. Results are cached per (n₁, n₂).
// Throws UnsupportedSize when n₁ + n₂ exceeds `exact_threshold`.
std::vector<double> exact_mww_null_distribution(int n1, int n2, int exact_threshold = kDefaultExactThreshold);

struct DoublyRankedConfig {
  SummaryKind summary = SummaryKind::Sufficient;
  // Proportion of variance kept by FPCA presmoothing; nullopt skips it.
  std::optional<double> preprocess_pve;
  Alternative alternative = Alternative::TwoSided;
  int exact_threshold = kDefaultExactThreshold;
  bool continuity_correction = true;
};

struct DoublyRankedDetail {
  TestResult result;
  SummaryScores scores;
  std::optional<int> components_kept;
  std::optional<double> pve_achieved;
};

// Optional presmoothing, per-occasion ranking, per-subject summary, then
// MWW (G = 2, group 2 as the `y` sample) or KW (G >= 3) on the scores.
TestResult doubly_ranked_test(const CurveSet& curves, const DoublyRankedConfig& config = {});

// doubly_ranked_test plus the intermediate scores and smoothing report.
DoublyRankedDetail doubly_ranked_test_detailed(const CurveSet& curves, const DoublyRankedConfig& config = {});

// Runs the final MWW/KW stage on precomputed per-subject scores.
TestResult test_scores(std::span<const double> scores, std::span<const int> groups, int group_count,
                       const DoublyRankedConfig& config);

}  // namespace drt
