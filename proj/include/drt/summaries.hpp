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

#include <string_view>
#include <vector>

#include "drt/ranking.hpp"

namespace drt {

enum class SummaryKind { Sufficient, AverageRank };

std::string_view to_string(SummaryKind kind);
// Accepts "suff", "sufficient", "avg", "average", "average_rank".
SummaryKind parse_summary_kind(std::string_view text);

// One score per subject collapsing its rank curve.
//
// Sufficient scores lie in [−log(2n−1), log(2n−1)] and have null mean 0;
// AverageRank scores lie in [1, n] with grand mean (n+1)/2. Under the null
// both are location-shift families whose shifts (θ_g) the downstream MWW/KW
// step tests for equality.
struct SummaryScores {
  std::vector<double> scores;
  SummaryKind kind = SummaryKind::Sufficient;
  int n = 0;
  int S = 0;
};

// score_i = (1/S) Σ_k t(z_i(s_k)) with compensated accumulation.
SummaryScores sufficient_summary(const RankCurves& ranks);

// score_i = (1/S) Σ_k z_i(s_k) with compensated accumulation.
SummaryScores average_rank_summary(const RankCurves& ranks);

SummaryScores summarize(const RankCurves& ranks, SummaryKind kind);

}  // namespace drt
