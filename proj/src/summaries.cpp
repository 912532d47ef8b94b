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

#include "drt/summaries.hpp"

#include <string>

#include "drt/error.hpp"
#include "drt/orderstat.hpp"
#include "drt/special.hpp"

namespace drt {

std::string_view to_string(SummaryKind kind) {
  return kind == SummaryKind::Sufficient ? "sufficient" : "average_rank";
}

SummaryKind parse_summary_kind(std::string_view text) {
  if (text == "suff" || text == "sufficient") return SummaryKind::Sufficient;
  if (text == "avg" || text == "average" || text == "average_rank") return SummaryKind::AverageRank;
  throw InvalidInput("unknown summary '" + std::string(text) + "' (expected suff or avg)");
}

namespace {

template <typename Term>
SummaryScores summarize_rows(const RankCurves& ranks, SummaryKind kind, Term term) {
  SummaryScores out;
  out.kind = kind;
  out.n = ranks.n();
  out.S = ranks.S();
  out.scores.resize(static_cast<std::size_t>(out.n));
  for (Eigen::Index i = 0; i < ranks.ranks.rows(); ++i) {
    special::CompensatedSum sum;
    for (Eigen::Index s = 0; s < ranks.ranks.cols(); ++s) sum.add(term(ranks.ranks(i, s)));
    out.scores[static_cast<std::size_t>(i)] = sum.value() / out.S;
  }
  return out;
}

}  // namespace

SummaryScores sufficient_summary(const RankCurves& ranks) {
  const int n = ranks.n();
  return summarize_rows(ranks, SummaryKind::Sufficient, [n](double z) { return suff_stat(z, n); });
}

SummaryScores average_rank_summary(const RankCurves& ranks) {
  return summarize_rows(ranks, SummaryKind::AverageRank, [](double z) { return z; });
}

SummaryScores summarize(const RankCurves& ranks, SummaryKind kind) {
  return kind == SummaryKind::Sufficient ? sufficient_summary(ranks) : average_rank_summary(ranks);
}

}  // namespace drt
