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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "drt/curve_set.hpp"

namespace drt {

enum class CurveLayout { Auto, Wide, Long };

CurveLayout parse_curve_layout(std::string_view text);

// A CSV curve table parsed into a CurveSet.
//
// Wide form: header `id,group,<c1>,...,<cS>`, one row per subject. Long
// form: header `id,group,s,value`, one row per (subject, occasion). Group
// labels map to 1..G in sorted order (numeric when every label is a
// number, lexicographic otherwise), so the second label is the MWW `y`.
struct CurveTable {
  CurveSet curves;
  std::vector<std::string> subject_ids;
  std::vector<std::string> group_labels;  // label of group g at index g − 1
  bool grid_defaulted = false;            // wide header was not numeric
  std::vector<std::string> warnings;
};

// Throws InvalidInput with line/column context on malformed input,
// incomplete curves or fewer than two groups.
CurveTable parse_curve_table(std::istream& in, CurveLayout layout = CurveLayout::Auto);
CurveTable read_curve_table(const std::string& path, CurveLayout layout = CurveLayout::Auto);

// Wide-form CSV with the grid in the header.
void write_wide_csv(std::ostream& out, const CurveSet& curves);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

}  // namespace drt
