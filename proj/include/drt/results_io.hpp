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

#include "drt/harness.hpp"

namespace drt {

enum class ResultFormat { CSV, JSONL };

ResultFormat parse_result_format(std::string_view text);

// "drtest <version>"
std::string software_version();

// Stable column order of the CSV form (also the JSONL key set).
const std::vector<std::string>& result_columns();

void write_results(std::ostream& out, const std::vector<CellResult>& results, ResultFormat format);
// Throws std::runtime_error naming the path when it cannot be written.
void write_results(const std::vector<CellResult>& results, const std::string& path, ResultFormat format);

std::vector<CellResult> read_results(std::istream& in, ResultFormat format);
std::vector<CellResult> read_results(const std::string& path, ResultFormat format);

}  // namespace drt
