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

#include "drt/curve_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "drt/error.hpp"

namespace drt {
namespace {

struct Row {
  int line = 0;
  std::vector<std::string> fields;
};

std::string clean_field(std::string field) {
  const auto first = field.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = field.find_last_not_of(" \t\r");
  field = field.substr(first, last - first + 1);
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"') field = field.substr(1, field.size() - 2);
  return field;
}

std::vector<Row> read_rows(std::istream& in) {
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (clean_field(line).empty()) continue;
    Row row{line_no, {}};
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.fields.push_back(clean_field(field));
    if (!line.empty() && line.back() == ',') row.fields.emplace_back();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> to_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

double require_number(const Row& row, std::size_t column) {
  const auto value = to_number(row.fields[column]);
  if (!value || !std::isfinite(*value)) {
    throw InvalidInput("line " + std::to_string(row.line) + ", column " + std::to_string(column + 1) +
                       ": cannot parse '" + row.fields[column] + "' as a finite number");
  }
  return *value;
}

std::string lower(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
  return text;
}

bool is_long_header(const Row& header) {
  if (header.fields.size() != 4) return false;
  return lower(header.fields[0]) == "id" && lower(header.fields[1]) == "group" && lower(header.fields[2]) == "s" &&
         lower(header.fields[3]) == "value";
}

std::vector<std::string> ordered_labels(const std::vector<std::string>& raw) {
  std::vector<std::string> labels(raw.begin(), raw.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const bool numeric = std::all_of(labels.begin(), labels.end(), [](const auto& l) { return to_number(l).has_value(); });
  if (numeric) {
    std::stable_sort(labels.begin(), labels.end(),
                     [](const auto& a, const auto& b) { return *to_number(a) < *to_number(b); });
  }
  return labels;
}

CurveTable assemble(Eigen::MatrixXd values, std::vector<double> grid, std::vector<std::string> ids,
                    const std::vector<std::string>& raw_groups, bool grid_defaulted,
                    std::vector<std::string> warnings) {
  auto labels = ordered_labels(raw_groups);
  if (labels.size() < 2) {
    throw InvalidInput("input has " + std::to_string(labels.size()) + " distinct group label(s); need at least 2");
  }
  std::vector<int> groups;
  groups.reserve(raw_groups.size());
  for (const auto& g : raw_groups) {
    groups.push_back(static_cast<int>(std::find(labels.begin(), labels.end(), g) - labels.begin()) + 1);
  }
  return CurveTable{CurveSet(std::move(values), std::move(grid), std::move(groups)), std::move(ids), std::move(labels),
                    grid_defaulted, std::move(warnings)};
}

CurveTable parse_wide(const std::vector<Row>& rows) {
  const Row& header = rows.front();
  if (header.fields.size() < 3) {
    throw InvalidInput("line " + std::to_string(header.line) + ": wide header needs id, group and at least one value column");
  }
  const std::size_t S = header.fields.size() - 2;
  std::vector<std::string> warnings;

  std::vector<double> grid;
  bool grid_defaulted = false;
  for (std::size_t k = 0; k < S; ++k) {
    const auto v = to_number(header.fields[k + 2]);
    if (!v) break;
    grid.push_back(*v);
  }
  const bool increasing = std::adjacent_find(grid.begin(), grid.end(), std::greater_equal<>()) == grid.end();
  if (grid.size() != S || !increasing) {
    grid = unit_grid(static_cast<int>(S));
    grid_defaulted = true;
    warnings.emplace_back("wide header is not a strictly increasing numeric grid; using " + std::to_string(S) +
                          " equally spaced points on [0, 1]");
  }

  const std::size_t n = rows.size() - 1;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(S));
  std::vector<std::string> ids;
  std::vector<std::string> groups;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Row& row = rows[i + 1];
    if (row.fields.size() != S + 2) {
      throw InvalidInput("line " + std::to_string(row.line) + ": expected " + std::to_string(S + 2) + " fields, found " +
                         std::to_string(row.fields.size()) + " (incomplete curve?)");
    }
    if (!seen.insert(row.fields[0]).second) {
      throw InvalidInput("line " + std::to_string(row.line) + ": duplicate subject id '" + row.fields[0] + "'");
    }
    if (row.fields[1].empty()) throw InvalidInput("line " + std::to_string(row.line) + ", column 2: empty group label");
    ids.push_back(row.fields[0]);
    groups.push_back(row.fields[1]);
    for (std::size_t k = 0; k < S; ++k) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = require_number(row, k + 2);
    }
  }
  return assemble(std::move(values), std::move(grid), std::move(ids), groups, grid_defaulted, std::move(warnings));
}

CurveTable parse_long(const std::vector<Row>& rows) {
  struct Subject {
    std::string group;
    std::map<double, double> values;
  };
  std::vector<std::string> order;
  std::map<std::string, Subject> subjects;
  std::set<double> grid_set;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (row.fields.size() != 4) {
      throw InvalidInput("line " + std::to_string(row.line) + ": expected 4 fields (id,group,s,value), found " +
                         std::to_string(row.fields.size()));
    }
    const double s = require_number(row, 2);
    const double value = require_number(row, 3);
    auto [it, inserted] = subjects.try_emplace(row.fields[0]);
    if (inserted) {
      order.push_back(row.fields[0]);
      it->second.group = row.fields[1];
      if (row.fields[1].empty()) throw InvalidInput("line " + std::to_string(row.line) + ", column 2: empty group label");
    } else if (it->second.group != row.fields[1]) {
      throw InvalidInput("line " + std::to_string(row.line) + ": subject '" + row.fields[0] + "' changes group from '" +
                         it->second.group + "' to '" + row.fields[1] + "'");
    }
    if (!it->second.values.emplace(s, value).second) {
      throw InvalidInput("line " + std::to_string(row.line) + ": duplicate measurement for subject '" + row.fields[0] +
                         "' at s = " + row.fields[2]);
    }
    grid_set.insert(s);
  }
  std::vector<double> grid(grid_set.begin(), grid_set.end());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(order.size()), static_cast<Eigen::Index>(grid.size()));
  std::vector<std::string> groups;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Subject& subject = subjects.at(order[i]);
    if (subject.values.size() != grid.size()) {
      throw InvalidInput("subject '" + order[i] + "' has " + std::to_string(subject.values.size()) + " of " +
                         std::to_string(grid.size()) + " grid points (incomplete curve)");
    }
    std::size_t k = 0;
    for (const auto& [s, v] : subject.values) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k++)) = v;
    }
    groups.push_back(subject.group);
  }
  return assemble(std::move(values), std::move(grid), order, groups, false, {});
}

}  // namespace

CurveLayout parse_curve_layout(std::string_view text) {
  if (text == "auto") return CurveLayout::Auto;
  if (text == "wide") return CurveLayout::Wide;
  if (text == "long") return CurveLayout::Long;
  throw InvalidInput("unknown layout '" + std::string(text) + "' (expected auto, wide or long)");
}

CurveTable parse_curve_table(std::istream& in, CurveLayout layout) {
  const auto rows = read_rows(in);
  if (rows.size() < 2) throw InvalidInput("curve table needs a header and at least one data row");
  if (layout == CurveLayout::Auto) layout = is_long_header(rows.front()) ? CurveLayout::Long : CurveLayout::Wide;
  if (layout == CurveLayout::Long) {
    if (!is_long_header(rows.front())) {
      throw InvalidInput("line " + std::to_string(rows.front().line) + ": long header must be id,group,s,value");
    }
    return parse_long(rows);
  }
  return parse_wide(rows);
}

CurveTable read_curve_table(const std::string& path, CurveLayout layout) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open curve table '" + path + "'");
  try {
    return parse_curve_table(in, layout);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ec == std::errc() ? ptr : buffer);
}

void write_wide_csv(std::ostream& out, const CurveSet& curves) {
  out << "id,group";
  for (double s : curves.grid()) out << ',' << format_double(s);
  out << '\n';
  for (int i = 0; i < curves.n(); ++i) {
    out << (i + 1) << ',' << curves.groups()[static_cast<std::size_t>(i)];
    for (int s = 0; s < curves.S(); ++s) out << ',' << format_double(curves.values()(i, s));
    out << '\n';
  }
}

}  // namespace drt
