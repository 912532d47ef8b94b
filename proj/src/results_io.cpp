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

#include "drt/results_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "drt/curve_table.hpp"
#include "drt/error.hpp"

namespace drt {
namespace {

using nlohmann::json;

std::string scheme_text(const std::vector<int>& scheme) {
  std::string text;
  for (std::size_t g = 0; g < scheme.size(); ++g) {
    if (g > 0) text += 'x';
    text += std::to_string(scheme[g]);
  }
  return text;
}

std::string preprocess_text(const std::optional<double>& pve) {
  return pve ? "pve=" + format_double(*pve) : "none";
}

std::optional<double> parse_preprocess(const std::string& text) {
  if (text == "none") return std::nullopt;
  if (!text.starts_with("pve=")) throw InvalidInput("bad preprocess field '" + text + "'");
  return std::stod(text.substr(4));
}

std::vector<std::string> to_fields(const CellResult& r) {
  const CellKey& c = r.cell;
  return {c.test(),
          std::string(to_string(c.distribution)),
          std::string(to_string(c.mean_fn)),
          to_string(c.noise),
          std::to_string(c.S),
          std::to_string(c.K),
          scheme_text(c.n_per_group),
          format_double(c.xi),
          std::string(to_string(c.summary)),
          preprocess_text(c.preprocess_pve),
          format_double(c.alpha),
          std::to_string(r.replicates_used),
          format_double(r.rejection_rate),
          format_double(r.mc_stderr),
          std::to_string(r.seed),
          software_version()};
}

CellResult from_fields(const std::vector<std::string>& f) {
  if (f.size() != result_columns().size()) throw InvalidInput("result row has the wrong number of fields");
  CellResult r;
  CellKey& c = r.cell;
  c.distribution = parse_coeff_dist(f[1]);
  c.mean_fn = parse_mean_fn(f[2]);
  c.noise = parse_noise(f[3]);
  c.S = std::stoi(f[4]);
  c.K = std::stoi(f[5]);
  c.n_per_group = parse_n_schemes(f[6]).front();
  c.xi = std::stod(f[7]);
  c.summary = parse_summary_kind(f[8]);
  c.preprocess_pve = parse_preprocess(f[9]);
  c.alpha = std::stod(f[10]);
  r.replicates_used = std::stoi(f[11]);
  r.rejection_rate = std::stod(f[12]);
  r.mc_stderr = std::stod(f[13]);
  r.seed = std::stoull(f[14]);
  return r;
}

json to_json(const CellResult& r) {
  const CellKey& c = r.cell;
  json j;
  j["test"] = c.test();
  j["distribution"] = to_string(c.distribution);
  j["mean_fn"] = to_string(c.mean_fn);
  j["noise"] = to_string(c.noise);
  j["S"] = c.S;
  j["K"] = c.K;
  j["n_per_group"] = c.n_per_group;
  j["xi"] = c.xi;
  j["summary"] = to_string(c.summary);
  j["preprocess"] = preprocess_text(c.preprocess_pve);
  j["alpha"] = c.alpha;
  j["replicates"] = r.replicates_used;
  j["rejection_rate"] = r.rejection_rate;
  j["mc_stderr"] = r.mc_stderr;
  j["seed"] = r.seed;
  j["version"] = software_version();
  return j;
}

CellResult from_json(const json& j) {
  CellResult r;
  CellKey& c = r.cell;
  c.distribution = parse_coeff_dist(j.at("distribution").get<std::string>());
  c.mean_fn = parse_mean_fn(j.at("mean_fn").get<std::string>());
  c.noise = parse_noise(j.at("noise").get<std::string>());
  c.S = j.at("S").get<int>();
  c.K = j.at("K").get<int>();
  c.n_per_group = j.at("n_per_group").get<std::vector<int>>();
  c.xi = j.at("xi").get<double>();
  c.summary = parse_summary_kind(j.at("summary").get<std::string>());
  c.preprocess_pve = parse_preprocess(j.at("preprocess").get<std::string>());
  c.alpha = j.at("alpha").get<double>();
  r.replicates_used = j.at("replicates").get<int>();
  r.rejection_rate = j.at("rejection_rate").get<double>();
  r.mc_stderr = j.at("mc_stderr").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

}  // namespace

ResultFormat parse_result_format(std::string_view text) {
  if (text == "csv") return ResultFormat::CSV;
  if (text == "jsonl") return ResultFormat::JSONL;
  throw InvalidInput("unknown result format '" + std::string(text) + "' (expected csv or jsonl)");
}

std::string software_version() { return std::string("drtest ") + DRTEST_VERSION; }

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> columns{
      "test",  "distribution", "mean_fn",    "noise",     "S",              "K",         "n_per_group", "xi",
      "summary", "preprocess", "alpha", "replicates", "rejection_rate", "mc_stderr", "seed",        "version"};
  return columns;
}

void write_results(std::ostream& out, const std::vector<CellResult>& results, ResultFormat format) {
  if (format == ResultFormat::CSV) {
    const auto& columns = result_columns();
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
    out << '\n';
    for (const auto& r : results) {
      const auto fields = to_fields(r);
      for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << fields[k];
      out << '\n';
    }
    return;
  }
  for (const auto& r : results) out << to_json(r).dump() << '\n';
}

void write_results(const std::vector<CellResult>& results, const std::string& path, ResultFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_results(out, results, format);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<CellResult> read_results(std::istream& in, ResultFormat format) {
  std::vector<CellResult> results;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      if (format == ResultFormat::CSV) {
        if (line_no == 1) continue;  // header
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        results.push_back(from_fields(fields));
      } else {
        results.push_back(from_json(json::parse(line)));
      }
    } catch (const std::exception& e) {
      throw InvalidInput("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return results;
}

std::vector<CellResult> read_results(const std::string& path, ResultFormat format) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open results file '" + path + "'");
  return read_results(in, format);
}

}  // namespace drt
