// Copyright 2026 The otoc-tn Authors
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

#include "otoc/results_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <stdexcept>

namespace otoc {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return std::string(buf);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string optional_field(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string();
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string results_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << kResultsCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.ensemble_hash << ',' << r.instance << ',' << r.method << ',' << r.d << ','
        << r.chi << ',' << format_double(r.alpha) << ',' << optional_field(r.exact) << ','
        << format_double(r.approx) << ',' << optional_field(r.fidelity) << ','
        << format_double(r.discarded_weight) << ',' << format_double(r.runtime_s) << ','
        << r.bp_iters << "\n";
  }
  return out.str();
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_results_csv: cannot open " + path);
  f << results_to_csv(rows);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_results_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line) || line != kResultsCsvHeader)
    throw std::runtime_error("read_results_csv: missing or unexpected header in " + path);
  std::vector<ResultRow> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 12)
      throw std::runtime_error("read_results_csv: malformed row in " + path);
    ResultRow r;
    r.ensemble_hash = fields[0];
    r.instance = std::stoi(fields[1]);
    r.method = fields[2];
    r.d = fields[3];
    r.chi = fields[4];
    r.alpha = std::stod(fields[5]);
    r.exact = parse_optional(fields[6]);
    r.approx = std::stod(fields[7]);
    r.fidelity = parse_optional(fields[8]);
    r.discarded_weight = std::stod(fields[9]);
    r.runtime_s = std::stod(fields[10]);
    r.bp_iters = std::stoi(fields[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void EnsembleResults::validate() const {
  std::set<std::tuple<int, std::string, std::string, std::string>> keys;
  for (const auto& r : records) {
    if (r.ensemble_hash != spec_hash)
      throw std::runtime_error("ensemble results: row hash does not match spec hash");
    if (!keys.insert(std::make_tuple(r.instance, r.method, r.d, r.chi)).second)
      throw std::runtime_error("ensemble results: duplicate (instance, method, D, chi) row");
  }
}

}  // namespace otoc
