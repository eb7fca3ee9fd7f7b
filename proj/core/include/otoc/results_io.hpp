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

#ifndef OTOC_RESULTS_IO_HPP
#define OTOC_RESULTS_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace otoc {

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

/// Shortest round-trip decimal form; byte-stable on one platform.
std::string format_double(double v);

/// One row of the results table. `d` and `chi` hold either a decimal bond
/// dimension or the literal "inf" (exact evolution / exact extraction).
struct ResultRow {
  std::string ensemble_hash;
  int instance = 0;
  std::string method;
  std::string d = "inf";
  std::string chi = "inf";
  double alpha = 1.0;
  std::optional<double> exact;
  double approx = 0.0;
  std::optional<double> fidelity;
  double discarded_weight = 0.0;
  double runtime_s = 0.0;
  int bp_iters = 0;
};

inline constexpr const char* kResultsCsvHeader =
    "ensemble_hash,instance,method,D,chi,alpha,exact,approx,fidelity,discarded_weight,"
    "runtime_s,bp_iters";

std::string results_to_csv(const std::vector<ResultRow>& rows);
void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(const std::string& path);

/// Per-instance records grouped under one ensemble hash; the exact and
/// approximate columns of matching (instance, method, D, chi) stay aligned.
struct EnsembleResults {
  std::string spec_hash;
  std::vector<ResultRow> records;

  void validate() const;  // unique (instance, method, D, chi) keys, matching hash
};

}  // namespace otoc

#endif
