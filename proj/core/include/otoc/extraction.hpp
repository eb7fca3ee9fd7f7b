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

#ifndef OTOC_EXTRACTION_HPP
#define OTOC_EXTRACTION_HPP

#include <cstdint>

#include "otoc/peps.hpp"
#include "otoc/statevector.hpp"

namespace otoc {

/// Boundary-MPS contraction controls. SweepAxis::Columns moves the boundary
/// front along x (the MPS spans the rows); SweepAxis::Rows moves it along y.
/// Auto picks the axis so the MPS spans the longer edge of the bounding
/// rectangle, and the front always starts from the edge farthest from the
/// observable so that column is absorbed last.
enum class SweepAxis { Auto, Rows, Columns };

struct BmpsConfig {
  std::int64_t chi = 1;
  SweepAxis sweep_axis = SweepAxis::Auto;
  double truncation_cutoff = 0.0;  // relative; 0 keeps exactly chi values
  std::int64_t max_intermediate_entries = std::int64_t(1) << 27;
};

struct ContractExactResult {
  double expectation = 0.0;
  double norm = 0.0;  // sqrt(<psi|psi>)
};

inline constexpr int kPepsToStateGuard = 24;

/// Contract the network to dense amplitudes, absorbing one column at a time
/// (no truncation anywhere). Guarded by qubit count and intermediate size.
StateVector peps_to_statevector(const Peps& p, bool override_guard = false);

/// <psi|Z|psi> / <psi|psi> of the double-layer network, evaluated through the
/// dense contraction above. The reference (chi -> infinity) extraction.
ContractExactResult contract_exact(const Peps& p, const Site& observable_site,
                                   bool override_guard = false);

struct BmpsResult {
  double expectation = 0.0;
  double norm = 0.0;                    // sqrt of the double-layer closure
  double accumulated_truncation = 0.0;  // summed relative discarded weight
  std::uint64_t flops = 0;              // multiply-accumulate count
};

/// Double-layer boundary-MPS contraction truncated to cfg.chi after each
/// column absorption. Holes in the bounding rectangle are treated as trivial
/// dim-1 sites. The expectation uses two boundary MPS meeting at the
/// observable column; the norm uses a single full sweep.
BmpsResult contract_bmps(const Peps& p, const Site& observable_site, const BmpsConfig& cfg);

}  // namespace otoc

#endif
