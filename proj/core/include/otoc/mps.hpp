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

#ifndef OTOC_MPS_HPP
#define OTOC_MPS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "otoc/circuit.hpp"
#include "otoc/statevector.hpp"
#include "otoc/tensor.hpp"

namespace otoc {

/// Matrix product state on a chain. Site tensor i carries indices
/// ("l<i>", "p<i>", "l<i+1>"); boundary bonds have dim 1. When ortho_center
/// is set, tensors left of it are left isometries and tensors right of it are
/// right isometries.
struct Mps {
  std::vector<DenseTensor> site_tensors;
  std::optional<int> ortho_center;

  int num_sites() const { return static_cast<int>(site_tensors.size()); }
  /// n+1 entries including the trivial boundary bonds.
  std::vector<std::int64_t> bond_dims() const;
};

Mps product_zero_mps(int num_sites);

void move_ortho_center(Mps& m, int target);

struct TwoSiteGateResult {
  std::vector<double> singular_values;  // kept, descending, normalized
  double discarded_weight = 0.0;        // relative to the pre-truncation blob
  std::int64_t old_bond = 1;
  std::int64_t new_bond = 1;
};

void apply_single_site_gate(Mps& m, int site, const GateKind& kind);

/// Contract the gate into the two-site blob at the orthogonality center,
/// truncate with svd_truncate, and renormalize the state. The center ends on
/// `left_site` + 1.
TwoSiteGateResult apply_two_site_gate(Mps& m, int left_site, const GateKind& kind,
                                      std::int64_t max_bond, double cutoff);

struct MpsEvolveResult {
  Mps mps;
  std::vector<Site> qubits;             // sorted chain sites (chain index = position)
  double total_discarded_weight = 0.0;
  std::int64_t max_bond = 1;
  bool bond_growth_within_factor_2 = true;  // every gate grew its bond by at most 2x
};

inline constexpr std::int64_t kMpsUnlimitedBond = INT64_MAX;

/// Evolve |0...0> through a one-dimensional circuit. Two-qubit gates must act
/// on nearest neighbors of the active chain.
MpsEvolveResult evolve_mps(const OtocCircuit& c, std::int64_t max_bond, double cutoff);

double mps_expectation_z(const Mps& m, int site);

inline constexpr int kMpsToStateGuard = 24;
StateVector mps_to_statevector(const Mps& m, const std::vector<Site>& qubits,
                               bool override_guard = false);

}  // namespace otoc

#endif
