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

#ifndef OTOC_STATEVECTOR_HPP
#define OTOC_STATEVECTOR_HPP

#include <string>
#include <vector>

#include "otoc/circuit.hpp"
#include "otoc/gates.hpp"
#include "otoc/site.hpp"

namespace otoc {

/// Dense amplitudes over the active qubits. Qubits are ordered
/// lexicographically by coordinate; qubit k corresponds to bit (N-1-k) of the
/// amplitude index, so index bits read in qubit order.
struct StateVector {
  std::vector<Site> qubits;  // sorted
  std::vector<Complex> amplitudes;

  int num_qubits() const { return static_cast<int>(qubits.size()); }
  int axis_of(const Site& s) const;  // throws if the site is not present
};

inline constexpr int kStateVectorQubitGuard = 28;

StateVector make_zero_state(const std::vector<Site>& qubits, bool override_guard = false);

void apply_gate(StateVector& sv, const Gate& g);

/// Apply the circuit's gates in order to |0...0> on its active qubits.
StateVector evolve_exact(const OtocCircuit& c, bool override_guard = false);

double expectation_z(const StateVector& sv, const Site& site);

/// <phi| Z_m |phi> for a first-order circuit, in [-1, 1].
double otoc_exact(const OtocCircuit& c, bool override_guard = false);
/// Same for the second-order circuit (two butterfly insertions).
double otoc2_exact(const OtocCircuit& c, bool override_guard = false);

/// |<a|b>|^2 / (<a|a><b|b>). Qubit sets must agree.
double fidelity(const StateVector& a, const StateVector& b);

Complex inner_product(const StateVector& a, const StateVector& b);
double state_norm(const StateVector& sv);

/// Little-endian interleaved (re, im) doubles preceded by an 8-byte qubit
/// count header.
void save_amplitudes(const StateVector& sv, const std::string& path);
StateVector load_amplitudes(const std::string& path, const std::vector<Site>& qubits);

}  // namespace otoc

#endif
