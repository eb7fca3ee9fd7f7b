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

#ifndef OTOC_CIRCUIT_HPP
#define OTOC_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otoc/gates.hpp"
#include "otoc/site.hpp"

namespace otoc {

enum class GateFamily { Haar, ISwapLike };
enum class OtocOrder { Otoc1, Otoc2 };

/// One OTOC ensemble: a circuit layout plus a distribution over instances.
struct EnsembleSpec {
  Geometry geometry;
  int depth_T = 1;  // number of two-qubit layers in U
  Site m_site;
  Site b_site;
  GateFamily family = GateFamily::ISwapLike;
  double alpha = 1.0;    // iSWAP(alpha) entangling strength, in [0, 2]
  double cphase = 0.35;  // conditional phase in radians
  bool haar_single_qubit_layers = false;
  int num_instances = 2;
  std::uint64_t master_seed = 0;
  OtocOrder order = OtocOrder::Otoc1;

  void validate() const;  // throws std::invalid_argument on violations
};

/// A concrete OTOC circuit instance. Butterfly insertions appear as PauliX
/// gates at b_site; the mid-circuit measurement operator of the second-order
/// correlator appears as a PauliZ gate at m_site. The final measurement of Z
/// at m_site is implied by m_site and is not a gate. Gates are ordered
/// layer-major, then site-lexicographic.
struct OtocCircuit {
  Geometry geometry;
  std::vector<Site> active_qubits;  // sorted
  std::vector<Gate> gates;
  Site m_site;
  Site b_site;
  OtocOrder order = OtocOrder::Otoc1;
  int depth_T = 0;  // two-qubit layers in U; fixes the brickwall layer pattern
  std::uint64_t seed = 0;
  int instance = 0;

  int num_qubits() const { return static_cast<int>(active_qubits.size()); }
};

/// Brickwall lightcone speeds in two-qubit layers^-1, and the maximal local
/// depth ell_g = (1 - v_mb/c) T they imply.
struct LightconeGeometry {
  double c_h = 0.5;                       // along a primitive lattice vector
  double c_d = 0.35355339059327373;       // along the diagonal, c_h / sqrt(2)
  double c_1d = 1.0;                      // one-dimensional chain
  double v_mb = 0.0;                      // required M -> B propagation speed
  double ell_g = 0.0;                     // (1 - v_mb/c) * T for the applicable c
};

LightconeGeometry make_lightcone_geometry(bool one_dimensional, bool diagonal, double v_mb,
                                          int depth_T);

/// The brickwall evolution U for one instance: a single-qubit layer (for the
/// iSWAP family) preceding each two-qubit layer. Layer ids are 2k for the
/// single-qubit layer of step k and 2k+1 for its two-qubit layer. The gate
/// parameter stream is a pure function of (master_seed, instance_index).
std::vector<Gate> build_evolution(const EnsembleSpec& spec, int instance_index);

/// Assemble U, B, U-dagger (and for the second-order correlator, the mid
/// circuit Z and a second U, B, U-dagger) into one circuit.
OtocCircuit build_otoc_circuit(const std::vector<Gate>& u_gates, const EnsembleSpec& spec,
                               OtocOrder order, int instance_index);

OtocCircuit build_instance(const EnsembleSpec& spec, int instance_index);

struct PruneOptions {
  bool drop_outside_butterfly_cone = true;   // pass 1, exact
  bool drop_outside_measure_back_cone = true;  // pass 2, exact
  bool drop_outside_measure_fwd_cone = true;   // pass 3, redefines the target
  bool drop_idle_qubits = true;
};

/// Remove gates outside the geometric lightcones and then drop qubits with
/// no remaining gates. Idempotent.
OtocCircuit prune_geometric_lightcones(const OtocCircuit& c, const PruneOptions& opts = {});

using Bond = std::pair<Site, Site>;  // canonical: first < second

/// Two-qubit gate count per lattice bond, and the maximum count.
std::pair<std::map<Bond, int>, int> max_gates_per_bond(const OtocCircuit& c);

struct BSelectionResult {
  Site chosen;
  double sigma_max = 0.0;                 // Sigma, the maximal sigma over candidates
  std::map<Site, double> sigma_map;       // exact-probe sigma per candidate location
  std::vector<Site> survivors;            // sigma >= threshold * Sigma
  std::map<Site, int> hardness;           // max gates/bond of the pruned circuit
  std::map<Site, int> pruned_n;           // qubits after pruning
  std::map<Site, int> total_gates;        // gate count after pruning
};

/// Probe candidate butterfly locations by exact simulation of
/// `probe_instances` pruned instances each, keep those with sigma above
/// `sigma_threshold` times the maximum, and among the survivors pick the one
/// whose pruned circuit has the largest max-gates-per-bond (total gate count,
/// then site order, as tie-breaks). Only candidates whose pruned size stays
/// within `max_probe_qubits` are simulated.
BSelectionResult select_b_location(const EnsembleSpec& spec_without_b, double sigma_threshold,
                                   int probe_instances, int max_probe_qubits = 16);

}  // namespace otoc

#endif
