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

#ifndef OTOC_GATES_HPP
#define OTOC_GATES_HPP

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "otoc/rng.hpp"
#include "otoc/site.hpp"
#include "otoc/tensor.hpp"

namespace otoc {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// exp(i theta (cos(phi) X + sin(phi) Y)).
struct SingleQubitRot {
  double theta = 0.0;
  double phi = 0.0;
};

/// iSWAP(alpha) = exp(i alpha (pi/4)(XX+YY)) followed by a CPHASE that puts
/// a phase exp(-i cphase) on |11>. alpha = 1, cphase ~ 0.35 is the standard
/// fast-entangling gate; alpha in [0,2] for ensemble parameters, negated
/// values appear in adjoint circuits.
struct FSimLike {
  double alpha = 1.0;
  double cphase = 0.35;
};

struct HaarTwoQubit {
  Matrix4c unitary;  // basis |q0 q1> with q0 the lex-smaller site
};

struct PauliX {};
struct PauliZ {};

using GateKind = std::variant<SingleQubitRot, FSimLike, HaarTwoQubit, PauliX, PauliZ>;

struct Gate {
  GateKind kind;
  std::vector<Site> sites;  // one or two lattice sites; two-qubit gates lex-sorted
  int layer = 0;
};

bool is_two_qubit(const GateKind& kind);
inline bool is_two_qubit(const Gate& g) { return is_two_qubit(g.kind); }

Matrix2c gate_matrix_1q(const GateKind& kind);
/// Basis ordering |q0 q1> with q0 = gate.sites[0] (lex-smaller site).
Matrix4c gate_matrix_2q(const GateKind& kind);

GateKind adjoint_kind(const GateKind& kind);
Gate adjoint_gate(const Gate& g);

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase of
/// diag(R) divided out.
Eigen::MatrixXcd haar_unitary(DetRng& rng, int dim);

/// Two-qubit gate as a tensor with indices (out0, out1, in0, in1), each of
/// dim 2, slot 0 belonging to the lex-smaller site.
DenseTensor gate_tensor_2q(const GateKind& kind, const std::string& out0,
                           const std::string& out1, const std::string& in0,
                           const std::string& in1);

}  // namespace otoc

#endif
