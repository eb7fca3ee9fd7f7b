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

#include "otoc/gates.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace otoc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

bool is_two_qubit(const GateKind& kind) {
  return std::holds_alternative<FSimLike>(kind) || std::holds_alternative<HaarTwoQubit>(kind);
}

Matrix2c gate_matrix_1q(const GateKind& kind) {
  if (const auto* rot = std::get_if<SingleQubitRot>(&kind)) {
    const double c = std::cos(rot->theta);
    const double s = std::sin(rot->theta);
    Matrix2c m;
    m << Complex(c, 0.0), Complex(0.0, s) * std::exp(Complex(0.0, -rot->phi)),
        Complex(0.0, s) * std::exp(Complex(0.0, rot->phi)), Complex(c, 0.0);
    return m;
  }
  if (std::holds_alternative<PauliX>(kind)) {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
  }
  if (std::holds_alternative<PauliZ>(kind)) {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
  }
  throw std::invalid_argument("gate_matrix_1q: not a single-qubit gate kind");
}

Matrix4c gate_matrix_2q(const GateKind& kind) {
  if (const auto* fs = std::get_if<FSimLike>(&kind)) {
    const double half = fs->alpha * kPi / 2.0;
    const Complex c(std::cos(half), 0.0);
    const Complex is(0.0, std::sin(half));
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = c;
    m(1, 2) = is;
    m(2, 1) = is;
    m(2, 2) = c;
    m(3, 3) = std::exp(Complex(0.0, -fs->cphase));
    return m;
  }
  if (const auto* h = std::get_if<HaarTwoQubit>(&kind)) return h->unitary;
  throw std::invalid_argument("gate_matrix_2q: not a two-qubit gate kind");
}

GateKind adjoint_kind(const GateKind& kind) {
  if (const auto* rot = std::get_if<SingleQubitRot>(&kind))
    return SingleQubitRot{-rot->theta, rot->phi};
  if (const auto* fs = std::get_if<FSimLike>(&kind)) return FSimLike{-fs->alpha, -fs->cphase};
  if (const auto* h = std::get_if<HaarTwoQubit>(&kind))
    return HaarTwoQubit{h->unitary.adjoint()};
  return kind;  // Pauli X and Z are self-adjoint
}

Gate adjoint_gate(const Gate& g) { return Gate{adjoint_kind(g.kind), g.sites, g.layer}; }

Eigen::MatrixXcd haar_unitary(DetRng& rng, int dim) {
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd r = qr.matrixQR().topRows(dim).triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double ad = std::abs(d);
    q.col(i) *= (ad > 0.0 ? d / ad : Complex(1.0, 0.0));
  }
  return q;
}

DenseTensor gate_tensor_2q(const GateKind& kind, const std::string& out0,
                           const std::string& out1, const std::string& in0,
                           const std::string& in1) {
  const Matrix4c m = gate_matrix_2q(kind);
  DenseTensor t({{out0, 2}, {out1, 2}, {in0, 2}, {in1, 2}});
  auto& d = t.mutable_data();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) d[static_cast<std::size_t>(r * 4 + c)] = m(r, c);
  return t;
}

}  // namespace otoc
