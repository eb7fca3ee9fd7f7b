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

#include "otoc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace otoc {

int StateVector::axis_of(const Site& s) const {
  const auto it = std::lower_bound(qubits.begin(), qubits.end(), s);
  if (it == qubits.end() || *it != s)
    throw std::invalid_argument("state vector has no qubit at (" + to_string(s) + ")");
  return static_cast<int>(it - qubits.begin());
}

StateVector make_zero_state(const std::vector<Site>& qubits, bool override_guard) {
  StateVector sv;
  sv.qubits = qubits;
  std::sort(sv.qubits.begin(), sv.qubits.end());
  const int n = sv.num_qubits();
  if (n > kStateVectorQubitGuard && !override_guard)
    throw std::runtime_error("state vector guard: " + std::to_string(n) + " qubits > " +
                             std::to_string(kStateVectorQubitGuard));
  sv.amplitudes.assign(std::size_t(1) << n, Complex(0.0, 0.0));
  sv.amplitudes[0] = Complex(1.0, 0.0);
  return sv;
}

namespace {

void apply_1q(StateVector& sv, const Matrix2c& m, int axis) {
  const int n = sv.num_qubits();
  const std::size_t bit = std::size_t(1) << (n - 1 - axis);
  const std::size_t size = sv.amplitudes.size();
  auto* a = sv.amplitudes.data();
  for (std::size_t base = 0; base < size; ++base) {
    if (base & bit) continue;
    const Complex a0 = a[base];
    const Complex a1 = a[base | bit];
    a[base] = m(0, 0) * a0 + m(0, 1) * a1;
    a[base | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_2q(StateVector& sv, const Matrix4c& m, int axis0, int axis1) {
  const int n = sv.num_qubits();
  const std::size_t bit0 = std::size_t(1) << (n - 1 - axis0);
  const std::size_t bit1 = std::size_t(1) << (n - 1 - axis1);
  const std::size_t size = sv.amplitudes.size();
  auto* a = sv.amplitudes.data();
  for (std::size_t base = 0; base < size; ++base) {
    if (base & (bit0 | bit1)) continue;
    const std::size_t i00 = base;
    const std::size_t i01 = base | bit1;
    const std::size_t i10 = base | bit0;
    const std::size_t i11 = base | bit0 | bit1;
    const Complex v00 = a[i00], v01 = a[i01], v10 = a[i10], v11 = a[i11];
    a[i00] = m(0, 0) * v00 + m(0, 1) * v01 + m(0, 2) * v10 + m(0, 3) * v11;
    a[i01] = m(1, 0) * v00 + m(1, 1) * v01 + m(1, 2) * v10 + m(1, 3) * v11;
    a[i10] = m(2, 0) * v00 + m(2, 1) * v01 + m(2, 2) * v10 + m(2, 3) * v11;
    a[i11] = m(3, 0) * v00 + m(3, 1) * v01 + m(3, 2) * v10 + m(3, 3) * v11;
  }
}

}  // namespace

void apply_gate(StateVector& sv, const Gate& g) {
  if (is_two_qubit(g)) {
    apply_2q(sv, gate_matrix_2q(g.kind), sv.axis_of(g.sites.at(0)), sv.axis_of(g.sites.at(1)));
  } else {
    apply_1q(sv, gate_matrix_1q(g.kind), sv.axis_of(g.sites.at(0)));
  }
}

StateVector evolve_exact(const OtocCircuit& c, bool override_guard) {
  StateVector sv = make_zero_state(c.active_qubits, override_guard);
  for (const auto& g : c.gates) apply_gate(sv, g);
  return sv;
}

double expectation_z(const StateVector& sv, const Site& site) {
  const int axis = sv.axis_of(site);
  const std::size_t bit = std::size_t(1) << (sv.num_qubits() - 1 - axis);
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < sv.amplitudes.size(); ++i) {
    const double w = std::norm(sv.amplitudes[i]);
    if (i & bit)
      minus += w;
    else
      plus += w;
  }
  const double total = plus + minus;
  if (total <= 0.0) throw std::runtime_error("expectation_z: zero-norm state");
  return (plus - minus) / total;
}

double otoc_exact(const OtocCircuit& c, bool override_guard) {
  if (c.order != OtocOrder::Otoc1)
    throw std::invalid_argument("otoc_exact: circuit is not first-order");
  StateVector sv = evolve_exact(c, override_guard);
  return expectation_z(sv, c.m_site);
}

double otoc2_exact(const OtocCircuit& c, bool override_guard) {
  if (c.order != OtocOrder::Otoc2)
    throw std::invalid_argument("otoc2_exact: circuit is not second-order");
  StateVector sv = evolve_exact(c, override_guard);
  return expectation_z(sv, c.m_site);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.qubits != b.qubits) throw std::invalid_argument("inner_product: qubit sets differ");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

double state_norm(const StateVector& sv) {
  double s = 0.0;
  for (const auto& v : sv.amplitudes) s += std::norm(v);
  return std::sqrt(s);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubits != b.qubits) throw std::invalid_argument("fidelity: qubit sets differ");
  const double na = state_norm(a), nb = state_norm(b);
  if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("fidelity: zero-norm state");
  const Complex ip = inner_product(a, b);
  return std::norm(ip) / (na * na * nb * nb);
}

void save_amplitudes(const StateVector& sv, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_amplitudes: cannot open " + path);
  const std::uint64_t n = static_cast<std::uint64_t>(sv.num_qubits());
  f.write(reinterpret_cast<const char*>(&n), 8);
  for (const auto& amp : sv.amplitudes) {
    const double re = amp.real(), im = amp.imag();
    f.write(reinterpret_cast<const char*>(&re), 8);
    f.write(reinterpret_cast<const char*>(&im), 8);
  }
}

StateVector load_amplitudes(const std::string& path, const std::vector<Site>& qubits) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_amplitudes: cannot open " + path);
  std::uint64_t n = 0;
  f.read(reinterpret_cast<char*>(&n), 8);
  if (n != qubits.size()) throw std::runtime_error("load_amplitudes: qubit count mismatch");
  StateVector sv;
  sv.qubits = qubits;
  std::sort(sv.qubits.begin(), sv.qubits.end());
  sv.amplitudes.resize(std::size_t(1) << n);
  for (auto& amp : sv.amplitudes) {
    double re = 0.0, im = 0.0;
    f.read(reinterpret_cast<char*>(&re), 8);
    f.read(reinterpret_cast<char*>(&im), 8);
    amp = Complex(re, im);
  }
  if (!f) throw std::runtime_error("load_amplitudes: truncated file");
  return sv;
}

}  // namespace otoc
