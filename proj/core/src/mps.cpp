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

#include "otoc/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otoc {

namespace {

std::string bond_name(int i) { return "l" + std::to_string(i); }
std::string phys_name(int i) { return "p" + std::to_string(i); }

// Reshape helper: bring site tensor i to canonical (l_i, p_i, l_{i+1}) order.
DenseTensor canonical_order(const DenseTensor& t, int i) {
  return permute(t, {bond_name(i), phys_name(i), bond_name(i + 1)});
}

}  // namespace

std::vector<std::int64_t> Mps::bond_dims() const {
  std::vector<std::int64_t> dims;
  const int n = num_sites();
  dims.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) dims.push_back(site_tensors[static_cast<std::size_t>(i)].dim(bond_name(i)));
  dims.push_back(n > 0 ? site_tensors[static_cast<std::size_t>(n - 1)].dim(bond_name(n)) : 1);
  return dims;
}

Mps product_zero_mps(int num_sites) {
  if (num_sites < 1) throw std::invalid_argument("product_zero_mps: need at least one site");
  Mps m;
  for (int i = 0; i < num_sites; ++i) {
    DenseTensor t({{bond_name(i), 1}, {phys_name(i), 2}, {bond_name(i + 1), 1}});
    t.mutable_data()[0] = Complex(1.0, 0.0);
    m.site_tensors.push_back(std::move(t));
  }
  m.ortho_center = 0;
  // A one-site product tensor is trivially both-canonical; center 0 is exact.
  return m;
}

namespace {

// One QR step moving the center from site c to c+1.
void shift_right(Mps& m, int c) {
  auto& a = m.site_tensors[static_cast<std::size_t>(c)];
  auto [q, r] = qr_split(a, {bond_name(c), phys_name(c)}, "__qr");
  a = canonical_order(rename_index(q, "__qr", bond_name(c + 1)), c);
  auto& b = m.site_tensors[static_cast<std::size_t>(c + 1)];
  DenseTensor rb = contract(r, b, {{bond_name(c + 1), bond_name(c + 1)}});
  b = canonical_order(rename_index(rb, "__qr", bond_name(c + 1)), c + 1);
}

// One QR step moving the center from site c to c-1.
void shift_left(Mps& m, int c) {
  auto& a = m.site_tensors[static_cast<std::size_t>(c)];
  auto [q, r] = qr_split(a, {phys_name(c), bond_name(c + 1)}, "__qr");
  a = canonical_order(rename_index(q, "__qr", bond_name(c)), c);
  auto& b = m.site_tensors[static_cast<std::size_t>(c - 1)];
  DenseTensor br = contract(b, r, {{bond_name(c), bond_name(c)}});
  b = canonical_order(rename_index(br, "__qr", bond_name(c)), c - 1);
}

}  // namespace

void move_ortho_center(Mps& m, int target) {
  const int n = m.num_sites();
  if (target < 0 || target >= n) throw std::invalid_argument("move_ortho_center: bad site");
  if (!m.ortho_center.has_value()) {
    // Full canonicalization: sweep right isometries in from the right edge,
    // then walk the center from the left edge.
    for (int c = n - 1; c > 0; --c) shift_left(m, c);
    m.ortho_center = 0;
  }
  while (*m.ortho_center < target) {
    shift_right(m, *m.ortho_center);
    ++*m.ortho_center;
  }
  while (*m.ortho_center > target) {
    shift_left(m, *m.ortho_center);
    --*m.ortho_center;
  }
}

void apply_single_site_gate(Mps& m, int site, const GateKind& kind) {
  if (is_two_qubit(kind)) throw std::invalid_argument("apply_single_site_gate: two-qubit kind");
  const Matrix2c g = gate_matrix_1q(kind);
  // t'[.., p', ..] = sum_p g(p', p) t[.., p, ..]; apply_matrix contracts with
  // m(i, j) over i, so pass the transpose.
  auto& t = m.site_tensors[static_cast<std::size_t>(site)];
  t = apply_matrix(t, phys_name(site), MatrixXc(g.transpose()));
}

TwoSiteGateResult apply_two_site_gate(Mps& m, int left_site, const GateKind& kind,
                                      std::int64_t max_bond, double cutoff) {
  if (!is_two_qubit(kind)) throw std::invalid_argument("apply_two_site_gate: need 2q kind");
  const int i = left_site;
  if (i < 0 || i + 1 >= m.num_sites())
    throw std::invalid_argument("apply_two_site_gate: site out of range");
  move_ortho_center(m, i);

  TwoSiteGateResult res;
  res.old_bond = m.site_tensors[static_cast<std::size_t>(i)].dim(bond_name(i + 1));

  DenseTensor blob = contract(m.site_tensors[static_cast<std::size_t>(i)],
                              m.site_tensors[static_cast<std::size_t>(i + 1)],
                              {{bond_name(i + 1), bond_name(i + 1)}});
  DenseTensor gate = gate_tensor_2q(kind, "__o0", "__o1", phys_name(i), phys_name(i + 1));
  blob = contract(blob, gate, {{phys_name(i), phys_name(i)}, {phys_name(i + 1), phys_name(i + 1)}});
  blob = rename_index(rename_index(blob, "__o0", phys_name(i)), "__o1", phys_name(i + 1));

  SvdResult svd = svd_truncate(blob, {bond_name(i), phys_name(i)}, max_bond, cutoff, "__bond");
  double kept = 0.0;
  for (double s : svd.singular_values) kept += s * s;
  const double total = kept + svd.discarded_weight;
  res.discarded_weight = total > 0.0 ? svd.discarded_weight / total : 0.0;
  res.new_bond = static_cast<std::int64_t>(svd.singular_values.size());
  res.singular_values.resize(svd.singular_values.size());

  const double norm = std::sqrt(kept);
  DenseTensor right = svd.right;
  auto& rd = right.mutable_data();
  const std::int64_t cols = right.size() / res.new_bond;
  for (std::int64_t k = 0; k < res.new_bond; ++k) {
    const double s = svd.singular_values[static_cast<std::size_t>(k)] / (norm > 0.0 ? norm : 1.0);
    res.singular_values[static_cast<std::size_t>(k)] = s;
    for (std::int64_t c = 0; c < cols; ++c) rd[static_cast<std::size_t>(k * cols + c)] *= s;
  }

  m.site_tensors[static_cast<std::size_t>(i)] =
      canonical_order(rename_index(svd.left, "__bond", bond_name(i + 1)), i);
  m.site_tensors[static_cast<std::size_t>(i + 1)] =
      canonical_order(rename_index(right, "__bond", bond_name(i + 1)), i + 1);
  m.ortho_center = i + 1;
  return res;
}

MpsEvolveResult evolve_mps(const OtocCircuit& c, std::int64_t max_bond, double cutoff) {
  if (!c.geometry.is_line())
    throw std::invalid_argument("evolve_mps: circuit geometry is not a line");
  MpsEvolveResult res;
  res.qubits = c.active_qubits;
  std::sort(res.qubits.begin(), res.qubits.end());
  res.mps = product_zero_mps(static_cast<int>(res.qubits.size()));

  auto chain_index = [&](const Site& s) {
    const auto it = std::lower_bound(res.qubits.begin(), res.qubits.end(), s);
    if (it == res.qubits.end() || *it != s)
      throw std::invalid_argument("evolve_mps: gate touches a pruned qubit");
    return static_cast<int>(it - res.qubits.begin());
  };

  for (const auto& g : c.gates) {
    if (is_two_qubit(g)) {
      int a = chain_index(g.sites[0]);
      int b = chain_index(g.sites[1]);
      if (a > b) std::swap(a, b);
      if (b != a + 1) throw std::invalid_argument("evolve_mps: non-adjacent two-qubit gate");
      auto r = apply_two_site_gate(res.mps, a, g.kind, max_bond, cutoff);
      res.total_discarded_weight += r.discarded_weight;
      res.max_bond = std::max(res.max_bond, r.new_bond);
      if (r.new_bond > 2 * r.old_bond) res.bond_growth_within_factor_2 = false;
    } else {
      apply_single_site_gate(res.mps, chain_index(g.sites[0]), g.kind);
    }
  }
  return res;
}

double mps_expectation_z(const Mps& m, int site) {
  const int n = m.num_sites();
  if (site < 0 || site >= n) throw std::invalid_argument("mps_expectation_z: bad site");

  auto run = [&](bool with_z) {
    // env carries (l_i, l_i') after absorbing sites < i.
    DenseTensor env({{bond_name(0), 1}, {bond_name(0) + "'", 1}});
    env.mutable_data()[0] = Complex(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto& a = m.site_tensors[static_cast<std::size_t>(i)];
      DenseTensor ket = contract(env, a, {{bond_name(i), bond_name(i)}});
      if (with_z && i == site) {
        Matrix2c z;
        z << 1, 0, 0, -1;
        ket = apply_matrix(ket, phys_name(i), MatrixXc(z));
      }
      DenseTensor bra = conjugate(a);
      bra = rename_index(bra, bond_name(i), bond_name(i) + "'");
      bra = rename_index(bra, bond_name(i + 1), bond_name(i + 1) + "'");
      env = contract(ket, bra,
                     {{phys_name(i), phys_name(i)}, {bond_name(i) + "'", bond_name(i) + "'"}});
    }
    // env is now (l_n, l_n'), both dim 1.
    return env.data()[0];
  };

  const Complex num = run(true);
  const Complex den = run(false);
  if (std::abs(den) <= 0.0) throw std::runtime_error("mps_expectation_z: zero-norm state");
  const Complex v = num / den;
  return v.real();
}

StateVector mps_to_statevector(const Mps& m, const std::vector<Site>& qubits,
                               bool override_guard) {
  const int n = m.num_sites();
  if (static_cast<int>(qubits.size()) != n)
    throw std::invalid_argument("mps_to_statevector: qubit list size mismatch");
  if (n > kMpsToStateGuard && !override_guard)
    throw std::runtime_error("mps_to_statevector: size guard exceeded");

  DenseTensor acc = m.site_tensors[0];
  for (int i = 1; i < n; ++i)
    acc = contract(acc, m.site_tensors[static_cast<std::size_t>(i)],
                   {{bond_name(i), bond_name(i)}});
  // acc: (l_0, p_0, p_1, ..., p_{n-1}, l_n) with boundary dims 1.
  std::vector<std::string> order;
  order.push_back(bond_name(0));
  for (int i = 0; i < n; ++i) order.push_back(phys_name(i));
  order.push_back(bond_name(n));
  acc = permute(acc, std::span<const std::string>(order));

  StateVector sv;
  sv.qubits = qubits;
  std::sort(sv.qubits.begin(), sv.qubits.end());
  sv.amplitudes = acc.data();
  return sv;
}

}  // namespace otoc
