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

#include "otoc/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace otoc {

namespace {

DenseTensor with_dummy_index(const DenseTensor& t, const std::string& name) {
  std::vector<IndexLabel> indices = t.indices();
  indices.push_back({name, 1});
  return DenseTensor(std::move(indices), t.data());
}

DenseTensor ones_tensor(const std::vector<IndexLabel>& indices) {
  std::int64_t total = 1;
  for (const auto& ix : indices) total *= ix.dim;
  if (total != 1) throw std::invalid_argument("ones_tensor: all dims must be 1");
  DenseTensor t(indices);
  t.mutable_data()[0] = Complex(1.0, 0.0);
  return t;
}

// Contract the given pairs plus every index name the tensors share beyond
// them (the natural rule when adjacent rows already expose a common bond).
DenseTensor contract_pairs_plus_shared(const DenseTensor& a, const DenseTensor& b,
                                       std::vector<std::pair<std::string, std::string>> pairs) {
  std::set<std::string> used_a, used_b;
  for (const auto& pr : pairs) {
    used_a.insert(pr.first);
    used_b.insert(pr.second);
  }
  for (const auto& ix : a.indices())
    if (!used_a.count(ix.name) && !used_b.count(ix.name) && b.has_index(ix.name))
      pairs.push_back({ix.name, ix.name});
  return contract(a, b, pairs);
}

}  // namespace

StateVector peps_to_statevector(const Peps& p, bool override_guard) {
  const auto& vertices = p.graph.vertices;
  if (vertices.empty()) throw std::invalid_argument("peps_to_statevector: empty network");
  const int n = static_cast<int>(vertices.size());
  if (n > kPepsToStateGuard && !override_guard)
    throw std::runtime_error("peps_to_statevector: qubit guard exceeded");

  // Absorb sites column-major; shared bond names contract automatically.
  DenseTensor acc = DenseTensor::scalar(Complex(1.0, 0.0));
  for (const auto& v : vertices) {
    acc = contract_shared(acc, p.tensors.at(v));
    if (acc.size() > (std::int64_t(1) << 27))
      throw std::runtime_error("peps_to_statevector: intermediate size guard exceeded");
  }

  std::vector<std::string> order;
  order.reserve(static_cast<std::size_t>(n));
  for (const auto& v : vertices) order.push_back(phys_index_name(v));
  acc = permute(acc, std::span<const std::string>(order));

  StateVector sv;
  sv.qubits = vertices;
  sv.amplitudes = acc.data();
  return sv;
}

ContractExactResult contract_exact(const Peps& p, const Site& observable_site,
                                   bool override_guard) {
  if (!p.graph.has_vertex(observable_site))
    throw std::invalid_argument("contract_exact: observable site not in graph");
  StateVector sv = peps_to_statevector(p, override_guard);
  ContractExactResult res;
  res.norm = state_norm(sv);
  if (res.norm <= 0.0) throw std::runtime_error("contract_exact: zero-norm network");
  res.expectation = expectation_z(sv, observable_site);
  return res;
}

namespace {

// All boundary-MPS work happens in a frame where the front moves along x.
struct Frame {
  Peps peps;  // possibly transposed copy
  Site observable;
  int x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  int height() const { return y1 - y0 + 1; }
};

Peps transpose_peps(const Peps& p) {
  std::vector<Site> swapped;
  swapped.reserve(p.graph.vertices.size());
  for (const auto& v : p.graph.vertices) swapped.push_back({v.y, v.x});
  Peps out;
  out.graph = QubitGraph::induced(swapped);
  for (const auto& v : p.graph.vertices) {
    const Site w{v.y, v.x};
    DenseTensor t = p.tensors.at(v);
    std::vector<IndexLabel> indices = t.indices();
    for (auto& ix : indices) {
      if (ix.name == phys_index_name(v)) {
        ix.name = phys_index_name(w);
        continue;
      }
      for (const auto& n : p.graph.adjacency.at(v)) {
        if (ix.name == bond_index_name(make_bond(v, n))) {
          ix.name = bond_index_name(make_bond(w, Site{n.y, n.x}));
          break;
        }
      }
    }
    out.tensors.emplace(w, DenseTensor(std::move(indices), t.data()));
  }
  return out;
}

Frame make_frame(const Peps& p, const Site& observable, SweepAxis axis) {
  int xmin = p.graph.vertices.front().x, xmax = xmin;
  int ymin = p.graph.vertices.front().y, ymax = ymin;
  for (const auto& v : p.graph.vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  SweepAxis chosen = axis;
  if (chosen == SweepAxis::Auto) {
    // Front along the shorter extent so the MPS spans the longer edge.
    chosen = (xmax - xmin) <= (ymax - ymin) ? SweepAxis::Columns : SweepAxis::Rows;
  }
  Frame f;
  if (chosen == SweepAxis::Columns) {
    f.peps = p;
    f.observable = observable;
    f.x0 = xmin;
    f.x1 = xmax;
    f.y0 = ymin;
    f.y1 = ymax;
  } else {
    f.peps = transpose_peps(p);
    f.observable = Site{observable.y, observable.x};
    f.x0 = ymin;
    f.x1 = ymax;
    f.y0 = xmin;
    f.y1 = xmax;
  }
  return f;
}

std::string chain_name(int y) { return "c@" + std::to_string(y); }
std::string ket_name(int y) { return "hk@" + std::to_string(y); }
std::string bra_name(int y) { return "hb@" + std::to_string(y); }

// Site tensor with all four direction legs present (dummy dim-1 where the
// lattice edge is absent) so holes and boundaries need no special cases.
DenseTensor patched_site(const Frame& f, int x, int y) {
  const Site v{x, y};
  DenseTensor t;
  if (f.peps.graph.has_vertex(v)) {
    t = f.peps.tensors.at(v);
  } else {
    t = DenseTensor::scalar(Complex(1.0, 0.0));
  }
  for (const Site n : {Site{x - 1, y}, Site{x + 1, y}, Site{x, y - 1}, Site{x, y + 1}}) {
    const std::string b = bond_index_name(make_bond(v, n));
    if (!t.has_index(b)) t = with_dummy_index(t, b);
  }
  return t;
}

struct BoundaryMps {
  std::vector<DenseTensor> sites;  // index = y - y0
  double accumulated_truncation = 0.0;
};

BoundaryMps vacuum_boundary(const Frame& f) {
  BoundaryMps mps;
  for (int y = f.y0; y <= f.y1; ++y) {
    const int r = y - f.y0;
    mps.sites.push_back(ones_tensor({{chain_name(r), 1},
                                     {ket_name(r), 1},
                                     {bra_name(r), 1},
                                     {chain_name(r + 1), 1}}));
  }
  return mps;
}

void check_size(const DenseTensor& t, const BmpsConfig& cfg) {
  if (t.size() > cfg.max_intermediate_entries)
    throw std::runtime_error("contract_bmps: intermediate size guard exceeded");
}

// Right-canonicalize, then truncate left-to-right to chi.
void compress(BoundaryMps& mps, const BmpsConfig& cfg) {
  const int h = static_cast<int>(mps.sites.size());
  for (int r = h - 1; r > 0; --r) {
    auto& t = mps.sites[static_cast<std::size_t>(r)];
    std::vector<std::string> others;
    for (const auto& ix : t.indices())
      if (ix.name != chain_name(r)) others.push_back(ix.name);
    auto [q, rest] = qr_split(t, others, "__qr");
    t = rename_index(q, "__qr", chain_name(r));
    auto& prev = mps.sites[static_cast<std::size_t>(r - 1)];
    prev = rename_index(contract(prev, rest, {{chain_name(r), chain_name(r)}}), "__qr",
                        chain_name(r));
  }
  for (int r = 0; r + 1 < h; ++r) {
    auto& t = mps.sites[static_cast<std::size_t>(r)];
    std::vector<std::string> lefts;
    for (const auto& ix : t.indices())
      if (ix.name != chain_name(r + 1)) lefts.push_back(ix.name);
    SvdResult svd = svd_truncate(t, lefts, cfg.chi, cfg.truncation_cutoff, "__bond");
    double kept = 0.0;
    for (double s : svd.singular_values) kept += s * s;
    const double total = kept + svd.discarded_weight;
    if (total > 0.0) mps.accumulated_truncation += svd.discarded_weight / total;
    t = rename_index(svd.left, "__bond", chain_name(r + 1));
    DenseTensor sv_right = svd.right;
    auto& rd = sv_right.mutable_data();
    const std::int64_t cols = sv_right.size() / static_cast<std::int64_t>(svd.singular_values.size());
    for (std::size_t k = 0; k < svd.singular_values.size(); ++k)
      for (std::int64_t c = 0; c < cols; ++c)
        rd[k * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)] *=
            svd.singular_values[k];
    auto& next = mps.sites[static_cast<std::size_t>(r + 1)];
    next = rename_index(contract(sv_right, next, {{chain_name(r + 1), chain_name(r + 1)}}),
                        "__bond", chain_name(r + 1));
  }
}

// Absorb column x into the boundary. `dir` is +1 when the front moves toward
// larger x. The open ket/bra legs switch from the bond behind the column to
// the bond ahead of it.
void absorb_column(BoundaryMps& mps, const Frame& f, int x, int dir, const BmpsConfig& cfg) {
  const int h = f.height();
  // Ket pass: contract the single-layer tensors, phys legs stay open.
  for (int r = 0; r < h; ++r) {
    const int y = f.y0 + r;
    const Site v{x, y};
    const std::string in_bond = bond_index_name(make_bond(Site{x - dir, y}, v));
    const std::string out_bond = bond_index_name(make_bond(v, Site{x + dir, y}));
    const std::string down = bond_index_name(make_bond(Site{x, y - 1}, v));
    const std::string up = bond_index_name(make_bond(v, Site{x, y + 1}));
    DenseTensor t = patched_site(f, x, y);
    DenseTensor g = contract(mps.sites[static_cast<std::size_t>(r)], t,
                             {{ket_name(r), in_bond}});
    check_size(g, cfg);
    g = fuse(g, {chain_name(r), down}, chain_name(r));
    g = fuse(g, {chain_name(r + 1), up}, chain_name(r + 1));
    g = rename_index(g, out_bond, ket_name(r));
    mps.sites[static_cast<std::size_t>(r)] = std::move(g);
  }
  compress(mps, cfg);
  // Bra pass: contract the conjugated tensors over the pending bra legs and
  // the open phys legs.
  for (int r = 0; r < h; ++r) {
    const int y = f.y0 + r;
    const Site v{x, y};
    const std::string in_bond = bond_index_name(make_bond(Site{x - dir, y}, v));
    const std::string out_bond = bond_index_name(make_bond(v, Site{x + dir, y}));
    const std::string down = bond_index_name(make_bond(Site{x, y - 1}, v));
    const std::string up = bond_index_name(make_bond(v, Site{x, y + 1}));
    DenseTensor t = patched_site(f, x, y);
    DenseTensor bra = conjugate(t);
    for (const auto& ix : t.indices()) bra = rename_index(bra, ix.name, ix.name + "*");
    std::vector<std::pair<std::string, std::string>> pairs = {{bra_name(r), in_bond + "*"}};
    const std::string phys = phys_index_name(v);
    if (f.peps.graph.has_vertex(v)) pairs.push_back({phys, phys + "*"});
    DenseTensor g = contract(mps.sites[static_cast<std::size_t>(r)], bra, pairs);
    check_size(g, cfg);
    g = fuse(g, {chain_name(r), down + "*"}, chain_name(r));
    g = fuse(g, {chain_name(r + 1), up + "*"}, chain_name(r + 1));
    g = rename_index(g, out_bond + "*", bra_name(r));
    mps.sites[static_cast<std::size_t>(r)] = std::move(g);
  }
  compress(mps, cfg);
}

// Contract a fully absorbed boundary (all open legs dim 1) to a scalar.
Complex close_boundary(const BoundaryMps& mps) {
  DenseTensor acc = DenseTensor::scalar(Complex(1.0, 0.0));
  for (const auto& t : mps.sites) acc = contract_shared(acc, t);
  if (acc.size() != 1) throw std::runtime_error("close_boundary: boundary not trivial");
  return acc.data()[0];
}

BoundaryMps rename_boundary(const BoundaryMps& mps, const std::string& suffix) {
  BoundaryMps out;
  out.accumulated_truncation = mps.accumulated_truncation;
  const int h = static_cast<int>(mps.sites.size());
  for (int r = 0; r < h; ++r) {
    DenseTensor t = mps.sites[static_cast<std::size_t>(r)];
    t = rename_index(t, chain_name(r), chain_name(r) + suffix);
    t = rename_index(t, chain_name(r + 1), chain_name(r + 1) + suffix);
    t = rename_index(t, ket_name(r), ket_name(r) + suffix);
    t = rename_index(t, bra_name(r), bra_name(r) + suffix);
    out.sites.push_back(std::move(t));
  }
  return out;
}

// Sandwich the observable column between the left and right boundaries.
Complex close_with_column(const Frame& f, const BoundaryMps& left_in, const BoundaryMps& right_in,
                          int x, bool with_z, const BmpsConfig& cfg) {
  const BoundaryMps left = rename_boundary(left_in, "L");
  const BoundaryMps right = rename_boundary(right_in, "R");
  const int h = f.height();
  DenseTensor acc = DenseTensor::scalar(Complex(1.0, 0.0));
  for (int r = 0; r < h; ++r) {
    const int y = f.y0 + r;
    const Site v{x, y};
    const std::string left_bond = bond_index_name(make_bond(Site{x - 1, y}, v));
    const std::string right_bond = bond_index_name(make_bond(v, Site{x + 1, y}));
    DenseTensor ket = patched_site(f, x, y);
    const std::string phys = phys_index_name(v);
    if (with_z && v == f.observable) {
      Matrix2c z;
      z << 1, 0, 0, -1;
      ket = apply_matrix(ket, phys, MatrixXc(z));
    }
    DenseTensor plain = patched_site(f, x, y);
    DenseTensor bra = conjugate(plain);
    for (const auto& ix : plain.indices()) bra = rename_index(bra, ix.name, ix.name + "*");

    acc = contract_shared(acc, left.sites[static_cast<std::size_t>(r)]);
    acc = contract_pairs_plus_shared(acc, ket, {{ket_name(r) + "L", left_bond}});
    check_size(acc, cfg);
    std::vector<std::pair<std::string, std::string>> pairs = {{bra_name(r) + "L",
                                                               left_bond + "*"}};
    if (f.peps.graph.has_vertex(v)) pairs.push_back({phys, phys + "*"});
    // Vertical bonds of the column contract between consecutive rows.
    acc = contract_pairs_plus_shared(acc, bra, pairs);
    check_size(acc, cfg);
    DenseTensor rsite = right.sites[static_cast<std::size_t>(r)];
    acc = contract_pairs_plus_shared(acc, rsite, {{right_bond, ket_name(r) + "R"},
                                                  {right_bond + "*", bra_name(r) + "R"}});
    check_size(acc, cfg);
  }
  if (acc.size() != 1) throw std::runtime_error("close_with_column: contraction not scalar");
  return acc.data()[0];
}

}  // namespace

BmpsResult contract_bmps(const Peps& p, const Site& observable_site, const BmpsConfig& cfg) {
  if (cfg.chi < 1) throw std::invalid_argument("contract_bmps: chi must be >= 1");
  if (!p.graph.has_vertex(observable_site))
    throw std::invalid_argument("contract_bmps: observable site not in graph");
  const std::uint64_t flops_before = tensor_ops::flop_count();
  Frame f = make_frame(p, observable_site, cfg.sweep_axis);

  BmpsResult res;
  const int mx = f.observable.x;

  // Expectation: two fronts meeting at the observable column.
  BoundaryMps left = vacuum_boundary(f);
  for (int x = f.x0; x < mx; ++x) absorb_column(left, f, x, +1, cfg);
  BoundaryMps right = vacuum_boundary(f);
  for (int x = f.x1; x > mx; --x) absorb_column(right, f, x, -1, cfg);
  const Complex numerator = close_with_column(f, left, right, mx, true, cfg);
  const Complex denominator_two_sided = close_with_column(f, left, right, mx, false, cfg);
  res.accumulated_truncation += left.accumulated_truncation + right.accumulated_truncation;

  // Norm: one full sweep from the edge farthest from the observable.
  const bool from_left = (mx - f.x0) >= (f.x1 - mx);
  BoundaryMps full = vacuum_boundary(f);
  if (from_left)
    for (int x = f.x0; x <= f.x1; ++x) absorb_column(full, f, x, +1, cfg);
  else
    for (int x = f.x1; x >= f.x0; --x) absorb_column(full, f, x, -1, cfg);
  const Complex norm_sq = close_boundary(full);
  res.accumulated_truncation += full.accumulated_truncation;

  if (std::abs(denominator_two_sided) <= 0.0)
    throw std::runtime_error("contract_bmps: vanishing norm closure");
  res.expectation = (numerator / denominator_two_sided).real();
  res.norm = std::sqrt(std::max(0.0, norm_sq.real()));
  res.flops = tensor_ops::flop_count() - flops_before;
  return res;
}

}  // namespace otoc
