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

#include "otoc/peps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace otoc {

Bond make_bond(const Site& a, const Site& b) {
  return a < b ? Bond{a, b} : Bond{b, a};
}

std::string phys_index_name(const Site& s) { return "p@" + to_string(s); }

std::string bond_index_name(const Bond& b) {
  return "b@" + to_string(b.first) + "|" + to_string(b.second);
}

QubitGraph QubitGraph::induced(const std::vector<Site>& sites) {
  QubitGraph g;
  g.vertices = sites;
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  std::set<Site> present(g.vertices.begin(), g.vertices.end());
  for (const auto& v : g.vertices) {
    g.adjacency[v] = {};
    for (const Site n : {Site{v.x + 1, v.y}, Site{v.x - 1, v.y}, Site{v.x, v.y + 1},
                         Site{v.x, v.y - 1}}) {
      if (present.count(n)) {
        g.adjacency[v].push_back(n);
        if (v < n) g.edges.push_back({v, n});
      }
    }
    std::sort(g.adjacency[v].begin(), g.adjacency[v].end());
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

bool QubitGraph::has_edge(const Bond& b) const {
  return std::binary_search(edges.begin(), edges.end(), b);
}

bool QubitGraph::is_tree() const {
  // A forest has |E| = |V| - (number of components).
  std::map<Site, int> comp;
  int n_comp = 0;
  for (const auto& v : vertices) {
    if (comp.count(v)) continue;
    ++n_comp;
    std::vector<Site> stack = {v};
    comp[v] = n_comp;
    while (!stack.empty()) {
      Site cur = stack.back();
      stack.pop_back();
      for (const auto& n : adjacency.at(cur)) {
        if (!comp.count(n)) {
          comp[n] = n_comp;
          stack.push_back(n);
        }
      }
    }
  }
  return edges.size() + static_cast<std::size_t>(n_comp) == vertices.size();
}

std::map<Bond, std::int64_t> Peps::bond_dims() const {
  std::map<Bond, std::int64_t> dims;
  for (const auto& e : graph.edges)
    dims[e] = tensors.at(e.first).dim(bond_index_name(e));
  return dims;
}

std::int64_t Peps::max_bond_dim() const {
  std::int64_t m = 1;
  for (const auto& [e, d] : bond_dims()) m = std::max(m, d);
  return m;
}

Peps init_product_peps(const QubitGraph& graph) {
  Peps p;
  p.graph = graph;
  for (const auto& v : graph.vertices) {
    std::vector<IndexLabel> indices = {{phys_index_name(v), 2}};
    for (const auto& n : graph.adjacency.at(v))
      indices.push_back({bond_index_name(make_bond(v, n)), 1});
    DenseTensor t(indices);
    t.mutable_data()[0] = Complex(1.0, 0.0);  // |0> with all bonds trivial
    p.tensors.emplace(v, std::move(t));
  }
  return p;
}

namespace {

MatrixXc hermitian_sqrt(const MatrixXc& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXc hermitian_pinv(const MatrixXc& m, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double emax = ev.size() > 0 ? ev.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    ev(i) = ev(i) > rel_cutoff * emax ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MessageSet MessageSet::identity_init(const Peps& p) {
  MessageSet ms;
  const auto dims = p.bond_dims();
  for (const auto& e : p.graph.edges) {
    const auto d = dims.at(e);
    const MatrixXc id = MatrixXc::Identity(d, d) / static_cast<double>(d);
    ms.set(e.first, e.second, id);
    ms.set(e.second, e.first, id);
  }
  return ms;
}

MessageSet MessageSet::random_psd_init(const Peps& p, DetRng& rng) {
  MessageSet ms;
  const auto dims = p.bond_dims();
  for (const auto& e : p.graph.edges) {
    const auto d = dims.at(e);
    for (int dir = 0; dir < 2; ++dir) {
      MatrixXc a(d, d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) a(r, c) = rng.complex_gaussian();
      MatrixXc m = a * a.adjoint() + 1e-3 * MatrixXc::Identity(d, d);
      if (dir == 0)
        ms.set(e.first, e.second, m);
      else
        ms.set(e.second, e.first, m);
    }
  }
  return ms;
}

const MessageSet::Message& MessageSet::at(const Site& from, const Site& to) const {
  const auto it = msgs_.find({from, to});
  if (it == msgs_.end())
    throw std::invalid_argument("message set has no entry " + to_string(from) + "->" +
                                to_string(to));
  return it->second;
}

void MessageSet::set(const Site& from, const Site& to, const MatrixXc& m) {
  MatrixXc h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (tr > 0.0) h /= tr;
  Message msg;
  msg.m = h;
  msg.sqrt_m = hermitian_sqrt(h);
  msgs_[{from, to}] = std::move(msg);
}

void MessageSet::set_edge_diagonal(const Bond& b, const std::vector<double>& lambda) {
  const auto d = static_cast<Eigen::Index>(lambda.size());
  MatrixXc m = MatrixXc::Zero(d, d);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) tr += lambda[static_cast<std::size_t>(i)];
  if (tr <= 0.0) tr = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = lambda[static_cast<std::size_t>(i)] / tr;
  Message msg;
  msg.m = m;
  msg.sqrt_m = m.cwiseSqrt();
  msgs_[{b.first, b.second}] = msg;
  msgs_[{b.second, b.first}] = std::move(msg);
}

void apply_single_qubit_gate(Peps& p, const Gate& g) {
  const Site s = g.sites.at(0);
  if (!p.graph.has_vertex(s))
    throw std::invalid_argument("apply_single_qubit_gate: site not in graph");
  const Matrix2c m = gate_matrix_1q(g.kind);
  auto& t = p.tensors.at(s);
  t = apply_matrix(t, phys_index_name(s), MatrixXc(m.transpose()));
}

namespace {

struct HalfSplit {
  bool has_q = false;
  DenseTensor q;  // outer legs x qr bond
  DenseTensor r;  // qr bond x (edge bond, phys)
  std::string qr_name;
};

// QR-reduce an absorbed tensor so the gate acts on a (qr, phys, edge) core.
// Degree-one vertices have no outer legs; a dummy dim-1 bond stands in.
HalfSplit split_half(const DenseTensor& t, const Site& v, const Site& partner, int slot) {
  HalfSplit h;
  h.qr_name = "__q" + std::to_string(slot);
  const std::string phys = phys_index_name(v);
  const std::string shared = bond_index_name(make_bond(v, partner));
  std::vector<std::string> outer;
  for (const auto& ix : t.indices())
    if (ix.name != phys && ix.name != shared) outer.push_back(ix.name);
  if (outer.empty()) {
    std::vector<IndexLabel> indices = t.indices();
    indices.push_back({h.qr_name, 1});
    h.r = DenseTensor(indices, t.data());
    h.has_q = false;
    return h;
  }
  auto [q, r] = qr_split(t, outer, h.qr_name);
  h.q = std::move(q);
  h.r = std::move(r);
  h.has_q = true;
  return h;
}

struct GateCoreResult {
  DenseTensor new_a, new_b;  // updated site tensors (messages not yet undone)
  std::vector<double> lambda_normalized;
  double discarded = 0.0;
};

// Shared core of the BP and cutoff-only gate application: QR, gate
// contraction, truncated SVD, symmetric split of the singular values.
GateCoreResult apply_two_qubit_core(const DenseTensor& ta, const DenseTensor& tb, const Site& a,
                                    const Site& b, const GateKind& kind, std::int64_t max_D,
                                    double cutoff) {
  const Bond bond = make_bond(a, b);
  const std::string edge = bond_index_name(bond);
  const std::string pa = phys_index_name(a);
  const std::string pb = phys_index_name(b);

  HalfSplit ha = split_half(ta, a, b, 1);
  HalfSplit hb = split_half(tb, b, a, 2);

  DenseTensor blob = contract(ha.r, hb.r, {{edge, edge}});
  // Gate slots follow the lex order of the bond endpoints.
  const std::string out_a = "__oa", out_b = "__ob";
  DenseTensor gate = (a == bond.first) ? gate_tensor_2q(kind, out_a, out_b, pa, pb)
                                       : gate_tensor_2q(kind, out_b, out_a, pb, pa);
  blob = contract(blob, gate, {{pa, pa}, {pb, pb}});

  SvdResult svd = svd_truncate(blob, {ha.qr_name, out_a}, max_D, cutoff, "__bond");

  double kept = 0.0;
  for (double s : svd.singular_values) kept += s * s;
  const double total = kept + svd.discarded_weight;
  const double norm = std::sqrt(kept);

  GateCoreResult res;
  res.discarded = total > 0.0 ? svd.discarded_weight / total : 0.0;
  res.lambda_normalized.reserve(svd.singular_values.size());
  for (double s : svd.singular_values)
    res.lambda_normalized.push_back(norm > 0.0 ? s / norm : 0.0);

  const auto nb = static_cast<Eigen::Index>(res.lambda_normalized.size());
  MatrixXc sqrt_lambda = MatrixXc::Zero(nb, nb);
  for (Eigen::Index i = 0; i < nb; ++i)
    sqrt_lambda(i, i) = std::sqrt(res.lambda_normalized[static_cast<std::size_t>(i)]);

  DenseTensor left = rename_index(rename_index(svd.left, "__bond", edge), out_a, pa);
  DenseTensor right = rename_index(rename_index(svd.right, "__bond", edge), out_b, pb);
  left = apply_matrix(left, edge, sqrt_lambda);
  right = apply_matrix(right, edge, sqrt_lambda);

  auto reattach = [](const HalfSplit& h, const DenseTensor& core) {
    if (h.has_q) return contract(h.q, core, {{h.qr_name, h.qr_name}});
    // Merge the dummy dim-1 leg into its neighbor.
    std::string other;
    for (const auto& ix : core.indices())
      if (ix.name != h.qr_name) {
        other = ix.name;
        break;
      }
    return fuse(core, {h.qr_name, other}, other);
  };
  res.new_a = reattach(ha, left);
  res.new_b = reattach(hb, right);
  return res;
}

}  // namespace

GateApplyResult apply_gate_bp(Peps& p, MessageSet& msgs, const Gate& g, const BpConfig& cfg) {
  if (!is_two_qubit(g)) {
    apply_single_qubit_gate(p, g);
    return {};
  }
  const Site a = g.sites.at(0), b = g.sites.at(1);
  const Bond bond = make_bond(a, b);
  if (!p.graph.has_edge(bond))
    throw std::invalid_argument("apply_gate_bp: gate does not act on a graph edge");

  // Absorb sqrt messages from all non-shared neighbors.
  auto absorbed = [&](const Site& v, const Site& partner) {
    DenseTensor t = p.tensors.at(v);
    for (const auto& n : p.graph.adjacency.at(v)) {
      if (n == partner) continue;
      t = apply_matrix(t, bond_index_name(make_bond(v, n)), msgs.at(n, v).sqrt_m);
    }
    return t;
  };
  DenseTensor ta = absorbed(a, b);
  DenseTensor tb = absorbed(b, a);

  GateCoreResult core = apply_two_qubit_core(ta, tb, a, b, g.kind, cfg.max_D, cfg.sv_cutoff);

  // Undo the absorbed messages with pseudo-inverses.
  auto unabsorb = [&](DenseTensor t, const Site& v, const Site& partner) {
    for (const auto& n : p.graph.adjacency.at(v)) {
      if (n == partner) continue;
      t = apply_matrix(t, bond_index_name(make_bond(v, n)),
                       hermitian_pinv(msgs.at(n, v).sqrt_m, cfg.pinv_cutoff));
    }
    return t;
  };
  p.tensors.at(a) = unabsorb(std::move(core.new_a), a, b);
  p.tensors.at(b) = unabsorb(std::move(core.new_b), b, a);

  msgs.set_edge_diagonal(bond, core.lambda_normalized);

  GateApplyResult res;
  res.singular_values = std::move(core.lambda_normalized);
  res.discarded_weight = core.discarded;
  return res;
}

namespace {

// Cutoff-only application, no gauge and no messages.
GateApplyResult apply_gate_raw(Peps& p, const Gate& g, std::int64_t max_D, double cutoff) {
  if (!is_two_qubit(g)) {
    apply_single_qubit_gate(p, g);
    return {};
  }
  const Site a = g.sites.at(0), b = g.sites.at(1);
  const Bond bond = make_bond(a, b);
  if (!p.graph.has_edge(bond))
    throw std::invalid_argument("apply_gate: gate does not act on a graph edge");
  GateCoreResult core = apply_two_qubit_core(p.tensors.at(a), p.tensors.at(b), a, b, g.kind,
                                             max_D, cutoff);
  p.tensors.at(a) = std::move(core.new_a);
  p.tensors.at(b) = std::move(core.new_b);
  GateApplyResult res;
  res.singular_values = std::move(core.lambda_normalized);
  res.discarded_weight = core.discarded;
  return res;
}

DenseTensor message_update(const Peps& p, const MessageSet& msgs, const Site& from,
                           const Site& to) {
  const std::string target = bond_index_name(make_bond(from, to));
  DenseTensor ket = p.tensors.at(from);
  std::vector<std::pair<std::string, std::string>> pairs = {{phys_index_name(from),
                                                             phys_index_name(from)}};
  for (const auto& n : p.graph.adjacency.at(from)) {
    if (n == to) continue;
    const std::string leg = bond_index_name(make_bond(from, n));
    ket = apply_matrix(ket, leg, msgs.at(n, from).m);
    pairs.push_back({leg, leg});
  }
  DenseTensor bra = conjugate(p.tensors.at(from));
  bra = rename_index(bra, target, target + "'");
  return contract(ket, bra, pairs);  // (target [ket], target' [bra])
}

}  // namespace

BpConvergeResult bp_converge(const Peps& p, MessageSet& msgs, const BpConfig& cfg) {
  BpConvergeResult res;
  for (int it = 1; it <= cfg.bp_max_iters; ++it) {
    MessageSet next = msgs;
    double max_change = 0.0;
    for (const auto& e : p.graph.edges) {
      for (int dir = 0; dir < 2; ++dir) {
        const Site from = dir == 0 ? e.first : e.second;
        const Site to = dir == 0 ? e.second : e.first;
        DenseTensor upd = message_update(p, msgs, from, to);
        upd = permute(upd, {bond_index_name(e), bond_index_name(e) + "'"});
        const auto d = upd.dim(bond_index_name(e));
        MatrixXc m(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
          for (Eigen::Index c = 0; c < d; ++c)
            m(r, c) = upd.data()[static_cast<std::size_t>(r * d + c)];
        next.set(from, to, m);
        max_change = std::max(max_change, (next.at(from, to).m - msgs.at(from, to).m).norm());
      }
    }
    msgs = std::move(next);
    res.iterations = it;
    res.residual = max_change;
    if (max_change < cfg.bp_tolerance) break;
  }
  return res;
}

namespace {

PepsEvolveResult evolve_impl(const OtocCircuit& c, const BpConfig& cfg, int resync_every,
                             bool use_bp, std::int64_t raw_guard) {
  PepsEvolveResult out;
  out.peps = init_product_peps(QubitGraph::induced(c.active_qubits));
  if (use_bp) {
    if (cfg.message_init == MessageInit::RandomPsd) {
      DetRng rng(c.seed ^ 0x6d657373616765ULL);
      out.messages = MessageSet::random_psd_init(out.peps, rng);
    } else {
      out.messages = MessageSet::identity_init(out.peps);
    }
  }

  auto& diag = out.diagnostics;
  int layers_since_sync = 0;
  std::size_t i = 0;
  while (i < c.gates.size()) {
    const int layer = c.gates[i].layer;
    double layer_discarded = 0.0;
    bool has_two_qubit = false;
    while (i < c.gates.size() && c.gates[i].layer == layer) {
      const Gate& g = c.gates[i];
      if (is_two_qubit(g)) {
        has_two_qubit = true;
        GateApplyResult r = use_bp ? apply_gate_bp(out.peps, out.messages, g, cfg)
                                   : apply_gate_raw(out.peps, g, cfg.max_D, cfg.sv_cutoff);
        layer_discarded += r.discarded_weight;
        diag.max_bond = std::max(diag.max_bond,
                                 static_cast<std::int64_t>(r.singular_values.size()));
        if (!use_bp && diag.max_bond > raw_guard)
          throw std::runtime_error("evolve_peps_untruncated: bond guard exceeded (" +
                                   std::to_string(diag.max_bond) + " > " +
                                   std::to_string(raw_guard) + ")");
      } else {
        apply_single_qubit_gate(out.peps, g);
      }
      ++i;
    }
    diag.per_layer_discarded.push_back(layer_discarded);
    diag.total_discarded += layer_discarded;
    if (use_bp && has_two_qubit && ++layers_since_sync >= resync_every) {
      BpConvergeResult r = bp_converge(out.peps, out.messages, cfg);
      diag.bp_iterations.push_back(r.iterations);
      layers_since_sync = 0;
    }
  }
  return out;
}

}  // namespace

PepsEvolveResult evolve_peps_bp(const OtocCircuit& c, const BpConfig& cfg, int resync_every) {
  if (resync_every < 1) throw std::invalid_argument("evolve_peps_bp: resync_every must be >= 1");
  return evolve_impl(c, cfg, resync_every, true, 0);
}

PepsEvolveResult evolve_peps_untruncated(const OtocCircuit& c, double sv_cutoff) {
  BpConfig cfg;
  cfg.max_D = INT64_MAX;
  cfg.sv_cutoff = sv_cutoff;
  return evolve_impl(c, cfg, 1, false, kUntruncatedBondGuard);
}

Peps final_truncate_bp(const Peps& p, const BpConfig& cfg) {
  MessageSet msgs = MessageSet::identity_init(p);
  bp_converge(p, msgs, cfg);
  return final_truncate_bp(p, msgs, cfg);
}

Peps final_truncate_bp(const Peps& p, const MessageSet& converged, const BpConfig& cfg) {
  Peps out = p;
  MessageSet msgs = converged;
  for (const auto& e : out.graph.edges) {
    Gate identity{FSimLike{0.0, 0.0}, {e.first, e.second}, 0};
    apply_gate_bp(out, msgs, identity, cfg);
  }
  return out;
}

Peps exact_peps_from_circuit(const OtocCircuit& c) {
  Peps p = init_product_peps(QubitGraph::induced(c.active_qubits));
  for (const auto& g : c.gates) {
    if (!is_two_qubit(g)) {
      apply_single_qubit_gate(p, g);
      continue;
    }
    const Site a = g.sites.at(0), b = g.sites.at(1);
    const Bond bond = make_bond(a, b);
    if (!p.graph.has_edge(bond))
      throw std::invalid_argument("exact_peps_from_circuit: gate off the graph");
    const std::string edge = bond_index_name(bond);
    const std::string pa = phys_index_name(a), pb = phys_index_name(b);

    DenseTensor gate = (a == bond.first) ? gate_tensor_2q(g.kind, "__oa", "__ob", pa, pb)
                                         : gate_tensor_2q(g.kind, "__ob", "__oa", pb, pa);
    SvdResult svd = svd_truncate(gate, {"__oa", pa}, 4, 1e-14, "__k");
    // Put the singular values symmetrically on the new auxiliary leg.
    const auto k = static_cast<Eigen::Index>(svd.singular_values.size());
    MatrixXc sq = MatrixXc::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      sq(i, i) = std::sqrt(svd.singular_values[static_cast<std::size_t>(i)]);
    DenseTensor ga = apply_matrix(svd.left, "__k", sq);
    DenseTensor gb = apply_matrix(svd.right, "__k", sq);

    auto grow = [&](const Site& v, const DenseTensor& piece, const std::string& out_name) {
      auto& t = p.tensors.at(v);
      const std::string pv = phys_index_name(v);
      DenseTensor nt = contract(t, piece, {{pv, pv}});
      nt = rename_index(nt, out_name, pv);
      nt = fuse(nt, {edge, "__k"}, edge);
      if (nt.dim(edge) > kExactPepsBondGuard)
        throw std::runtime_error("exact_peps_from_circuit: bond guard exceeded");
      t = std::move(nt);
    };
    grow(a, ga, "__oa");
    grow(b, gb, "__ob");
  }
  return p;
}

void save_peps(const Peps& p, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_peps: cannot open " + path);
  auto write_u64 = [&](std::uint64_t v) { f.write(reinterpret_cast<const char*>(&v), 8); };
  auto write_i32 = [&](std::int32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
  auto write_str = [&](const std::string& s) {
    write_u64(s.size());
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
  };
  f.write("OTOCPEPS", 8);
  write_u64(1);  // version
  write_u64(p.graph.vertices.size());
  for (const auto& v : p.graph.vertices) {
    write_i32(v.x);
    write_i32(v.y);
  }
  write_u64(p.graph.edges.size());
  for (const auto& e : p.graph.edges) {
    write_i32(e.first.x);
    write_i32(e.first.y);
    write_i32(e.second.x);
    write_i32(e.second.y);
  }
  for (const auto& v : p.graph.vertices) {
    const auto& t = p.tensors.at(v);
    write_u64(static_cast<std::uint64_t>(t.rank()));
    for (const auto& ix : t.indices()) {
      write_str(ix.name);
      write_u64(static_cast<std::uint64_t>(ix.dim));
    }
    for (const auto& z : t.data()) {
      const double re = z.real(), im = z.imag();
      f.write(reinterpret_cast<const char*>(&re), 8);
      f.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
}

Peps load_peps(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_peps: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (std::string(magic, 8) != "OTOCPEPS") throw std::runtime_error("load_peps: bad magic");
  auto read_u64 = [&]() {
    std::uint64_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto read_i32 = [&]() {
    std::int32_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  auto read_str = [&]() {
    std::string s(read_u64(), '\0');
    f.read(s.data(), static_cast<std::streamsize>(s.size()));
    return s;
  };
  if (read_u64() != 1) throw std::runtime_error("load_peps: unsupported version");
  std::vector<Site> vertices(read_u64());
  for (auto& v : vertices) {
    v.x = read_i32();
    v.y = read_i32();
  }
  const std::uint64_t n_edges = read_u64();
  for (std::uint64_t i = 0; i < n_edges; ++i) {
    read_i32();
    read_i32();
    read_i32();
    read_i32();  // edges are implied by the vertex set; validated below
  }
  Peps p;
  p.graph = QubitGraph::induced(vertices);
  for (const auto& v : p.graph.vertices) {
    const std::uint64_t rank = read_u64();
    std::vector<IndexLabel> indices;
    std::int64_t size = 1;
    for (std::uint64_t i = 0; i < rank; ++i) {
      IndexLabel ix;
      ix.name = read_str();
      ix.dim = static_cast<std::int64_t>(read_u64());
      size *= ix.dim;
      indices.push_back(ix);
    }
    std::vector<Complex> data(static_cast<std::size_t>(size));
    for (auto& z : data) {
      double re = 0.0, im = 0.0;
      f.read(reinterpret_cast<char*>(&re), 8);
      f.read(reinterpret_cast<char*>(&im), 8);
      z = Complex(re, im);
    }
    p.tensors.emplace(v, DenseTensor(std::move(indices), std::move(data)));
  }
  if (!f) throw std::runtime_error("load_peps: truncated file");
  return p;
}

}  // namespace otoc
