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

#include "otoc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "otoc/rng.hpp"
#include "otoc/statevector.hpp"

namespace otoc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void EnsembleSpec::validate() const {
  if (depth_T < 0) throw std::invalid_argument("ensemble: depth_T must be >= 0");
  if (!geometry.contains(m_site)) throw std::invalid_argument("ensemble: m_site outside grid");
  if (!geometry.contains(b_site)) throw std::invalid_argument("ensemble: b_site outside grid");
  if (num_instances < 2)
    throw std::invalid_argument("ensemble: num_instances must be >= 2 (SNR needs a sample std)");
  if (alpha < 0.0 || alpha > 2.0)
    throw std::invalid_argument("ensemble: alpha must lie in [0, 2]");
}

LightconeGeometry make_lightcone_geometry(bool one_dimensional, bool diagonal, double v_mb,
                                          int depth_T) {
  LightconeGeometry lc;
  lc.v_mb = v_mb;
  const double c = one_dimensional ? lc.c_1d : (diagonal ? lc.c_d : lc.c_h);
  if (v_mb > c) throw std::invalid_argument("lightcone: v_mb exceeds the applicable speed");
  lc.ell_g = (1.0 - v_mb / c) * depth_T;
  return lc;
}

namespace {

// Two-qubit bonds of brickwall step k over the full geometry, lex ordered.
// 1D alternates even/odd bonds; 2D cycles horizontal-even, horizontal-odd,
// vertical-even, vertical-odd.
std::vector<Bond> pattern_bonds(const Geometry& geom, int step) {
  std::vector<Bond> bonds;
  if (geom.is_line()) {
    const int parity = step % 2;
    for (int x = parity; x + 1 < geom.width; x += 2)
      bonds.push_back({{x, 0}, {x + 1, 0}});
    return bonds;
  }
  const int orient = step % 4;
  if (orient == 0 || orient == 1) {
    const int parity = orient;
    for (int x = parity; x + 1 < geom.width; x += 2)
      for (int y = 0; y < geom.height; ++y) bonds.push_back({{x, y}, {x + 1, y}});
  } else {
    const int parity = orient - 2;
    for (int y = parity; y + 1 < geom.height; y += 2)
      for (int x = 0; x < geom.width; ++x) bonds.push_back({{x, y}, {x, y + 1}});
  }
  std::sort(bonds.begin(), bonds.end());
  return bonds;
}

std::vector<Site> all_sites(const Geometry& geom) {
  std::vector<Site> sites;
  for (int x = 0; x < geom.width; ++x)
    for (int y = 0; y < geom.height; ++y) sites.push_back({x, y});
  std::sort(sites.begin(), sites.end());
  return sites;
}

// Global layer-id bookkeeping for an assembled circuit of depth T:
//   first-order:  U ids [0,2T), B at 2T, U-dagger ids (2T,4T]
//   second-order: additionally Z at 4T+1, U ids [4T+2,6T+2), B at 6T+2,
//                 U-dagger ids (6T+2,8T+2]
struct LayerSchedule {
  int T = 0;
  OtocOrder order = OtocOrder::Otoc1;

  int last_id() const { return order == OtocOrder::Otoc1 ? 4 * T : 8 * T + 2; }

  // Maps a global id to the brickwall step whose two-qubit pattern acts
  // there, or -1 for single-qubit layers and markers.
  int two_qubit_step(int id) const {
    const int T2 = 2 * T;
    int src = -1;
    if (id >= 0 && id < T2) src = id;
    else if (id > T2 && id <= 2 * T2) src = 2 * T2 - id;
    else if (order == OtocOrder::Otoc2) {
      const int base = 2 * T2 + 2;
      if (id >= base && id < base + T2) src = id - base;
      else if (id > base + T2 && id <= base + 2 * T2) src = 2 * (base + T2) - id - base;
    }
    if (src < 0 || src % 2 == 0) return -1;
    return (src - 1) / 2;
  }
};

// Infected-set walk over the full brickwall pattern. Returns, for each global
// id in [0, last], the cone membership set to test gates at that id against.
// Walking away from (start_site, start_id), two-qubit pattern layers closer
// to the start expand the set before it is used at ids further away.
std::vector<std::set<Site>> cone_sets(const Geometry& geom, const LayerSchedule& sched,
                                      const Site& start_site, int start_id, int direction) {
  const int last = sched.last_id();
  std::vector<std::set<Site>> sets(static_cast<std::size_t>(last + 1));
  std::set<Site> infected = {start_site};
  for (int id = start_id + direction; id >= 0 && id <= last; id += direction) {
    sets[static_cast<std::size_t>(id)] = infected;
    const int step = sched.two_qubit_step(id);
    if (step >= 0) {
      for (const auto& [a, b] : pattern_bonds(geom, step)) {
        if (infected.count(a) || infected.count(b)) {
          infected.insert(a);
          infected.insert(b);
        }
      }
    }
  }
  return sets;
}

bool in_cone(const std::vector<std::set<Site>>& sets, const Gate& g) {
  const auto& s = sets[static_cast<std::size_t>(g.layer)];
  for (const auto& site : g.sites)
    if (s.count(site)) return true;
  return false;
}

void sort_canonical(std::vector<Gate>& gates) {
  std::stable_sort(gates.begin(), gates.end(), [](const Gate& a, const Gate& b) {
    if (a.layer != b.layer) return a.layer < b.layer;
    return a.sites < b.sites;
  });
}

bool is_marker(const Gate& g) {
  return std::holds_alternative<PauliX>(g.kind) || std::holds_alternative<PauliZ>(g.kind);
}

}  // namespace

std::vector<Gate> build_evolution(const EnsembleSpec& spec, int instance_index) {
  spec.validate();
  if (instance_index < 0 || instance_index >= spec.num_instances)
    throw std::invalid_argument("build_evolution: instance index out of range");
  DetRng rng = DetRng::for_instance(spec.master_seed,
                                    static_cast<std::uint64_t>(instance_index));
  const bool singles =
      spec.family == GateFamily::ISwapLike || spec.haar_single_qubit_layers;
  const auto sites = all_sites(spec.geometry);
  static constexpr double kThetaChoices[3] = {0.25, 0.5, 0.75};

  std::vector<Gate> gates;
  for (int k = 0; k < spec.depth_T; ++k) {
    if (singles) {
      for (const auto& s : sites) {
        const double theta = kPi * kThetaChoices[rng.uniform_int(3)];
        const double phi = kPi * rng.uniform(-1.0, 1.0);
        gates.push_back({SingleQubitRot{theta, phi}, {s}, 2 * k});
      }
    }
    for (const auto& [a, b] : pattern_bonds(spec.geometry, k)) {
      GateKind kind;
      if (spec.family == GateFamily::Haar) {
        kind = HaarTwoQubit{Matrix4c(haar_unitary(rng, 4))};
      } else {
        kind = FSimLike{spec.alpha, spec.cphase};
      }
      gates.push_back({kind, {a, b}, 2 * k + 1});
    }
  }
  return gates;
}

OtocCircuit build_otoc_circuit(const std::vector<Gate>& u_gates, const EnsembleSpec& spec,
                               OtocOrder order, int instance_index) {
  spec.validate();
  const int T2 = 2 * spec.depth_T;
  OtocCircuit c;
  c.geometry = spec.geometry;
  c.m_site = spec.m_site;
  c.b_site = spec.b_site;
  c.order = order;
  c.depth_T = spec.depth_T;
  c.seed = spec.master_seed;
  c.instance = instance_index;
  c.active_qubits = all_sites(spec.geometry);

  auto append_u = [&](int base) {
    for (const auto& g : u_gates) {
      Gate copy = g;
      copy.layer = base + g.layer;
      c.gates.push_back(copy);
    }
  };
  auto append_u_dagger = [&](int mirror_around) {
    for (auto it = u_gates.rbegin(); it != u_gates.rend(); ++it) {
      Gate copy = adjoint_gate(*it);
      copy.layer = mirror_around - it->layer;
      c.gates.push_back(copy);
    }
  };

  append_u(0);
  c.gates.push_back({PauliX{}, {spec.b_site}, T2});
  append_u_dagger(2 * T2);
  if (order == OtocOrder::Otoc2) {
    c.gates.push_back({PauliZ{}, {spec.m_site}, 2 * T2 + 1});
    const int base = 2 * T2 + 2;
    append_u(base);
    c.gates.push_back({PauliX{}, {spec.b_site}, base + T2});
    append_u_dagger(2 * (base + T2) - base);
  }
  sort_canonical(c.gates);
  return c;
}

OtocCircuit build_instance(const EnsembleSpec& spec, int instance_index) {
  return build_otoc_circuit(build_evolution(spec, instance_index), spec, spec.order,
                            instance_index);
}

OtocCircuit prune_geometric_lightcones(const OtocCircuit& c, const PruneOptions& opts) {
  const LayerSchedule sched{c.depth_T, c.order};
  const int T2 = 2 * c.depth_T;
  const int last = sched.last_id();

  // Butterfly cones, one backward and one forward walk per insertion point.
  std::vector<std::set<Site>> b_back1, b_fwd1, b_back2, b_fwd2;
  if (opts.drop_outside_butterfly_cone) {
    b_back1 = cone_sets(c.geometry, sched, c.b_site, T2, -1);
    b_fwd1 = cone_sets(c.geometry, sched, c.b_site, T2, +1);
    if (c.order == OtocOrder::Otoc2) {
      b_back2 = cone_sets(c.geometry, sched, c.b_site, 3 * T2 + 2, -1);
      b_fwd2 = cone_sets(c.geometry, sched, c.b_site, 3 * T2 + 2, +1);
    }
  }
  std::vector<std::set<Site>> m_back, m_fwd;
  if (opts.drop_outside_measure_back_cone)
    m_back = cone_sets(c.geometry, sched, c.m_site, last + 1, -1);
  if (opts.drop_outside_measure_fwd_cone)
    m_fwd = cone_sets(c.geometry, sched, c.m_site, -1, +1);

  auto in_butterfly_cone = [&](const Gate& g) {
    const int id = g.layer;
    if (id < T2) return in_cone(b_back1, g);
    if (id <= 2 * T2) return in_cone(b_fwd1, g);
    if (id == 2 * T2 + 1) return true;  // mid-circuit measurement marker
    if (id < 3 * T2 + 2) return in_cone(b_back2, g);
    return in_cone(b_fwd2, g);
  };

  OtocCircuit out = c;
  out.gates.clear();
  for (const auto& g : c.gates) {
    if (opts.drop_outside_butterfly_cone && !is_marker(g) && !in_butterfly_cone(g)) continue;
    if (opts.drop_outside_measure_back_cone && !in_cone(m_back, g)) continue;
    if (opts.drop_outside_measure_fwd_cone && !in_cone(m_fwd, g)) continue;
    out.gates.push_back(g);
  }
  sort_canonical(out.gates);

  if (opts.drop_idle_qubits) {
    std::set<Site> touched = {c.m_site};
    for (const auto& g : out.gates)
      for (const auto& s : g.sites) touched.insert(s);
    out.active_qubits.assign(touched.begin(), touched.end());
  }
  return out;
}

std::pair<std::map<Bond, int>, int> max_gates_per_bond(const OtocCircuit& c) {
  std::map<Bond, int> counts;
  int max_count = 0;
  for (const auto& g : c.gates) {
    if (!is_two_qubit(g)) continue;
    Bond b{g.sites[0], g.sites[1]};
    if (b.second < b.first) std::swap(b.first, b.second);
    max_count = std::max(max_count, ++counts[b]);
  }
  return {std::move(counts), max_count};
}

BSelectionResult select_b_location(const EnsembleSpec& spec_without_b, double sigma_threshold,
                                   int probe_instances, int max_probe_qubits) {
  if (probe_instances < 2)
    throw std::invalid_argument("select_b_location: need at least 2 probe instances");
  EnsembleSpec probe = spec_without_b;
  probe.order = OtocOrder::Otoc1;
  probe.num_instances = std::max(probe.num_instances, probe_instances);
  probe.b_site = probe.m_site;
  probe.validate();

  // Only sites reachable from m within the evolution depth can carry signal;
  // everywhere else the correlator is exactly 1 for every instance.
  const LayerSchedule sched{probe.depth_T, OtocOrder::Otoc1};
  const auto reach = cone_sets(probe.geometry, sched, probe.m_site, -1, +1);
  std::set<Site> candidates =
      probe.depth_T > 0 ? reach[static_cast<std::size_t>(2 * probe.depth_T)]
                        : std::set<Site>{probe.m_site};
  candidates.insert(probe.m_site);

  BSelectionResult res;
  std::vector<std::vector<Gate>> u_cache;
  for (int i = 0; i < probe_instances; ++i) u_cache.push_back(build_evolution(probe, i));

  for (const auto& cand : candidates) {
    EnsembleSpec s = probe;
    s.b_site = cand;
    OtocCircuit pruned =
        prune_geometric_lightcones(build_otoc_circuit(u_cache[0], s, OtocOrder::Otoc1, 0));
    auto [counts, maxc] = max_gates_per_bond(pruned);
    res.hardness[cand] = maxc;
    res.pruned_n[cand] = pruned.num_qubits();
    res.total_gates[cand] = static_cast<int>(pruned.gates.size());
    if (pruned.num_qubits() > max_probe_qubits) continue;  // too large to probe exactly

    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < probe_instances; ++i) {
      OtocCircuit inst =
          prune_geometric_lightcones(build_otoc_circuit(u_cache[i], s, OtocOrder::Otoc1, i));
      const double v = otoc_exact(inst);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / probe_instances;
    const double var = std::max(0.0, (sumsq - probe_instances * mean * mean) /
                                         (probe_instances - 1));
    res.sigma_map[cand] = std::sqrt(var);
  }

  for (const auto& [site, sigma] : res.sigma_map) res.sigma_max = std::max(res.sigma_max, sigma);
  if (res.sigma_max < 1e-12)
    throw std::runtime_error(
        "select_b_location: all candidates have vanishing signal (Sigma = " +
        std::to_string(res.sigma_max) + ")");

  for (const auto& [site, sigma] : res.sigma_map)
    if (sigma >= sigma_threshold * res.sigma_max) res.survivors.push_back(site);

  std::vector<Site> ranked = res.survivors;
  std::sort(ranked.begin(), ranked.end(), [&](const Site& a, const Site& b) {
    const int ha = res.hardness.at(a), hb = res.hardness.at(b);
    if (ha != hb) return ha > hb;
    const int ga = res.total_gates.at(a), gb = res.total_gates.at(b);
    if (ga != gb) return ga > gb;
    return a < b;
  });
  res.chosen = ranked.front();
  return res;
}

}  // namespace otoc
