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

#include "otoc/circuit_io.hpp"

#include <fstream>
#include <stdexcept>

namespace otoc {

using nlohmann::json;

namespace {

json site_to_json(const Site& s) { return json::array({s.x, s.y}); }

Site site_from_json(const json& j) { return Site{j.at(0).get<int>(), j.at(1).get<int>()}; }

json geometry_to_json(const Geometry& g) {
  json j;
  j["kind"] = g.is_line() ? "line" : "grid";
  j["width"] = g.width;
  j["height"] = g.height;
  if (!g.is_line())
    j["layer_pattern"] = json::array({"h-even", "h-odd", "v-even", "v-odd"});
  else
    j["layer_pattern"] = json::array({"bond-even", "bond-odd"});
  return j;
}

Geometry geometry_from_json(const json& j) {
  Geometry g;
  g.kind = j.at("kind").get<std::string>() == "line" ? GeometryKind::Line : GeometryKind::Grid;
  g.width = j.at("width").get<int>();
  g.height = j.at("height").get<int>();
  return g;
}

json gate_to_json(const Gate& g) {
  json jg;
  json params = json::object();
  if (const auto* rot = std::get_if<SingleQubitRot>(&g.kind)) {
    jg["kind"] = "rot";
    params["theta"] = rot->theta;
    params["phi"] = rot->phi;
  } else if (const auto* fs = std::get_if<FSimLike>(&g.kind)) {
    jg["kind"] = "fsim";
    params["alpha"] = fs->alpha;
    params["cphase"] = fs->cphase;
  } else if (const auto* h = std::get_if<HaarTwoQubit>(&g.kind)) {
    jg["kind"] = "haar";
    json re = json::array(), im = json::array();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        re.push_back(h->unitary(r, c).real());
        im.push_back(h->unitary(r, c).imag());
      }
    params["u_re"] = re;
    params["u_im"] = im;
  } else if (std::holds_alternative<PauliX>(g.kind)) {
    jg["kind"] = "x";
  } else {
    jg["kind"] = "z";
  }
  jg["params"] = params;
  json sites = json::array();
  for (const auto& s : g.sites) sites.push_back(site_to_json(s));
  jg["sites"] = sites;
  jg["layer"] = g.layer;
  return jg;
}

Gate gate_from_json(const json& jg) {
  Gate g;
  const std::string kind = jg.at("kind").get<std::string>();
  const json& params = jg.at("params");
  if (kind == "rot") {
    g.kind = SingleQubitRot{params.at("theta").get<double>(), params.at("phi").get<double>()};
  } else if (kind == "fsim") {
    g.kind = FSimLike{params.at("alpha").get<double>(), params.at("cphase").get<double>()};
  } else if (kind == "haar") {
    Matrix4c u;
    const auto& re = params.at("u_re");
    const auto& im = params.at("u_im");
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        u(r, c) = Complex(re.at(static_cast<std::size_t>(r * 4 + c)).get<double>(),
                          im.at(static_cast<std::size_t>(r * 4 + c)).get<double>());
    g.kind = HaarTwoQubit{u};
  } else if (kind == "x") {
    g.kind = PauliX{};
  } else if (kind == "z") {
    g.kind = PauliZ{};
  } else {
    throw std::runtime_error("unknown gate kind in circuit file: " + kind);
  }
  for (const auto& js : jg.at("sites")) g.sites.push_back(site_from_json(js));
  g.layer = jg.at("layer").get<int>();
  return g;
}

}  // namespace

json circuit_to_json(const OtocCircuit& c) {
  json j;
  j["format"] = "otoc-circuit-v1";
  j["geometry"] = geometry_to_json(c.geometry);
  json aq = json::array();
  for (const auto& s : c.active_qubits) aq.push_back(site_to_json(s));
  j["active_qubits"] = aq;
  json gates = json::array();
  for (const auto& g : c.gates) gates.push_back(gate_to_json(g));
  j["gates"] = gates;
  j["m_site"] = site_to_json(c.m_site);
  j["b_site"] = site_to_json(c.b_site);
  j["order"] = c.order == OtocOrder::Otoc1 ? "otoc1" : "otoc2";
  j["depth_T"] = c.depth_T;
  j["seed"] = c.seed;
  j["instance"] = c.instance;
  return j;
}

OtocCircuit circuit_from_json(const json& j) {
  if (j.at("format").get<std::string>() != "otoc-circuit-v1")
    throw std::runtime_error("unsupported circuit file format");
  OtocCircuit c;
  c.geometry = geometry_from_json(j.at("geometry"));
  for (const auto& js : j.at("active_qubits")) c.active_qubits.push_back(site_from_json(js));
  for (const auto& jg : j.at("gates")) c.gates.push_back(gate_from_json(jg));
  c.m_site = site_from_json(j.at("m_site"));
  c.b_site = site_from_json(j.at("b_site"));
  c.order = j.at("order").get<std::string>() == "otoc1" ? OtocOrder::Otoc1 : OtocOrder::Otoc2;
  c.depth_T = j.at("depth_T").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.instance = j.at("instance").get<int>();
  return c;
}

std::string circuit_to_string(const OtocCircuit& c) { return circuit_to_json(c).dump(1) + "\n"; }

void write_circuit(const OtocCircuit& c, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_circuit: cannot open " + path);
  f << circuit_to_string(c);
}

OtocCircuit read_circuit(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_circuit: cannot open " + path);
  json j;
  f >> j;
  return circuit_from_json(j);
}

json ensemble_spec_to_json(const EnsembleSpec& spec) {
  json j;
  j["geometry"] = geometry_to_json(spec.geometry);
  j["depth_T"] = spec.depth_T;
  j["m_site"] = site_to_json(spec.m_site);
  j["b_site"] = site_to_json(spec.b_site);
  j["family"] = spec.family == GateFamily::Haar ? "haar" : "iswap";
  j["alpha"] = spec.alpha;
  j["cphase"] = spec.cphase;
  j["haar_single_qubit_layers"] = spec.haar_single_qubit_layers;
  j["num_instances"] = spec.num_instances;
  j["master_seed"] = spec.master_seed;
  j["order"] = spec.order == OtocOrder::Otoc1 ? "otoc1" : "otoc2";
  return j;
}

EnsembleSpec ensemble_spec_from_json(const json& j) {
  EnsembleSpec spec;
  spec.geometry = geometry_from_json(j.at("geometry"));
  spec.depth_T = j.at("depth_T").get<int>();
  spec.m_site = site_from_json(j.at("m_site"));
  spec.b_site = site_from_json(j.at("b_site"));
  spec.family = j.at("family").get<std::string>() == "haar" ? GateFamily::Haar
                                                            : GateFamily::ISwapLike;
  spec.alpha = j.at("alpha").get<double>();
  spec.cphase = j.at("cphase").get<double>();
  spec.haar_single_qubit_layers = j.at("haar_single_qubit_layers").get<bool>();
  spec.num_instances = j.at("num_instances").get<int>();
  spec.master_seed = j.at("master_seed").get<std::uint64_t>();
  spec.order = j.at("order").get<std::string>() == "otoc1" ? OtocOrder::Otoc1 : OtocOrder::Otoc2;
  return spec;
}

}  // namespace otoc
