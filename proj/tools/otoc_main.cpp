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

// Experiment harness.
//
//   otoc gen     build an OTOC ensemble: brickwall evolutions, butterfly and
//                measurement placement, lightcone pruning, one circuit file
//                per instance plus a manifest.
//   otoc run     simulate circuit files with one of the methods and append
//                rows to a results CSV.
//   otoc report  aggregate results CSVs into SNR heatmaps, required-bond
//                tables, and fits.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "otoc/circuit.hpp"
#include "otoc/circuit_io.hpp"
#include "otoc/extraction.hpp"
#include "otoc/metrics.hpp"
#include "otoc/mps.hpp"
#include "otoc/parallel.hpp"
#include "otoc/peps.hpp"
#include "otoc/results_io.hpp"
#include "otoc/statevector.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace otoc;

namespace {

#ifndef OTOC_GIT_REV
#define OTOC_GIT_REV "unknown"
#endif

std::string code_version() { return OTOC_GIT_REV; }

Site parse_site(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("site must be x,y");
  return Site{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string instance_file(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "instance_%04d.json", index);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << text;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string out;
  bool two_d = false;
  int width = 0, height = 0;
  int depth = 1;
  int instances = 50;
  std::uint64_t seed = 0;
  std::string m_site, b_site;
  double vmb = -1.0;
  bool select_b = false;
  double sigma_threshold = 0.3;
  int probe_instances = 50;
  std::string family = "iswap";
  double alpha = 1.0;
  double cphase = 0.35;
  bool haar_singles = false;
  std::string order = "otoc1";
};

int run_gen(const GenArgs& a) {
  EnsembleSpec spec;
  if (a.two_d) {
    const int w = a.width > 0 ? a.width : 10;
    const int h = a.height > 0 ? a.height : w;
    spec.geometry = grid_geometry(w, h);
    spec.m_site = a.m_site.empty() ? Site{std::min(4, w - 1), std::min(4, h - 1)}
                                   : parse_site(a.m_site);
  } else {
    const int w = a.width > 0 ? a.width : 4 * a.depth + 8;
    spec.geometry = line_geometry(w);
    spec.m_site = a.m_site.empty() ? Site{w / 2, 0} : parse_site(a.m_site);
  }
  spec.depth_T = a.depth;
  spec.family = a.family == "haar" ? GateFamily::Haar : GateFamily::ISwapLike;
  spec.alpha = a.alpha;
  spec.cphase = a.cphase;
  spec.haar_single_qubit_layers = a.haar_singles;
  spec.num_instances = a.instances;
  spec.master_seed = a.seed;
  spec.order = a.order == "otoc2" ? OtocOrder::Otoc2 : OtocOrder::Otoc1;

  json diagnostics = json::object();
  if (!a.b_site.empty()) {
    spec.b_site = parse_site(a.b_site);
  } else if (a.vmb >= 0.0) {
    const double c = spec.geometry.is_line() ? 1.0 : kConeSpeedHorizontal;
    const int off = static_cast<int>(std::lround(a.vmb * c * a.depth));
    spec.b_site = Site{spec.m_site.x + off, spec.m_site.y};
    diagnostics["vmb_requested"] = a.vmb;
  } else if (a.select_b) {
    spec.b_site = spec.m_site;
    const BSelectionResult sel =
        select_b_location(spec, a.sigma_threshold, a.probe_instances);
    spec.b_site = sel.chosen;
    json sigma = json::array();
    for (const auto& [site, s] : sel.sigma_map)
      sigma.push_back(json{{"site", {site.x, site.y}},
                           {"sigma", s},
                           {"hardness", sel.hardness.at(site)},
                           {"pruned_n", sel.pruned_n.at(site)}});
    diagnostics["sigma_map"] = sigma;
    diagnostics["sigma_max"] = sel.sigma_max;
    diagnostics["sigma_threshold"] = a.sigma_threshold;
    json survivors = json::array();
    for (const auto& s : sel.survivors) survivors.push_back({s.x, s.y});
    diagnostics["survivors"] = survivors;
  } else {
    throw CLI::ValidationError("one of --b-site, --vmb, --select-b is required");
  }
  spec.validate();

  const fs::path out_dir(a.out);
  fs::create_directories(out_dir / "circuits");

  const std::string spec_json = ensemble_spec_to_json(spec).dump();
  const std::string hash = hex64(fnv1a64(spec_json));

  int pruned_n = 0, max_gates = 0;
  json files = json::array();
  for (int i = 0; i < spec.num_instances; ++i) {
    const OtocCircuit pruned = prune_geometric_lightcones(build_instance(spec, i));
    const std::string name = instance_file(i);
    write_circuit(pruned, (out_dir / "circuits" / name).string());
    files.push_back("circuits/" + name);
    pruned_n = pruned.num_qubits();
    max_gates = std::max(max_gates, max_gates_per_bond(pruned).second);
  }
  diagnostics["n_after_pruning"] = pruned_n;
  diagnostics["max_gates_per_bond"] = max_gates;
  diagnostics["chosen_b"] = {spec.b_site.x, spec.b_site.y};

  json manifest;
  manifest["format"] = "otoc-ensemble-v1";
  manifest["spec"] = ensemble_spec_to_json(spec);
  manifest["ensemble_hash"] = hash;
  manifest["code_version"] = code_version();
  manifest["diagnostics"] = diagnostics;
  manifest["instances"] = files;
  write_text(out_dir / "ensemble.json", manifest.dump(1) + "\n");

  std::cout << "ensemble " << hash << ": N=" << pruned_n << " max gates/bond=" << max_gates
            << " instances=" << spec.num_instances << " -> " << out_dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
  std::string ensemble_dir;
  std::string method = "exact";
  std::string out;
  std::string d_list = "4";
  std::string chi_list = "inf";
  double cutoff = 1e-14;
  int resync_every = 1;
  double bp_tol = 1e-10;
  int bp_max_iters = 100;
  bool with_fidelity = false;
  int workers = 0;
  bool timing = false;
};

struct LoadedEnsemble {
  EnsembleSpec spec;
  std::string hash;
  std::vector<OtocCircuit> circuits;
};

LoadedEnsemble load_ensemble(const std::string& dir) {
  std::ifstream f(fs::path(dir) / "ensemble.json");
  if (!f) throw std::runtime_error("cannot open ensemble manifest in " + dir);
  json manifest;
  f >> manifest;
  LoadedEnsemble e;
  e.spec = ensemble_spec_from_json(manifest.at("spec"));
  e.hash = manifest.at("ensemble_hash").get<std::string>();
  for (const auto& rel : manifest.at("instances"))
    e.circuits.push_back(read_circuit((fs::path(dir) / rel.get<std::string>()).string()));
  return e;
}

double extract_z(const Peps& p, const Site& m, const std::string& chi, double cutoff,
                 double* truncation) {
  if (chi == "inf") {
    const ContractExactResult r = contract_exact(p, m);
    if (truncation) *truncation = 0.0;
    return r.expectation;
  }
  BmpsConfig cfg;
  cfg.chi = std::stoll(chi);
  cfg.truncation_cutoff = cutoff;
  const BmpsResult r = contract_bmps(p, m, cfg);
  if (truncation) *truncation = r.accumulated_truncation;
  return r.expectation;
}

int run_run(const RunArgs& a) {
  const LoadedEnsemble ens = load_ensemble(a.ensemble_dir);
  const auto d_values = split_list(a.d_list);
  const auto chi_values = split_list(a.chi_list);
  const int n_inst = static_cast<int>(ens.circuits.size());
  const int workers = a.workers > 0 ? a.workers : default_worker_count();

  std::vector<std::vector<ResultRow>> per_instance(static_cast<std::size_t>(n_inst));

  auto simulate_instance = [&](int idx) {
    const OtocCircuit& c = ens.circuits[static_cast<std::size_t>(idx)];
    std::vector<ResultRow>& rows = per_instance[static_cast<std::size_t>(idx)];
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
      if (!a.timing) return 0.0;
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    std::optional<double> exact_value;
    if (c.num_qubits() <= kStateVectorQubitGuard) exact_value = otoc_exact(c);
    std::optional<StateVector> exact_state;
    if (a.with_fidelity && c.num_qubits() <= kPepsToStateGuard)
      exact_state = evolve_exact(c);

    ResultRow base;
    base.ensemble_hash = ens.hash;
    base.instance = c.instance;
    base.method = a.method;
    base.alpha = ens.spec.alpha;

    if (a.method == "exact") {
      if (!exact_value.has_value())
        throw std::runtime_error("exact method: instance exceeds the state-vector guard");
      ResultRow r = base;
      r.exact = exact_value;
      r.approx = *exact_value;
      r.runtime_s = elapsed();
      rows.push_back(std::move(r));
      return;
    }

    if (a.method == "mps") {
      for (const auto& d : d_values) {
        const std::int64_t bond = std::stoll(d);
        const MpsEvolveResult evo = evolve_mps(c, bond, a.cutoff);
        const auto chain = static_cast<int>(
            std::lower_bound(evo.qubits.begin(), evo.qubits.end(), c.m_site) -
            evo.qubits.begin());
        ResultRow r = base;
        r.d = d;
        r.exact = exact_value;
        r.approx = mps_expectation_z(evo.mps, chain);
        r.discarded_weight = evo.total_discarded_weight;
        if (exact_state.has_value())
          r.fidelity = fidelity(mps_to_statevector(evo.mps, evo.qubits), *exact_state);
        r.runtime_s = elapsed();
        rows.push_back(std::move(r));
      }
      return;
    }

    if (a.method == "peps-bp" || a.method == "peps-untruncated-final") {
      BpConfig cfg;
      cfg.sv_cutoff = a.cutoff;
      cfg.bp_tolerance = a.bp_tol;
      cfg.bp_max_iters = a.bp_max_iters;
      std::optional<PepsEvolveResult> untruncated;
      if (a.method == "peps-untruncated-final")
        untruncated = evolve_peps_untruncated(c, a.cutoff);
      for (const auto& d : d_values) {
        cfg.max_D = std::stoll(d);
        Peps state;
        double discarded = 0.0;
        int bp_iters = 0;
        if (a.method == "peps-bp") {
          const PepsEvolveResult evo = evolve_peps_bp(c, cfg, a.resync_every);
          state = evo.peps;
          discarded = evo.diagnostics.total_discarded;
          for (int it : evo.diagnostics.bp_iterations) bp_iters += it;
        } else {
          state = final_truncate_bp(untruncated->peps, cfg);
          discarded = untruncated->diagnostics.total_discarded;
        }
        std::optional<double> fid;
        if (exact_state.has_value())
          fid = fidelity(peps_to_statevector(state), *exact_state);
        for (const auto& chi : chi_values) {
          ResultRow r = base;
          r.d = d;
          r.chi = chi;
          r.exact = exact_value;
          double truncation = 0.0;
          r.approx = extract_z(state, c.m_site, chi, 0.0, &truncation);
          r.discarded_weight = discarded + truncation;
          r.fidelity = fid;
          r.bp_iters = bp_iters;
          r.runtime_s = elapsed();
          rows.push_back(std::move(r));
        }
      }
      return;
    }
    throw std::runtime_error("unknown method " + a.method);
  };

  parallel_for_index(n_inst, workers, simulate_instance);

  std::vector<ResultRow> rows;
  for (auto& chunk : per_instance)
    for (auto& r : chunk) rows.push_back(std::move(r));
  write_results_csv(a.out, rows);

  json manifest;
  manifest["format"] = "otoc-run-v1";
  manifest["ensemble_hash"] = ens.hash;
  manifest["method"] = a.method;
  manifest["d"] = a.d_list;
  manifest["chi"] = a.chi_list;
  manifest["cutoff"] = a.cutoff;
  manifest["resync_every"] = a.resync_every;
  manifest["bp_tolerance"] = a.bp_tol;
  manifest["bp_max_iters"] = a.bp_max_iters;
  manifest["with_fidelity"] = a.with_fidelity;
  manifest["code_version"] = code_version();
  write_text(a.out + ".manifest.json", manifest.dump(1) + "\n");

  std::cout << "wrote " << rows.size() << " rows to " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
  std::string results;
  std::string out;
  std::string targets = "5,10";
  std::string predict;  // e.g. "vmb=0.6,A=0.5,dim=1,N=12"
};

bool numeric_less(const std::string& a, const std::string& b) {
  if (a == b) return false;
  if (a == "inf") return false;
  if (b == "inf") return true;
  return std::stod(a) < std::stod(b);
}

int run_report(const ReportArgs& a) {
  std::vector<ResultRow> rows;
  for (const auto& file : split_list(a.results)) {
    const auto part = read_results_csv(file);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (rows.empty()) throw std::runtime_error("report: no rows selected");
  const fs::path out_dir(a.out);
  fs::create_directories(out_dir);

  // Group instances per (hash, method, D, chi); SNR needs the exact column.
  struct Series {
    std::vector<double> exact, approx;
  };
  std::map<std::tuple<std::string, std::string, std::string, std::string>, Series> groups;
  for (const auto& r : rows) {
    if (!r.exact.has_value()) continue;
    auto& s = groups[{r.ensemble_hash, r.method, r.d, r.chi}];
    s.exact.push_back(*r.exact);
    s.approx.push_back(r.approx);
  }
  if (groups.empty())
    throw std::runtime_error("report: no rows with exact reference values");

  std::map<std::tuple<std::string, std::string, std::string, std::string>, double> snr_table;
  std::set<std::string> d_labels, chi_labels;
  for (const auto& [key, s] : groups) {
    double value = 0.0;
    try {
      value = snr(s.exact, s.approx);
    } catch (const std::invalid_argument&) {
      value = std::nan("");
    }
    snr_table[key] = value;
    d_labels.insert(std::get<2>(key));
    chi_labels.insert(std::get<3>(key));
  }

  std::vector<std::string> ds(d_labels.begin(), d_labels.end());
  std::vector<std::string> chis(chi_labels.begin(), chi_labels.end());
  std::sort(ds.begin(), ds.end(), numeric_less);
  std::sort(chis.begin(), chis.end(), numeric_less);

  // Heatmap: one block per (ensemble, method); rows D, cols chi.
  std::string heatmap = "ensemble_hash,method,D";
  for (const auto& chi : chis) heatmap += ",chi=" + chi;
  heatmap += "\n";
  std::set<std::pair<std::string, std::string>> blocks;
  for (const auto& [key, v] : snr_table)
    blocks.insert({std::get<0>(key), std::get<1>(key)});
  for (const auto& [hash, method] : blocks) {
    for (const auto& d : ds) {
      bool any = false;
      std::string line = hash + "," + method + "," + d;
      for (const auto& chi : chis) {
        const auto it = snr_table.find({hash, method, d, chi});
        line += ",";
        if (it != snr_table.end() && !std::isnan(it->second)) {
          line += format_double(it->second);
          any = true;
        }
      }
      if (any) heatmap += line + "\n";
    }
  }
  write_text(out_dir / "snr_heatmap.csv", heatmap);

  // Required-bond table per (ensemble, method, chi) and target.
  std::optional<ScalingPrediction> prediction;
  int predict_n = 0;
  if (!a.predict.empty()) {
    ScalingPrediction p;
    p.dimension = 1;
    for (const auto& kv : split_list(a.predict)) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad --predict entry " + kv);
      const std::string k = kv.substr(0, eq);
      const std::string v = kv.substr(eq + 1);
      if (k == "vmb") p.v_mb_over_c = std::stod(v);
      else if (k == "A") p.prefactor_A = std::stod(v);
      else if (k == "dim") p.dimension = std::stoi(v);
      else if (k == "N") predict_n = std::stoi(v);
      else throw std::runtime_error("bad --predict key " + k);
    }
    p.bond_growth_base = p.dimension == 1 ? 2 : 4;
    prediction = p;
  }

  std::string required = "ensemble_hash,method,chi,target,required_D";
  if (prediction) required += ",predicted_D";
  required += "\n";
  for (const auto& [hash, method] : blocks) {
    for (const auto& chi : chis) {
      std::vector<SnrPoint> points;
      for (const auto& d : ds) {
        const auto it = snr_table.find({hash, method, d, chi});
        if (it == snr_table.end() || std::isnan(it->second) || d == "inf") continue;
        points.push_back({std::stod(d), it->second});
      }
      if (points.size() < 2) continue;
      for (const auto& target : split_list(a.targets)) {
        std::string line = hash + "," + method + "," + chi + "," + target + ",";
        try {
          line += format_double(required_bond_for_target(points, std::stod(target)));
        } catch (const std::exception&) {
          line += "unbracketed";
        }
        if (prediction)
          line += "," + format_double(predicted_bond_dim(*prediction, predict_n));
        required += line + "\n";
      }
    }
  }
  write_text(out_dir / "required_D.csv", required);

  // Exponential SNR-vs-D fits per (ensemble, method, chi).
  std::string fits = "ensemble_hash,method,chi,rate,prefactor,r_squared\n";
  for (const auto& [hash, method] : blocks) {
    for (const auto& chi : chis) {
      std::vector<double> xs, ys;
      for (const auto& d : ds) {
        const auto it = snr_table.find({hash, method, d, chi});
        if (it == snr_table.end() || std::isnan(it->second) || d == "inf") continue;
        if (it->second >= kSnrCap) continue;
        xs.push_back(std::stod(d));
        ys.push_back(it->second);
      }
      if (xs.size() < 3) continue;
      try {
        const FitResult f = fit_exponential(xs, ys);
        fits += hash + "," + method + "," + chi + "," + format_double(f.rate) + "," +
                format_double(f.prefactor) + "," + format_double(f.r_squared) + "\n";
      } catch (const std::exception&) {
      }
    }
  }
  write_text(out_dir / "fits.csv", fits);

  std::cout << "report written to " << out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor-network OTOC experiment harness"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "generate an OTOC ensemble");
  cgen->add_option("--out", gen.out, "output directory")->required();
  cgen->add_flag("--2d", gen.two_d, "square-grid geometry (default: line)");
  cgen->add_flag("--1d{false}", gen.two_d, "line geometry");
  cgen->add_option("--width", gen.width, "lattice extent in x");
  cgen->add_option("--height", gen.height, "lattice extent in y (2d)");
  cgen->add_option("--depth", gen.depth, "two-qubit layers in the evolution")->required();
  cgen->add_option("--instances", gen.instances, "ensemble size");
  cgen->add_option("--seed", gen.seed, "master seed");
  cgen->add_option("--m-site", gen.m_site, "measurement site x,y");
  cgen->add_option("--b-site", gen.b_site, "butterfly site x,y");
  cgen->add_option("--vmb", gen.vmb, "place B at speed ratio v_mb/c from M");
  cgen->add_flag("--select-b", gen.select_b, "probe candidate butterfly sites exactly");
  cgen->add_option("--sigma-threshold", gen.sigma_threshold, "signal threshold fraction");
  cgen->add_option("--probe-instances", gen.probe_instances, "instances per probe");
  cgen->add_option("--family", gen.family, "iswap | haar");
  cgen->add_option("--alpha", gen.alpha, "iSWAP(alpha) entangling strength");
  cgen->add_option("--cphase", gen.cphase, "conditional phase in radians");
  cgen->add_flag("--haar-singles", gen.haar_singles,
                 "interleave single-qubit layers with Haar gates");
  cgen->add_option("--order", gen.order, "otoc1 | otoc2");

  RunArgs run;
  CLI::App* crun = app.add_subcommand("run", "simulate an ensemble");
  crun->add_option("--ensemble", run.ensemble_dir, "ensemble directory")->required();
  crun->add_option("--method", run.method,
                   "exact | mps | peps-bp | peps-untruncated-final")->required();
  crun->add_option("--out", run.out, "results CSV path")->required();
  crun->add_option("--d", run.d_list, "bond dimensions, comma separated");
  crun->add_option("--chi", run.chi_list, "boundary bond dimensions or inf");
  crun->add_option("--cutoff", run.cutoff, "relative singular value cutoff");
  crun->add_option("--resync-every", run.resync_every, "layers between BP convergences");
  crun->add_option("--bp-tol", run.bp_tol, "BP convergence tolerance");
  crun->add_option("--bp-max-iters", run.bp_max_iters, "BP iteration cap");
  crun->add_flag("--with-fidelity", run.with_fidelity, "record state fidelities");
  crun->add_option("--workers", run.workers, "instance-level worker threads");
  crun->add_flag("--timing", run.timing,
                 "record wall-clock runtimes (off keeps reruns byte-identical)");

  ReportArgs report;
  CLI::App* crep = app.add_subcommand("report", "aggregate results");
  crep->add_option("--results", report.results, "results CSVs, comma separated")->required();
  crep->add_option("--out", report.out, "output directory")->required();
  crep->add_option("--targets", report.targets, "SNR targets, comma separated");
  crep->add_option("--predict", report.predict, "overlay, e.g. vmb=0.6,A=0.5,dim=1,N=12");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return run_gen(gen);
    if (crun->parsed()) return run_run(run);
    if (crep->parsed()) return run_report(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
