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

#ifndef OTOC_TESTS_ACCEPTANCE_COMMON_HPP
#define OTOC_TESTS_ACCEPTANCE_COMMON_HPP

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "otoc/circuit.hpp"
#include "otoc/statevector.hpp"

namespace otoc::accept {

struct Criterion {
  int number = 0;
  bool pass = false;
  std::string detail;
};

inline int finish(const std::vector<Criterion>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    std::printf("[%s] criterion %d: %s\n", c.pass ? "PASS" : "FAIL", c.number,
                c.detail.c_str());
    all &= c.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}

inline std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

/// 1D ensemble at nominal v_mb/c = 3/5: line wide enough that the cones stay
/// interior, measurement at the center, butterfly at round(0.6 T).
inline EnsembleSpec line_ensemble(int depth, GateFamily family, std::uint64_t seed,
                                  int instances = 50) {
  EnsembleSpec spec;
  const int width = 4 * depth + 8;
  spec.geometry = line_geometry(width);
  spec.depth_T = depth;
  spec.m_site = {width / 2, 0};
  spec.b_site = {width / 2 + static_cast<int>(std::lround(0.6 * depth)), 0};
  spec.family = family;
  spec.num_instances = instances;
  spec.master_seed = seed;
  return spec;
}

/// Deep small-grid 2D ensembles in the strongly scrambled regime (ensemble
/// mean near zero, sigma ~ 0.2). The butterfly location runs through the
/// exact-probe selection, which lands on the measurement site for these
/// sizes.
inline EnsembleSpec grid_ensemble_for_n(int n, double alpha, int instances = 50) {
  EnsembleSpec spec;
  spec.alpha = alpha;
  spec.num_instances = instances;
  switch (n) {
    case 8:
      spec.geometry = grid_geometry(4, 2);
      spec.depth_T = 10;
      spec.m_site = {1, 0};
      spec.master_seed = 20260810;
      break;
    case 10:
      spec.geometry = grid_geometry(5, 2);
      spec.depth_T = 12;
      spec.m_site = {1, 0};
      spec.master_seed = 20260811;
      break;
    case 12:
      spec.geometry = grid_geometry(4, 3);
      spec.depth_T = 10;
      spec.m_site = {1, 1};
      spec.master_seed = 20260812;
      break;
    default:
      throw std::invalid_argument("no 2d acceptance ensemble for N=" + std::to_string(n));
  }
  spec.b_site = spec.m_site;
  const BSelectionResult sel = select_b_location(spec, 0.3, 50, 12);
  spec.b_site = sel.chosen;
  return spec;
}

inline std::vector<OtocCircuit> pruned_instances(const EnsembleSpec& spec) {
  std::vector<OtocCircuit> out;
  out.reserve(static_cast<std::size_t>(spec.num_instances));
  for (int i = 0; i < spec.num_instances; ++i)
    out.push_back(prune_geometric_lightcones(build_instance(spec, i)));
  return out;
}

}  // namespace otoc::accept

#endif
