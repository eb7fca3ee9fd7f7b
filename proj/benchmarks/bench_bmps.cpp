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

#include <benchmark/benchmark.h>

#include "otoc/extraction.hpp"
#include "otoc/peps.hpp"
#include "otoc/rng.hpp"

using namespace otoc;

namespace {

Peps random_peps(DetRng& rng, int w, int h, std::int64_t bond) {
  std::vector<Site> sites;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) sites.push_back({x, y});
  const QubitGraph g = QubitGraph::induced(sites);
  Peps p;
  p.graph = g;
  for (const auto& v : g.vertices) {
    std::vector<IndexLabel> ix = {{phys_index_name(v), 2}};
    for (const auto& n : g.adjacency.at(v)) ix.push_back({bond_index_name(make_bond(v, n)), bond});
    DenseTensor t(ix);
    for (auto& z : t.mutable_data()) z = rng.complex_gaussian() * 0.3;
    p.tensors.emplace(v, std::move(t));
  }
  return p;
}

// Boundary-MPS extraction across the (D, chi) plane; the flop counter tracks
// the N (D^4 chi^3 + D^6 chi^2) cost model.
void BM_BmpsExpectation(benchmark::State& state) {
  const auto d = state.range(0);
  const auto chi = state.range(1);
  DetRng rng(11);
  const Peps p = random_peps(rng, 5, 5, d);
  BmpsConfig cfg;
  cfg.chi = chi;
  std::uint64_t flops = 0;
  for (auto _ : state) {
    const BmpsResult r = contract_bmps(p, {2, 2}, cfg);
    benchmark::DoNotOptimize(r.expectation);
    flops = r.flops;
  }
  state.counters["flops"] = static_cast<double>(flops);
}
BENCHMARK(BM_BmpsExpectation)
    ->Args({2, 4})
    ->Args({2, 8})
    ->Args({3, 9})
    ->Args({3, 18})
    ->Args({4, 16})
    ->Args({4, 32});

void BM_BpLayer(benchmark::State& state) {
  const auto d = state.range(0);
  DetRng rng(13);
  Peps p = random_peps(rng, 4, 4, d);
  MessageSet msgs = MessageSet::identity_init(p);
  BpConfig cfg;
  cfg.max_D = d;
  bp_converge(p, msgs, cfg);
  for (auto _ : state) {
    for (const auto& e : p.graph.edges) {
      Gate g{FSimLike{1.0, 0.35}, {e.first, e.second}, 0};
      apply_gate_bp(p, msgs, g, cfg);
    }
    BpConvergeResult r = bp_converge(p, msgs, cfg);
    benchmark::DoNotOptimize(r.residual);
  }
}
BENCHMARK(BM_BpLayer)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
