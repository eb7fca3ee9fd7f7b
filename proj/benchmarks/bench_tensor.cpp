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

#include "otoc/rng.hpp"
#include "otoc/tensor.hpp"

using namespace otoc;

namespace {

DenseTensor random_tensor(DetRng& rng, std::vector<IndexLabel> ix) {
  DenseTensor t(std::move(ix));
  for (auto& v : t.mutable_data()) v = rng.complex_gaussian();
  return t;
}

void BM_Contract(benchmark::State& state) {
  const auto d = state.range(0);
  DetRng rng(1);
  const DenseTensor a = random_tensor(rng, {{"i", d}, {"k", d}, {"l", d}});
  const DenseTensor b = random_tensor(rng, {{"k", d}, {"l", d}, {"j", d}});
  for (auto _ : state) {
    DenseTensor c = contract(a, b, {{"k", "k"}, {"l", "l"}});
    benchmark::DoNotOptimize(c.data().data());
  }
  state.SetItemsProcessed(state.iterations() * d * d * d * d);
}
BENCHMARK(BM_Contract)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SvdTruncate(benchmark::State& state) {
  const auto d = state.range(0);
  DetRng rng(2);
  const DenseTensor t = random_tensor(rng, {{"a", d}, {"p", 2}, {"b", d}, {"q", 2}});
  for (auto _ : state) {
    SvdResult r = svd_truncate(t, {"a", "p"}, d, 1e-14);
    benchmark::DoNotOptimize(r.singular_values.data());
  }
}
BENCHMARK(BM_SvdTruncate)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_QrSplit(benchmark::State& state) {
  const auto d = state.range(0);
  DetRng rng(3);
  const DenseTensor t = random_tensor(rng, {{"a", d}, {"b", d}, {"p", 2}, {"e", d}});
  for (auto _ : state) {
    auto [q, r] = qr_split(t, {"a", "b"});
    benchmark::DoNotOptimize(r.data().data());
  }
}
BENCHMARK(BM_QrSplit)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
