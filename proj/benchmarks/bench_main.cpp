// Copyright 2026 The chimpe Authors
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

#include "chimpe/circuit.hpp"
#include "chimpe/measures.hpp"
#include "chimpe/mps.hpp"
#include "chimpe/random_states.hpp"

namespace {

using namespace chimpe;

void BM_ApplyCircuit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = random_circuit(n, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(prepare(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.gate_count()));
}
BENCHMARK(BM_ApplyCircuit)->Arg(8)->Arg(12)->Arg(16);

void BM_FromDense(benchmark::State& state) {
  const auto psi = generalized_rps({static_cast<std::size_t>(state.range(0)), 5.0, 2.0, 3});
  for (auto _ : state) benchmark::DoNotOptimize(from_dense(psi));
}
BENCHMARK(BM_FromDense)->Arg(8)->Arg(12)->Arg(14);

void BM_ChiMpe(benchmark::State& state) {
  const auto psi = generalized_rps({12, 5.0, 4.0, 5});
  MpeOptions o;
  o.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(chi_mpe(psi, static_cast<std::size_t>(state.range(0)), o));
}
BENCHMARK(BM_ChiMpe)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FitCircuitSweep(benchmark::State& state) {
  const auto psi = generalized_rps({12, 5.0, 4.0, 7});
  FitOptions o;
  o.restarts = 1;
  o.max_sweeps = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fit_circuit(psi, static_cast<std::size_t>(state.range(0)), o));
}
BENCHMARK(BM_FitCircuitSweep)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
