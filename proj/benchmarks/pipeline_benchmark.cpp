// Copyright 2026 The maxlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "maxlin/dqi.hpp"
#include "maxlin/fixtures.hpp"
#include "maxlin/solvers.hpp"
#include "maxlin/transform.hpp"

namespace maxlin {
namespace {

std::vector<Edge> cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return edges;
}

void BM_KnapsackPipeline(benchmark::State& state) {
  ConstraintModel model = knapsack_model({5, 4, 3, 2}, {4, 3, 2, 1}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(full_pipeline(model));
}
BENCHMARK(BM_KnapsackPipeline)->Unit(benchmark::kMillisecond);

void BM_VertexCoverPipeline(benchmark::State& state) {
  ConstraintModel model = vertex_cover_model(static_cast<int>(state.range(0)),
                                             cycle(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(full_pipeline(model));
}
BENCHMARK(BM_VertexCoverPipeline)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Anneal(benchmark::State& state) {
  LinsatInstance inst = maxcut_instance(static_cast<int>(state.range(0)),
                                        cycle(static_cast<int>(state.range(0))));
  AnnealSchedule s;
  for (auto _ : state) benchmark::DoNotOptimize(simulated_annealing(inst, s, 1));
}
BENCHMARK(BM_Anneal)->Arg(16)->Arg(64);

void BM_PrangeSolve(benchmark::State& state) {
  LinsatInstance inst = maxcut_instance(32, cycle(32));
  PrangeOptions opt;
  opt.restarts = 64;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prange_solve(inst, 1, opt));
}
BENCHMARK(BM_PrangeSolve)->Arg(1)->Arg(4)->UseRealTime();

void BM_OptimalPolynomial(benchmark::State& state) {
  LinsatInstance inst = maxcut_instance(12, cycle(12));
  ObjectiveSpectrum spectrum = objective_spectrum(inst);
  const auto l = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_polynomial(spectrum, l));
}
BENCHMARK(BM_OptimalPolynomial)->Arg(2)->Arg(5);

void BM_Estimate(benchmark::State& state) {
  LinsatInstance inst = colouring_instance(6, cycle(6));
  for (auto _ : state) benchmark::DoNotOptimize(estimate(inst));
}
BENCHMARK(BM_Estimate)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace maxlin
