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

#include <random>

#include <benchmark/benchmark.h>

#include "maxlin/codes.hpp"
#include "maxlin/decoders.hpp"
#include "maxlin/gf.hpp"

namespace maxlin {
namespace {

gf::FieldMatrix random_matrix(std::uint64_t q, std::size_t rows, std::size_t cols,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<gf::Residue> digit(0, static_cast<gf::Residue>(q - 1));
  gf::FieldMatrix m(rows, cols, gf::FieldOrder(q));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, digit(rng));
  }
  return m;
}

void BM_RowEchelon(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  gf::FieldMatrix m = random_matrix(q, n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gf::reduce_row_echelon(m));
  state.SetComplexityN(state.range(1));
}
BENCHMARK(BM_RowEchelon)
    ->ArgsProduct({{2, 3, 65521}, {16, 64, 256}})
    ->Complexity(benchmark::oNCubed);

void BM_MinDistance(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  CodeView view = CodeView::from_matrix(random_matrix(2, m, m / 2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(min_distance(view));
}
BENCHMARK(BM_MinDistance)->Arg(12)->Arg(20)->Arg(28);

void BM_LookupBuild(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  CodeView view = CodeView::from_matrix(random_matrix(3, m, m / 2, 3));
  for (auto _ : state) {
    LookupDecoder lookup(view);
    benchmark::DoNotOptimize(lookup.size());
  }
}
BENCHMARK(BM_LookupBuild)->Arg(8)->Arg(12)->Arg(16);

void BM_PrangeDecode(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  CodeView view = CodeView::from_matrix(random_matrix(2, m, m / 2, 4));
  IsdOptions opt;
  opt.seed = 5;
  opt.max_weight = 2;
  PrangeDecoder dec(view, opt);
  gf::Vector e(m, 0);
  e[1] = 1;
  e[m - 2] = 1;
  gf::Vector s = view.syndrome(e);
  for (auto _ : state) benchmark::DoNotOptimize(dec.decode(s));
}
BENCHMARK(BM_PrangeDecode)->Arg(32)->Arg(128);

}  // namespace
}  // namespace maxlin
