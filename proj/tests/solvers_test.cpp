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

#include "maxlin/solvers.hpp"

#include <gtest/gtest.h>

#include "maxlin/error.hpp"
#include "maxlin/fixtures.hpp"
#include "maxlin/io.hpp"
#include "support.hpp"

namespace maxlin {
namespace {

using testing::Rng;
using testing::uniform_int;

TEST(BruteForceTest, MatchesOracleAndIsLexicographic) {
  Rng rng(81);
  for (int t = 0; t < 50; ++t) {
    std::uint64_t q = t % 2 == 0 ? 2 : 3;
    auto n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    LinsatInstance inst = testing::random_instance(
        rng, q, n, static_cast<std::size_t>(uniform_int(rng, 1, 10)), 3);
    SolveResult r = brute_force(inst);
    EXPECT_EQ(r.weight, testing::brute_optimum(inst));
    EXPECT_EQ(testing::row_sum(inst, r.assignment), r.weight);
    for (std::uint64_t i = 0; i < testing::ipow(q, n); ++i) {
      gf::Vector x = testing::digits(i, q, n);
      if (testing::row_sum(inst, x) == r.weight) {
        EXPECT_EQ(x, r.assignment);
        break;
      }
    }
  }
  EXPECT_EQ(brute_force(and_gadget_instance()).weight, 3);
  EXPECT_THROW(brute_force(testing::random_instance(rng, 3, 8, 4), 100), GuardExceeded);
}

TEST(HeuristicTest, NeverBeatBruteForceAndReverify) {
  Rng rng(82);
  for (int t = 0; t < 30; ++t) {
    std::uint64_t q = t % 2 == 0 ? 2 : 5;
    auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
    LinsatInstance inst = testing::random_instance(
        rng, q, n, static_cast<std::size_t>(uniform_int(rng, 2, 12)), 3);
    std::int64_t best = brute_force(inst).weight;
    AnnealSchedule schedule;
    SolveResult a = simulated_annealing(inst, schedule, static_cast<std::uint64_t>(t));
    SolveResult p = prange_solve(inst, static_cast<std::uint64_t>(t), PrangeOptions{8, 2});
    for (const SolveResult* r : {&a, &p}) {
      EXPECT_LE(r->weight, best);
      EXPECT_EQ(testing::row_sum(inst, r->assignment), r->weight);
      EXPECT_EQ(r->seed, static_cast<std::uint64_t>(t));
    }
  }
}

TEST(AnnealTest, FindsOptimumOnSmallInstances) {
  Rng rng(83);
  int hits = 0;
  for (int t = 0; t < 20; ++t) {
    LinsatInstance inst = testing::random_instance(rng, 3, 5, 12, 2);
    hits += simulated_annealing(inst, AnnealSchedule{}, 1).weight == brute_force(inst).weight;
  }
  EXPECT_GE(hits, 18);
}

TEST(PrangeTest, SatisfiesAnIndependentSetExactly) {
  Rng rng(84);
  for (int t = 0; t < 30; ++t) {
    LinsatInstance inst = testing::random_equation_instance(rng, 3, 5, 15);
    SolveResult r = prange_solve(inst, static_cast<std::uint64_t>(t));
    EXPECT_GE(r.weight, static_cast<std::int64_t>(gf::rank(inst.matrix())));
  }
}

TEST(DeterminismTest, SameSeedSameBytes) {
  Rng rng(85);
  LinsatInstance inst = testing::random_instance(rng, 5, 10, 25, 4);
  auto dump = [](const SolveResult& r) { return solve_result_to_json(r).dump(); };
  AnnealSchedule s;
  s.steps = 5000;
  EXPECT_EQ(dump(simulated_annealing(inst, s, 3)), dump(simulated_annealing(inst, s, 3)));
  std::string one = dump(prange_solve(inst, 3, PrangeOptions{40, 1}));
  for (unsigned threads : {2u, 3u, 8u}) {
    EXPECT_EQ(one, dump(prange_solve(inst, 3, PrangeOptions{40, threads})));
  }
}

TEST(SolverKindTest, RoundTrip) {
  for (auto k : {SolverKind::kBrute, SolverKind::kAnneal, SolverKind::kPrange}) {
    EXPECT_EQ(parse_solver_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_solver_kind("cp-sat"), InvalidArgument);
}

}  // namespace
}  // namespace maxlin
