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

// Classical Max-LINSAT baselines.

#ifndef MAXLIN_SOLVERS_HPP_
#define MAXLIN_SOLVERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "maxlin/gf.hpp"
#include "maxlin/linsat.hpp"

namespace maxlin {

inline constexpr std::uint64_t kDefaultBruteForceLimit = std::uint64_t{1}
                                                         << 24;

struct SolveResult {
  gf::Vector assignment;
  std::int64_t weight = 0;  // re-evaluated before returning
  std::string solver;
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0;
  std::string diagnostic;
};

// Global optimum, lexicographically smallest among optima. Throws
// GuardExceeded when q^n > limit.
SolveResult brute_force(const LinsatInstance& inst,
                        std::uint64_t limit = kDefaultBruteForceLimit);

struct AnnealSchedule {
  // Defaults: total weight, and 200 n q steps.
  std::optional<double> initial_temperature;
  double cooling = 0.97;  // applied once every n q steps
  std::optional<std::uint64_t> steps;
};

// Single-variable moves to a uniformly random other value, Metropolis
// acceptance, geometric cooling. Returns the best assignment seen.
SolveResult simulated_annealing(const LinsatInstance& inst,
                                const AnnealSchedule& schedule,
                                std::uint64_t seed);

struct PrangeOptions {
  std::size_t restarts = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Each restart shuffles the rows, keeps the first rank(B) independent ones,
// picks a uniformly random member of each kept right-hand side as the
// target, and solves exactly with free variables set to zero. Restart r uses
// a seed derived from (seed, r); the best restart wins, ties going to the
// lexicographically smallest assignment.
SolveResult prange_solve(const LinsatInstance& inst, std::uint64_t seed,
                         const PrangeOptions& options = {});

enum class SolverKind { kBrute, kAnneal, kPrange };
std::string to_string(SolverKind k);
SolverKind parse_solver_kind(std::string_view name);

}  // namespace maxlin

#endif  // MAXLIN_SOLVERS_HPP_
