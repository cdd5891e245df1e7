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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "internal.hpp"
#include "maxlin/error.hpp"

namespace maxlin {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::int64_t row_weight(const LinsatConstraint& c, gf::Residue value) {
  auto it = c.rhs.find(value);
  return it == c.rhs.end() ? 0 : it->second;
}

void finish(const LinsatInstance& inst, SolveResult& r,
            Clock::time_point start) {
  r.weight = inst.evaluate(r.assignment);
  r.wall_seconds = seconds_since(start);
}

}  // namespace

SolveResult brute_force(const LinsatInstance& inst, std::uint64_t limit) {
  const auto start = Clock::now();
  SolveResult best;
  best.solver = "brute";
  bool first = true;
  for_each_assignment(inst.q(), inst.num_variables(), limit,
                      [&](std::span<const gf::Residue> x) {
                        std::int64_t w = inst.evaluate(x);
                        if (first || w > best.weight) {
                          best.weight = w;
                          best.assignment.assign(x.begin(), x.end());
                          first = false;
                        }
                      });
  finish(inst, best, start);
  return best;
}

SolveResult simulated_annealing(const LinsatInstance& inst,
                                const AnnealSchedule& schedule,
                                std::uint64_t seed) {
  const auto start = Clock::now();
  SolveResult out;
  out.solver = "anneal";
  out.seed = seed;
  const std::size_t n = inst.num_variables();
  const std::uint64_t q = inst.q();
  if (schedule.cooling <= 0 || schedule.cooling > 1) {
    throw InvalidArgument("cooling factor must lie in (0, 1]");
  }
  out.assignment.assign(n, 0);
  if (n == 0) {
    finish(inst, out, start);
    return out;
  }
  std::mt19937_64 rng(seed);
  for (gf::Residue& v : out.assignment) {
    v = static_cast<gf::Residue>(internal::uniform_below(rng, q));
  }
  if (q == 1) {
    finish(inst, out, start);
    return out;
  }

  std::vector<std::vector<std::size_t>> touching(n);
  const auto& rows = inst.constraints();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [id, b] : rows[i].expr) {
      touching[static_cast<std::size_t>(id)].push_back(i);
    }
  }
  std::vector<gf::Residue> row_value(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    row_value[i] = inst.row_value(i, out.assignment);
  }
  const gf::FieldOrder& f = inst.order();

  gf::Vector x = out.assignment;
  std::int64_t current = inst.evaluate(x);
  std::int64_t best = current;
  const std::uint64_t sweep = q * n;
  const std::uint64_t steps = schedule.steps.value_or(200 * sweep);
  double temperature = schedule.initial_temperature.value_or(
      static_cast<double>(std::max<std::int64_t>(inst.total_weight(), 1)));

  for (std::uint64_t step = 0; step < steps; ++step) {
    if (step > 0 && step % sweep == 0) temperature *= schedule.cooling;
    const auto var = static_cast<std::size_t>(internal::uniform_below(rng, n));
    const gf::Residue old = x[var];
    gf::Residue next =
        static_cast<gf::Residue>(internal::uniform_below(rng, q - 1));
    if (next >= old) ++next;
    const gf::Residue diff = f.sub(next, old);
    std::int64_t delta = 0;
    for (std::size_t i : touching[var]) {
      gf::Residue moved =
          f.add(row_value[i], f.mul(rows[i].expr.at(static_cast<int>(var)), diff));
      delta += row_weight(rows[i], moved) - row_weight(rows[i], row_value[i]);
    }
    const double u = internal::uniform_unit(rng);
    if (delta >= 0 ||
        (temperature > 0 &&
         u < std::exp(static_cast<double>(delta) / temperature))) {
      x[var] = next;
      for (std::size_t i : touching[var]) {
        row_value[i] = f.add(
            row_value[i], f.mul(rows[i].expr.at(static_cast<int>(var)), diff));
      }
      current += delta;
      if (current > best) {
        best = current;
        out.assignment = x;
      }
    }
  }
  finish(inst, out, start);
  return out;
}

namespace {

gf::Vector prange_once(const LinsatInstance& inst, std::uint64_t seed,
                       std::string* diagnostic) {
  const std::size_t n = inst.num_variables();
  const std::size_t m = inst.num_constraints();
  const gf::FieldOrder& f = inst.order();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  internal::shuffle(order, rng);

  // Greedy independent rows, kept in reduced form for the rank test.
  std::vector<gf::Vector> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  const gf::FieldMatrix b = inst.matrix();
  for (std::size_t r : order) {
    if (chosen.size() == n) break;
    auto row = b.row(r);
    gf::Vector v(row.begin(), row.end());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      gf::Residue c = v[pivots[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        v[j] = f.sub(v[j], f.mul(c, basis[k][j]));
      }
    }
    auto lead = std::find_if(v.begin(), v.end(),
                             [](gf::Residue a) { return a != 0; });
    if (lead == v.end()) continue;
    const auto p = static_cast<std::size_t>(lead - v.begin());
    const gf::Residue inv = f.inv(v[p]);
    for (gf::Residue& a : v) a = f.mul(a, inv);
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(r);
  }
  if (diagnostic && chosen.size() < n) {
    *diagnostic = "constraint matrix has rank " + std::to_string(chosen.size()) +
                  " < n = " + std::to_string(n) +
                  "; free variables fixed to 0";
  }
  std::vector<gf::Vector> sys;
  gf::Vector target;
  for (std::size_t r : chosen) {
    auto row = b.row(r);
    sys.emplace_back(row.begin(), row.end());
    const LinsatRhs& rhs = inst.constraints()[r].rhs;
    auto it = rhs.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(
                         internal::uniform_below(rng, rhs.size())));
    target.push_back(it->first);
  }
  if (sys.empty()) return gf::Vector(n, 0);
  auto x = gf::solve(gf::FieldMatrix::from_rows(f, sys, n), target);
  if (!x) throw Error("independent rows produced an inconsistent system");
  return *x;
}

}  // namespace

SolveResult prange_solve(const LinsatInstance& inst, std::uint64_t seed,
                         const PrangeOptions& options) {
  const auto start = Clock::now();
  if (options.restarts < 1) {
    throw InvalidArgument("prange needs at least one restart");
  }
  std::vector<gf::Vector> found(options.restarts);
  std::vector<std::int64_t> weight(options.restarts);
  std::string diagnostic;
  prange_once(inst, internal::derive_seed(seed, 0), &diagnostic);
  internal::parallel_for(options.restarts, options.threads, [&](std::size_t r) {
    found[r] = prange_once(inst, internal::derive_seed(seed, r), nullptr);
    weight[r] = inst.evaluate(found[r]);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < options.restarts; ++r) {
    if (weight[r] > weight[best] ||
        (weight[r] == weight[best] && found[r] < found[best])) {
      best = r;
    }
  }
  SolveResult out;
  out.solver = "prange";
  out.seed = seed;
  out.assignment = std::move(found[best]);
  out.diagnostic = diagnostic;
  finish(inst, out, start);
  return out;
}

std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::kBrute: return "brute";
    case SolverKind::kAnneal: return "anneal";
    case SolverKind::kPrange: return "prange";
  }
  return "brute";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "brute") return SolverKind::kBrute;
  if (name == "anneal") return SolverKind::kAnneal;
  if (name == "prange") return SolverKind::kPrange;
  throw InvalidArgument("unknown solver '" + std::string(name) +
                        "' (expected brute, anneal or prange)");
}

}  // namespace maxlin
