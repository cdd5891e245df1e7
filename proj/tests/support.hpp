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

// Random generators and brute-force oracles shared by the unit tests and
// the acceptance binary. Oracles here avoid the library code paths they
// check: they evaluate rows directly from the stored coefficients.

#ifndef MAXLIN_TESTS_SUPPORT_HPP_
#define MAXLIN_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "maxlin/error.hpp"
#include "maxlin/gf.hpp"
#include "maxlin/linsat.hpp"
#include "maxlin/model.hpp"
#include "maxlin/rational.hpp"

namespace maxlin::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::uint64_t ipow(std::uint64_t q, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= q;
  return r;
}

// Digits of `index` in base q, most significant first.
inline gf::Vector digits(std::uint64_t index, std::uint64_t q, std::size_t n) {
  gf::Vector x(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    x[i] = static_cast<gf::Residue>(index % q);
    index /= q;
  }
  return x;
}

inline std::size_t weight(std::span<const gf::Residue> v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](gf::Residue r) { return r != 0; }));
}

// Satisfied weight computed straight from the stored rows.
inline std::int64_t row_sum(const LinsatInstance& inst,
                            std::span<const gf::Residue> x) {
  const std::uint64_t q = inst.q();
  std::int64_t total = 0;
  for (const auto& c : inst.constraints()) {
    std::uint64_t v = 0;
    for (const auto& [var, coef] : c.expr) {
      v = (v + std::uint64_t{coef} * x[static_cast<std::size_t>(var)]) % q;
    }
    auto it = c.rhs.find(static_cast<gf::Residue>(v));
    if (it != c.rhs.end()) total += it->second;
  }
  return total;
}

inline std::int64_t brute_optimum(const LinsatInstance& inst) {
  const std::uint64_t count = ipow(inst.q(), inst.num_variables());
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t i = 0; i < count; ++i) {
    best = std::max(best, row_sum(inst, digits(i, inst.q(), inst.num_variables())));
  }
  return best;
}

// max over (x, y) of f, where x are the first `outer` variables and y the
// rest. x is enumerated; y is removed by max-sum bucket elimination, newest
// variable first. Throws when an intermediate factor would span more than
// max_scope variables.
inline std::int64_t eliminated_optimum(const LinsatInstance& inst,
                                       std::size_t outer,
                                       std::size_t max_scope = 3) {
  struct Factor {
    std::vector<std::size_t> scope;   // increasing
    std::vector<std::int64_t> table;  // indexed by digits over scope
  };
  const std::size_t n = inst.num_variables();
  const std::uint64_t q = inst.q();
  auto row_value = [&](const LinsatConstraint& c, const gf::Vector& x) {
    std::uint64_t v = 0;
    for (const auto& [var, coef] : c.expr) {
      v = (v + std::uint64_t{coef} * x[static_cast<std::size_t>(var)]) % q;
    }
    auto it = c.rhs.find(static_cast<gf::Residue>(v));
    return it == c.rhs.end() ? std::int64_t{0} : it->second;
  };
  auto index_of = [&](const Factor& f, const gf::Vector& x) {
    std::uint64_t idx = 0;
    for (std::size_t w : f.scope) idx = idx * q + x[w];
    return idx;
  };
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  gf::Vector x(n, 0);
  const std::uint64_t outer_count = ipow(q, outer);
  for (std::uint64_t i = 0; i < outer_count; ++i) {
    gf::Vector head = digits(i, q, outer);
    std::copy(head.begin(), head.end(), x.begin());
    std::int64_t total = 0;
    std::vector<Factor> factors;
    std::vector<std::vector<std::size_t>> bucket(n);
    auto place = [&](Factor f) {
      if (f.scope.empty()) {
        total += f.table[0];
        return;
      }
      bucket[f.scope.back()].push_back(factors.size());
      factors.push_back(std::move(f));
    };
    for (const auto& c : inst.constraints()) {
      Factor f;
      for (const auto& [var, coef] : c.expr) {
        if (static_cast<std::size_t>(var) >= outer) {
          f.scope.push_back(static_cast<std::size_t>(var));
        }
      }
      if (f.scope.size() > max_scope) throw std::runtime_error("row scope too large");
      const std::uint64_t cells = ipow(q, f.scope.size());
      for (std::uint64_t j = 0; j < cells; ++j) {
        gf::Vector y = digits(j, q, f.scope.size());
        for (std::size_t t = 0; t < y.size(); ++t) x[f.scope[t]] = y[t];
        f.table.push_back(row_value(c, x));
      }
      place(std::move(f));
    }
    for (std::size_t v = n; v-- > outer;) {
      if (bucket[v].empty()) continue;
      std::set<std::size_t> merged;
      for (std::size_t fi : bucket[v]) {
        merged.insert(factors[fi].scope.begin(), factors[fi].scope.end());
      }
      merged.erase(v);
      Factor out;
      out.scope.assign(merged.begin(), merged.end());
      if (out.scope.size() > max_scope) throw std::runtime_error("factor too large");
      const std::uint64_t cells = ipow(q, out.scope.size());
      for (std::uint64_t j = 0; j < cells; ++j) {
        gf::Vector y = digits(j, q, out.scope.size());
        for (std::size_t t = 0; t < y.size(); ++t) x[out.scope[t]] = y[t];
        std::int64_t top = std::numeric_limits<std::int64_t>::min();
        for (std::uint64_t a = 0; a < q; ++a) {
          x[v] = static_cast<gf::Residue>(a);
          std::int64_t s = 0;
          for (std::size_t fi : bucket[v]) s += factors[fi].table[index_of(factors[fi], x)];
          top = std::max(top, s);
        }
        out.table.push_back(top);
      }
      place(std::move(out));
    }
    best = std::max(best, total);
  }
  return best;
}

// Random row with at least one nonzero coefficient.
inline LinsatExpr random_expr(Rng& rng, std::uint64_t q, std::size_t n) {
  LinsatExpr e;
  while (e.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      auto c = static_cast<gf::Residue>(uniform_int(rng, 0, static_cast<std::int64_t>(q) - 1));
      if (c != 0) e[static_cast<int>(j)] = c;
    }
  }
  return e;
}

// Random right-hand side that is a proper nonempty subset of F_q (or any
// nonempty subset when weights are non-uniform).
inline std::vector<std::pair<gf::Residue, std::int64_t>> random_rhs(
    Rng& rng, std::uint64_t q, std::int64_t max_weight) {
  std::vector<std::pair<gf::Residue, std::int64_t>> rhs;
  while (true) {
    rhs.clear();
    std::set<std::int64_t> weights;
    for (std::uint64_t v = 0; v < q; ++v) {
      if (uniform_int(rng, 0, 1) == 1) {
        std::int64_t w = uniform_int(rng, 1, max_weight);
        rhs.emplace_back(static_cast<gf::Residue>(v), w);
        weights.insert(w);
      }
    }
    if (rhs.empty()) continue;
    if (rhs.size() == q && weights.size() == 1) continue;
    return rhs;
  }
}

inline LinsatInstance random_instance(Rng& rng, std::uint64_t q, std::size_t n,
                                      std::size_t m, std::int64_t max_weight = 1,
                                      MergeMode mode = MergeMode::kNone) {
  LinsatInstance inst{gf::FieldOrder(q), mode};
  for (std::size_t j = 0; j < n; ++j) inst.add_variable("x" + std::to_string(j));
  for (std::size_t i = 0; i < m; ++i) {
    inst.add_constraint(random_expr(rng, q, n), random_rhs(rng, q, max_weight));
  }
  return inst;
}

// Uniformly random Max-LINSAT row b.x = c with a single target value.
inline LinsatInstance random_equation_instance(Rng& rng, std::uint64_t q,
                                               std::size_t n, std::size_t m) {
  LinsatInstance inst{gf::FieldOrder(q), MergeMode::kNone};
  for (std::size_t j = 0; j < n; ++j) inst.add_variable("x" + std::to_string(j));
  for (std::size_t i = 0; i < m; ++i) {
    auto c = static_cast<gf::Residue>(uniform_int(rng, 0, static_cast<std::int64_t>(q) - 1));
    inst.add_constraint(random_expr(rng, q, n), {{c, 1}});
  }
  return inst;
}

inline gf::FieldMatrix random_matrix(Rng& rng, std::uint64_t q, std::size_t rows,
                                     std::size_t cols) {
  gf::FieldMatrix m(rows, cols, gf::FieldOrder(q));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, static_cast<gf::Residue>(
                      uniform_int(rng, 0, static_cast<std::int64_t>(q) - 1)));
    }
  }
  return m;
}

// Best source score over all in-bounds assignments.
inline Rational source_optimum(const ConstraintModel& model) {
  std::optional<Rational> best;
  for_each_assignment(model, std::uint64_t{1} << 24,
                      [&](std::span<const std::int64_t> a) {
                        Rational s = model.evaluate(a).score();
                        if (!best || s > *best) best = s;
                      });
  return best.value_or(Rational(0));
}

// Small random model: binary and narrow integer variables, a linear or
// quadratic objective, and a few relational or modular constraints.
inline ConstraintModel random_model(Rng& rng) {
  ConstraintModel m;
  const int nbin = static_cast<int>(uniform_int(rng, 1, 3));
  const int nint = static_cast<int>(uniform_int(rng, 0, 1));
  std::vector<IntExpr> bins;
  std::vector<IntExpr> all;
  for (int i = 0; i < nbin; ++i) {
    bins.push_back(IntExpr::variable(m.new_binary_var("b" + std::to_string(i))));
    all.push_back(bins.back());
  }
  for (int i = 0; i < nint; ++i) {
    std::int64_t lo = uniform_int(rng, -1, 1);
    all.push_back(IntExpr::variable(
        m.new_var("z" + std::to_string(i), lo, lo + uniform_int(rng, 1, 3))));
  }
  auto coef = [&] {
    std::int64_t c = 0;
    while (c == 0) c = uniform_int(rng, -3, 3);
    return Rational(c, uniform_int(rng, 1, 2));
  };
  IntExpr obj;
  for (const auto& v : all) {
    if (uniform_int(rng, 0, 2) > 0) obj += IntExpr(coef()) * v;
  }
  if (nbin >= 2 && uniform_int(rng, 0, 1) == 1) {
    obj += IntExpr(coef()) * bins[0] * bins[1];
  }
  if (nbin >= 3 && uniform_int(rng, 0, 2) == 0) {
    obj += IntExpr(coef()) * bins[0] * bins[1] * bins[2];
  }
  m.add_objective(obj, uniform_int(rng, 0, 3) == 0);
  const int ncons = static_cast<int>(uniform_int(rng, 0, 2));
  static constexpr Relation kRelations[] = {
      Relation::kEquals,   Relation::kDoesNotEqual, Relation::kLessThan,
      Relation::kLessEqual, Relation::kGreaterThan, Relation::kGreaterEqual};
  for (int i = 0; i < ncons; ++i) {
    IntExpr lhs;
    for (const auto& v : all) {
      if (uniform_int(rng, 0, 1) == 1) lhs += IntExpr(uniform_int(rng, -2, 2)) * v;
    }
    if (lhs.is_constant()) lhs += all[0];
    IntExpr rhs(uniform_int(rng, -1, 2));
    Rational w(uniform_int(rng, 1, 3));
    if (uniform_int(rng, 0, 4) == 0) {
      m.add_constraint(eq(lhs, rhs), w, uniform_int(rng, 2, 4));
    } else {
      m.add_constraint(RelationalExpr{lhs - rhs, kRelations[uniform_int(rng, 0, 5)]}, w);
    }
  }
  if (nbin >= 2 && uniform_int(rng, 0, 2) == 0) {
    m.add_boolean_constraint(bins[0] ^ bins[1], Rational(uniform_int(rng, 1, 2)));
  }
  return m;
}

}  // namespace maxlin::testing

#endif  // MAXLIN_TESTS_SUPPORT_HPP_
