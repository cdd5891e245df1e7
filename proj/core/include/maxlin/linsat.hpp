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

// Weighted set Max-LINSAT over a prime field.
//
// Constraint i is satisfied by x when b_i . x lies in its right-hand side
// set F_i, and then contributes the weight attached to that particular
// value. The instance objective is the sum of those contributions.

#ifndef MAXLIN_LINSAT_HPP_
#define MAXLIN_LINSAT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxlin/gf.hpp"

namespace maxlin {

struct LinsatVar {
  int id = 0;
  std::string name;
};

// Sparse coefficient row: variable id -> nonzero residue.
using LinsatExpr = std::map<int, gf::Residue>;
// Member value -> positive integer weight.
using LinsatRhs = std::map<gf::Residue, std::int64_t>;

struct LinsatConstraint {
  LinsatExpr expr;
  LinsatRhs rhs;
  // Provenance tags. Rows emitted together by one gadget or one lowered
  // objective term share a group id.
  std::set<int> groups;
};

// How add_constraint treats a left-hand side that is already present.
enum class MergeMode {
  kScaled,   // merge left-hand sides equal up to a nonzero scalar
  kLiteral,  // merge only identical left-hand sides
  kNone,     // never merge; duplicates are kept as separate rows
};

// Expression scaled so that its lowest-index coefficient is 1, together
// with the factor that was applied.
struct CanonicalExpr {
  LinsatExpr expr;
  gf::Residue factor = 1;
};
CanonicalExpr canonical_expression(const LinsatExpr& expr,
                                   const gf::FieldOrder& order);

class LinsatInstance {
 public:
  explicit LinsatInstance(gf::FieldOrder order,
                          MergeMode mode = MergeMode::kScaled);

  const gf::FieldOrder& order() const { return order_; }
  std::uint64_t q() const { return order_.value(); }
  MergeMode merge_mode() const { return mode_; }

  int add_variable(std::string name);
  const std::vector<LinsatVar>& variables() const { return variables_; }
  std::size_t num_variables() const { return variables_.size(); }

  // Adds or merges `expr in {members}`. Zero coefficients are dropped and
  // coefficients/values are reduced mod q. Throws InvalidArgument on a zero
  // expression, a non-positive weight, an unknown variable, or when the
  // resulting right-hand side covers all of F_q with one uniform weight.
  std::size_t add_constraint(
      const LinsatExpr& expr,
      const std::vector<std::pair<gf::Residue, std::int64_t>>& members,
      const std::set<int>& groups = {});
  std::size_t add_constraint(const LinsatConstraint& c) {
    return add_constraint(c.expr, {c.rhs.begin(), c.rhs.end()}, c.groups);
  }

  // Replaces the left-hand side of row i. Member values are rescaled when
  // the canonical form requires it. Throws InvalidArgument on a bad index or
  // when the new expression collides with another row in a merging mode.
  void replace_expression(std::size_t i, const LinsatExpr& expr);

  // Fresh provenance group id, larger than any id already in use.
  int new_group();

  const std::vector<LinsatConstraint>& constraints() const {
    return constraints_;
  }
  std::size_t num_constraints() const { return constraints_.size(); }

  // b_i . x for one row.
  gf::Residue row_value(std::size_t i, std::span<const gf::Residue> x) const;
  // Sum of the weights of the values hit by x. Throws on length mismatch.
  std::int64_t evaluate(std::span<const gf::Residue> x) const;

  // Dense m x n constraint matrix B.
  gf::FieldMatrix matrix() const;

  bool is_unweighted() const;
  // Sum over rows of the largest weight in each right-hand side.
  std::int64_t total_weight() const;
  // GCD of every weight in the instance (0 when there are none).
  std::int64_t weight_gcd() const;

 private:
  gf::FieldOrder order_;
  MergeMode mode_;
  std::vector<LinsatVar> variables_;
  std::vector<LinsatConstraint> constraints_;
  std::map<LinsatExpr, std::size_t> index_;
  int next_group_ = 0;
};

// True when rhs lists every element of F_q with one common weight.
bool covers_field_uniformly(const LinsatRhs& rhs, std::uint64_t q);

struct UnweightedView {
  LinsatInstance instance;
  // Row of the source instance each unweighted row was copied from.
  std::vector<std::size_t> source_row;
  std::int64_t gcd = 1;
};

// Divides every weight by the instance GCD g, then expands each row into
// unit-weight copies: member values with equal residual weight w form one
// set constraint, repeated w times. For every x,
//   unweighted.evaluate(x) * g == weighted.evaluate(x).
UnweightedView to_unweighted(const LinsatInstance& inst);

// Calls fn on every x in F_q^n in lexicographic order (x[0] most
// significant). Throws GuardExceeded when q^n exceeds `limit`.
void for_each_assignment(
    std::uint64_t q, std::size_t n, std::uint64_t limit,
    const std::function<void(std::span<const gf::Residue>)>& fn);

// q^n, saturating at UINT64_MAX.
std::uint64_t saturating_power(std::uint64_t q, std::size_t n);

}  // namespace maxlin

#endif  // MAXLIN_LINSAT_HPP_
