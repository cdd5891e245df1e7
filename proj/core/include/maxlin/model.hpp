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

// High-level constraint model: bounded integer variables, multilinear
// polynomial expressions with rational coefficients, relational and modular
// constraints, and weighted objectives.
//
// Every constraint is stored as `expr REL 0`. Boolean operators on binary
// expressions are desugared into polynomials immediately, and a Boolean
// constraint is stored as a weighted objective term.

#ifndef MAXLIN_MODEL_HPP_
#define MAXLIN_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxlin/rational.hpp"

namespace maxlin {

inline constexpr std::int64_t kUnboundedLower =
    std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kUnboundedUpper =
    std::numeric_limits<std::int64_t>::max();

struct IntVar {
  int id = 0;
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 0;

  bool is_binary() const { return lower == 0 && upper == 1; }
  bool is_bounded() const {
    return lower != kUnboundedLower && upper != kUnboundedUpper;
  }
  friend bool operator==(const IntVar&, const IntVar&) = default;
};

// Product of variable powers, sorted by variable id.
class IntMonomial {
 public:
  IntMonomial() = default;
  // Factors may be unsorted and repeated; they are merged.
  explicit IntMonomial(std::vector<std::pair<int, int>> factors);

  const std::vector<std::pair<int, int>>& factors() const { return factors_; }
  int degree() const;
  bool empty() const { return factors_.empty(); }
  IntMonomial operator*(const IntMonomial& o) const;

  friend auto operator<=>(const IntMonomial&, const IntMonomial&) = default;

 private:
  std::vector<std::pair<int, int>> factors_;
};

struct VarDomain {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  bool is_binary() const { return lower == 0 && upper == 1; }
  friend bool operator==(const VarDomain&, const VarDomain&) = default;
};

// Multilinear-normalized polynomial. The expression remembers the domain of
// every variable it was built from so that products of binary variables can
// be reduced (x * x = x) without a model at hand.
class IntExpr {
 public:
  IntExpr() = default;
  IntExpr(Rational constant);  // NOLINT(google-explicit-constructor)
  IntExpr(std::int64_t constant)  // NOLINT(google-explicit-constructor)
      : IntExpr(Rational(constant)) {}
  static IntExpr variable(const IntVar& v);
  // Builds an expression from raw terms; `domains` must cover every id.
  static IntExpr from_terms(std::map<IntMonomial, Rational> terms,
                            Rational constant,
                            std::map<int, VarDomain> domains);

  const std::map<IntMonomial, Rational>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  const std::map<int, VarDomain>& domains() const { return domains_; }

  int degree() const;
  bool is_constant() const { return terms_.empty(); }
  bool is_binary() const;  // every referenced variable is binary
  // Coefficient of the degree-1 monomial of `id` (zero when absent).
  Rational linear_coefficient(int id) const;

  // Values are indexed by variable id.
  Rational evaluate(std::span<const std::int64_t> values) const;

  IntExpr operator+(const IntExpr& o) const;
  IntExpr operator-(const IntExpr& o) const;
  IntExpr operator*(const IntExpr& o) const;
  IntExpr operator-() const;
  IntExpr& operator+=(const IntExpr& o);
  IntExpr& operator-=(const IntExpr& o);
  IntExpr& operator*=(const IntExpr& o);

  // Boolean operators; throw InvalidArgument on non-binary variables.
  IntExpr operator~() const;
  IntExpr operator&(const IntExpr& o) const;
  IntExpr operator|(const IntExpr& o) const;
  IntExpr operator^(const IntExpr& o) const;

  // Structural equality of the polynomial (domains are not compared).
  bool same_polynomial(const IntExpr& o) const {
    return constant_ == o.constant_ && terms_ == o.terms_;
  }

  std::string to_string() const;

 private:
  void add_term(const IntMonomial& m, const Rational& c);
  IntMonomial normalize(const IntMonomial& m) const;
  void merge_domains(const std::map<int, VarDomain>& other);

  std::map<IntMonomial, Rational> terms_;
  Rational constant_{0};
  std::map<int, VarDomain> domains_;
};

enum class BoolOp { kNot, kAnd, kOr, kXor };

// Polynomial form of a Boolean function over binary expressions.
// NOT takes exactly one argument; AND/OR/XOR fold left over >= 1 arguments.
IntExpr bool_desugar(BoolOp op, std::span<const IntExpr> args);

enum class Relation {
  kEquals,
  kDoesNotEqual,
  kLessThan,
  kLessEqual,
  kGreaterThan,
  kGreaterEqual,
};

std::string to_string(Relation r);
// Throws InvalidArgument for unknown names.
Relation parse_relation(std::string_view name);
bool holds(Relation r, const Rational& value);

// Where a constraint came from. Transform passes tag the constraints they
// emit; user constraints keep the default.
enum class ConstraintRole { kUser, kObjective, kPenalty };

std::string to_string(ConstraintRole r);
ConstraintRole parse_constraint_role(std::string_view name);

struct IntConstraint {
  IntExpr expr;  // constraint reads `expr relation 0`
  Relation relation = Relation::kEquals;
  std::optional<std::int64_t> modulus;
  Rational weight{1};
  ConstraintRole role = ConstraintRole::kUser;
  int group = -1;  // provenance group, -1 for none
};

// `lhs - rhs` together with a relation; produced by eq(), le(), ...
struct RelationalExpr {
  IntExpr expr;
  Relation relation;
};

RelationalExpr eq(const IntExpr& lhs, const IntExpr& rhs);
RelationalExpr ne(const IntExpr& lhs, const IntExpr& rhs);
RelationalExpr lt(const IntExpr& lhs, const IntExpr& rhs);
RelationalExpr le(const IntExpr& lhs, const IntExpr& rhs);
RelationalExpr gt(const IntExpr& lhs, const IntExpr& rhs);
RelationalExpr ge(const IntExpr& lhs, const IntExpr& rhs);

enum class ObjectiveKind { kObjective, kBooleanConstraint };

struct Objective {
  IntExpr expr;  // always maximized; minimize is stored negated
  Rational weight{1};
  ObjectiveKind kind = ObjectiveKind::kObjective;
};

struct ModelEvaluation {
  Rational objective{0};
  Rational satisfied_weight{0};
  std::vector<std::size_t> violated;

  // Quantity a Max-LINSAT image of the model maximizes.
  Rational score() const { return objective + satisfied_weight; }
};

class ConstraintModel {
 public:
  IntVar new_var(std::string name, std::int64_t lower, std::int64_t upper);
  IntVar new_binary_var(std::string name) {
    return new_var(std::move(name), 0, 1);
  }
  IntExpr var(int id) const;

  void add_objective(const IntExpr& expr, bool minimize = false,
                     Rational weight = Rational(1));
  // Weight multiplies into the objective weight of the desugared term.
  void add_boolean_constraint(const IntExpr& expr,
                              Rational weight = Rational(1));
  std::size_t add_constraint(const RelationalExpr& rel,
                             Rational weight = Rational(1),
                             std::optional<std::int64_t> modulus = {});
  std::size_t add_constraint(IntConstraint c);
  void add_raw_objective(Objective o);

  const std::vector<IntVar>& variables() const { return variables_; }
  const std::vector<Objective>& objectives() const { return objectives_; }
  const std::vector<IntConstraint>& constraints() const { return constraints_; }
  const IntVar& variable(int id) const;

  // Throws InvalidArgument when the assignment has the wrong length or a
  // value is out of bounds.
  ModelEvaluation evaluate(std::span<const std::int64_t> assignment) const;

  // Throws InvalidArgument when an expression references an unknown
  // variable or disagrees with its declared bounds.
  void validate() const;

 private:
  void check_expr(const IntExpr& e) const;

  std::vector<IntVar> variables_;
  std::vector<Objective> objectives_;
  std::vector<IntConstraint> constraints_;
};

// Calls `fn(assignment)` for every in-bounds assignment in lexicographic
// order. Throws GuardExceeded when the box holds more than `limit` points.
void for_each_assignment(const ConstraintModel& model, std::uint64_t limit,
                         const std::function<void(std::span<const std::int64_t>)>& fn);

}  // namespace maxlin

#endif  // MAXLIN_MODEL_HPP_
