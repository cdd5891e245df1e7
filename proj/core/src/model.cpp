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

#include "maxlin/model.hpp"

#include <algorithm>
#include <sstream>

#include "maxlin/error.hpp"

namespace maxlin {

IntMonomial::IntMonomial(std::vector<std::pair<int, int>> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [id, exp] : factors) {
    if (exp < 1) throw InvalidArgument("monomial exponent must be >= 1");
    if (!factors_.empty() && factors_.back().first == id) {
      factors_.back().second += exp;
    } else {
      factors_.emplace_back(id, exp);
    }
  }
}

int IntMonomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

IntMonomial IntMonomial::operator*(const IntMonomial& o) const {
  std::vector<std::pair<int, int>> all = factors_;
  all.insert(all.end(), o.factors_.begin(), o.factors_.end());
  return IntMonomial(std::move(all));
}

IntExpr::IntExpr(Rational constant) : constant_(constant) {}

IntExpr IntExpr::variable(const IntVar& v) {
  if (v.lower > v.upper) {
    throw InvalidArgument("variable " + v.name + " has lower > upper");
  }
  IntExpr e;
  e.terms_.emplace(IntMonomial({{v.id, 1}}), Rational(1));
  e.domains_.emplace(v.id, VarDomain{v.lower, v.upper});
  return e;
}

IntExpr IntExpr::from_terms(std::map<IntMonomial, Rational> terms,
                            Rational constant,
                            std::map<int, VarDomain> domains) {
  IntExpr e;
  e.domains_ = std::move(domains);
  e.constant_ = constant;
  for (const auto& [m, c] : terms) {
    for (const auto& [id, exp] : m.factors()) {
      if (!e.domains_.contains(id)) {
        throw InvalidArgument("expression references variable " +
                              std::to_string(id) + " without a domain");
      }
    }
    if (m.empty()) {
      e.constant_ += c;
    } else {
      e.add_term(e.normalize(m), c);
    }
  }
  return e;
}

int IntExpr::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool IntExpr::is_binary() const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [id, exp] : m.factors()) {
      auto it = domains_.find(id);
      if (it == domains_.end() || !it->second.is_binary()) return false;
    }
  }
  return true;
}

Rational IntExpr::linear_coefficient(int id) const {
  auto it = terms_.find(IntMonomial({{id, 1}}));
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational IntExpr::evaluate(std::span<const std::int64_t> values) const {
  Rational total = constant_;
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (const auto& [id, exp] : m.factors()) {
      if (static_cast<std::size_t>(id) >= values.size()) {
        throw InvalidArgument("assignment does not cover variable " +
                              std::to_string(id));
      }
      for (int k = 0; k < exp; ++k) prod *= values[static_cast<std::size_t>(id)];
    }
    total += prod;
  }
  return total;
}

void IntExpr::add_term(const IntMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntMonomial IntExpr::normalize(const IntMonomial& m) const {
  std::vector<std::pair<int, int>> f = m.factors();
  for (auto& [id, exp] : f) {
    auto it = domains_.find(id);
    if (it != domains_.end() && it->second.is_binary()) exp = 1;
  }
  return IntMonomial(std::move(f));
}

void IntExpr::merge_domains(const std::map<int, VarDomain>& other) {
  for (const auto& [id, d] : other) {
    auto [it, inserted] = domains_.emplace(id, d);
    if (!inserted && !(it->second == d)) {
      throw InvalidArgument("variable " + std::to_string(id) +
                            " used with conflicting bounds");
    }
  }
}

IntExpr IntExpr::operator+(const IntExpr& o) const {
  IntExpr r = *this;
  r += o;
  return r;
}

IntExpr IntExpr::operator-(const IntExpr& o) const {
  IntExpr r = *this;
  r -= o;
  return r;
}

IntExpr IntExpr::operator*(const IntExpr& o) const {
  IntExpr r = *this;
  r *= o;
  return r;
}

IntExpr IntExpr::operator-() const {
  IntExpr r = *this;
  r.constant_ = -r.constant_;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

IntExpr& IntExpr::operator+=(const IntExpr& o) {
  merge_domains(o.domains_);
  constant_ += o.constant_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

IntExpr& IntExpr::operator-=(const IntExpr& o) { return *this += -o; }

IntExpr& IntExpr::operator*=(const IntExpr& o) {
  IntExpr r;
  r.domains_ = domains_;
  r.merge_domains(o.domains_);
  r.constant_ = constant_ * o.constant_;
  for (const auto& [m, c] : terms_) r.add_term(m, c * o.constant_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c * constant_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      r.add_term(r.normalize(ma * mb), ca * cb);
    }
  }
  *this = std::move(r);
  return *this;
}

IntExpr IntExpr::operator~() const {
  const IntExpr args[] = {*this};
  return bool_desugar(BoolOp::kNot, args);
}

IntExpr IntExpr::operator&(const IntExpr& o) const {
  const IntExpr args[] = {*this, o};
  return bool_desugar(BoolOp::kAnd, args);
}

IntExpr IntExpr::operator|(const IntExpr& o) const {
  const IntExpr args[] = {*this, o};
  return bool_desugar(BoolOp::kOr, args);
}

IntExpr IntExpr::operator^(const IntExpr& o) const {
  const IntExpr args[] = {*this, o};
  return bool_desugar(BoolOp::kXor, args);
}

std::string IntExpr::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    os << (first ? "" : " + ") << maxlin::to_string(c);
    for (const auto& [id, exp] : m.factors()) {
      os << "*x" << id;
      if (exp > 1) os << "^" << exp;
    }
    first = false;
  }
  if (first || constant_ != 0) {
    os << (first ? "" : " + ") << maxlin::to_string(constant_);
  }
  return os.str();
}

IntExpr bool_desugar(BoolOp op, std::span<const IntExpr> args) {
  for (const IntExpr& a : args) {
    if (!a.is_binary()) {
      throw InvalidArgument(
          "Boolean operator applied to an expression with a non-binary "
          "variable: " + a.to_string());
    }
  }
  if (op == BoolOp::kNot) {
    if (args.size() != 1) throw InvalidArgument("NOT takes one argument");
    return IntExpr(1) - args[0];
  }
  if (args.empty()) throw InvalidArgument("Boolean operator without arguments");
  IntExpr acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) {
    const IntExpr& b = args[i];
    switch (op) {
      case BoolOp::kAnd:
        acc = acc * b;
        break;
      case BoolOp::kOr:
        acc = acc + b - acc * b;
        break;
      case BoolOp::kXor:
        acc = acc + b - IntExpr(2) * acc * b;
        break;
      case BoolOp::kNot:
        break;
    }
  }
  return acc;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::kEquals: return "EQUALS";
    case Relation::kDoesNotEqual: return "DOES_NOT_EQUAL";
    case Relation::kLessThan: return "LESS_THAN";
    case Relation::kLessEqual: return "LESS_EQUAL";
    case Relation::kGreaterThan: return "GREATER_THAN";
    case Relation::kGreaterEqual: return "GREATER_EQUAL";
  }
  return "?";
}

Relation parse_relation(std::string_view name) {
  for (Relation r : {Relation::kEquals, Relation::kDoesNotEqual,
                     Relation::kLessThan, Relation::kLessEqual,
                     Relation::kGreaterThan, Relation::kGreaterEqual}) {
    if (to_string(r) == name) return r;
  }
  throw InvalidArgument("unknown relation '" + std::string(name) + "'");
}

bool holds(Relation r, const Rational& v) {
  switch (r) {
    case Relation::kEquals: return v == 0;
    case Relation::kDoesNotEqual: return v != 0;
    case Relation::kLessThan: return v < 0;
    case Relation::kLessEqual: return v <= 0;
    case Relation::kGreaterThan: return v > 0;
    case Relation::kGreaterEqual: return v >= 0;
  }
  return false;
}

std::string to_string(ConstraintRole r) {
  switch (r) {
    case ConstraintRole::kUser: return "user";
    case ConstraintRole::kObjective: return "objective";
    case ConstraintRole::kPenalty: return "penalty";
  }
  return "?";
}

ConstraintRole parse_constraint_role(std::string_view name) {
  for (ConstraintRole r : {ConstraintRole::kUser, ConstraintRole::kObjective,
                           ConstraintRole::kPenalty}) {
    if (to_string(r) == name) return r;
  }
  throw InvalidArgument("unknown constraint role '" + std::string(name) + "'");
}

RelationalExpr eq(const IntExpr& a, const IntExpr& b) {
  return {a - b, Relation::kEquals};
}
RelationalExpr ne(const IntExpr& a, const IntExpr& b) {
  return {a - b, Relation::kDoesNotEqual};
}
RelationalExpr lt(const IntExpr& a, const IntExpr& b) {
  return {a - b, Relation::kLessThan};
}
RelationalExpr le(const IntExpr& a, const IntExpr& b) {
  return {a - b, Relation::kLessEqual};
}
RelationalExpr gt(const IntExpr& a, const IntExpr& b) {
  return {a - b, Relation::kGreaterThan};
}
RelationalExpr ge(const IntExpr& a, const IntExpr& b) {
  return {a - b, Relation::kGreaterEqual};
}

IntVar ConstraintModel::new_var(std::string name, std::int64_t lower,
                                std::int64_t upper) {
  if (lower > upper) {
    throw InvalidArgument("variable " + name + ": lower bound exceeds upper");
  }
  IntVar v{static_cast<int>(variables_.size()), std::move(name), lower, upper};
  variables_.push_back(v);
  return v;
}

IntExpr ConstraintModel::var(int id) const {
  return IntExpr::variable(variable(id));
}

const IntVar& ConstraintModel::variable(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= variables_.size()) {
    throw InvalidArgument("unknown variable id " + std::to_string(id));
  }
  return variables_[static_cast<std::size_t>(id)];
}

void ConstraintModel::check_expr(const IntExpr& e) const {
  for (const auto& [id, d] : e.domains()) {
    const IntVar& v = variable(id);
    if (v.lower != d.lower || v.upper != d.upper) {
      throw InvalidArgument("expression disagrees with bounds of " + v.name);
    }
  }
  for (const auto& [m, c] : e.terms()) {
    for (const auto& [id, exp] : m.factors()) {
      if (!e.domains().contains(id)) variable(id);
    }
  }
}

void ConstraintModel::add_objective(const IntExpr& expr, bool minimize,
                                    Rational weight) {
  add_raw_objective({minimize ? -expr : expr, weight,
                     ObjectiveKind::kObjective});
}

void ConstraintModel::add_boolean_constraint(const IntExpr& expr,
                                             Rational weight) {
  if (!expr.is_binary()) {
    throw InvalidArgument("Boolean constraint over non-binary variables");
  }
  add_raw_objective({expr, weight, ObjectiveKind::kBooleanConstraint});
}

void ConstraintModel::add_raw_objective(Objective o) {
  if (o.weight <= 0) throw InvalidArgument("objective weight must be positive");
  check_expr(o.expr);
  objectives_.push_back(std::move(o));
}

std::size_t ConstraintModel::add_constraint(const RelationalExpr& rel,
                                            Rational weight,
                                            std::optional<std::int64_t> modulus) {
  IntConstraint c;
  c.expr = rel.expr;
  c.relation = rel.relation;
  c.modulus = modulus;
  c.weight = weight;
  return add_constraint(std::move(c));
}

std::size_t ConstraintModel::add_constraint(IntConstraint c) {
  if (c.weight <= 0) {
    throw InvalidArgument("constraint weight must be positive");
  }
  if (c.modulus) {
    if (*c.modulus < 2) throw InvalidArgument("modulus must be >= 2");
    if (c.relation != Relation::kEquals &&
        c.relation != Relation::kDoesNotEqual) {
      throw InvalidArgument(
          "modular constraints support only EQUALS and DOES_NOT_EQUAL");
    }
    if (!is_integer(c.expr.constant()) ||
        std::any_of(c.expr.terms().begin(), c.expr.terms().end(),
                    [](const auto& t) { return !is_integer(t.second); })) {
      throw InvalidArgument("modular constraints need integer coefficients");
    }
  }
  check_expr(c.expr);
  constraints_.push_back(std::move(c));
  return constraints_.size() - 1;
}

ModelEvaluation ConstraintModel::evaluate(
    std::span<const std::int64_t> assignment) const {
  if (assignment.size() != variables_.size()) {
    throw InvalidArgument("assignment has " +
                          std::to_string(assignment.size()) +
                          " values for " + std::to_string(variables_.size()) +
                          " variables");
  }
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (assignment[i] < variables_[i].lower ||
        assignment[i] > variables_[i].upper) {
      throw InvalidArgument("value " + std::to_string(assignment[i]) +
                            " out of bounds for " + variables_[i].name);
    }
  }
  ModelEvaluation out;
  for (const Objective& o : objectives_) {
    out.objective += o.weight * o.expr.evaluate(assignment);
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const IntConstraint& c = constraints_[i];
    Rational v = c.expr.evaluate(assignment);
    bool ok;
    if (c.modulus) {
      std::int64_t r = v.numerator() % *c.modulus;
      ok = (r == 0) == (c.relation == Relation::kEquals);
    } else {
      ok = holds(c.relation, v);
    }
    if (ok) {
      out.satisfied_weight += c.weight;
    } else {
      out.violated.push_back(i);
    }
  }
  return out;
}

void ConstraintModel::validate() const {
  for (const IntVar& v : variables_) {
    if (v.lower > v.upper) {
      throw InvalidArgument("variable " + v.name + ": lower exceeds upper");
    }
  }
  for (const Objective& o : objectives_) check_expr(o.expr);
  for (const IntConstraint& c : constraints_) check_expr(c.expr);
}

void for_each_assignment(
    const ConstraintModel& model, std::uint64_t limit,
    const std::function<void(std::span<const std::int64_t>)>& fn) {
  const auto& vars = model.variables();
  std::uint64_t total = 1;
  for (const IntVar& v : vars) {
    if (!v.is_bounded()) throw InvalidArgument("unbounded variable " + v.name);
    auto width = static_cast<std::uint64_t>(v.upper - v.lower) + 1;
    if (width == 0 || total > limit / width) {
      throw GuardExceeded("assignment space exceeds limit " +
                          std::to_string(limit));
    }
    total *= width;
  }
  std::vector<std::int64_t> x(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) x[i] = vars[i].lower;
  while (true) {
    fn(x);
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (x[i] < vars[i].upper) {
        ++x[i];
        break;
      }
      x[i] = vars[i].lower;
      if (i == 0) return;
    }
    if (vars.empty()) return;
  }
}

}  // namespace maxlin
