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

#include "maxlin/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "maxlin/error.hpp"
#include "maxlin/gadgets.hpp"

namespace maxlin {
namespace {

constexpr std::int64_t kMaxExplicitSet = std::int64_t{1} << 24;

Rational abs_value(const Rational& r) { return r < 0 ? -r : r; }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error("integer overflow while lowering constraints");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error("integer overflow while lowering constraints");
  }
  return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_linear_single(const IntMonomial& m) {
  return m.factors().size() == 1 && m.factors()[0].second == 1;
}

IntExpr var_expr(const ConstraintModel& model, int id) {
  return IntExpr::variable(model.variable(id));
}

// Sum of |coefficient| * swing over every objective term plus every
// constraint weight: no two assignments differ in source score by more.
Rational score_swing(const ConstraintModel& model) {
  Rational swing{0};
  for (const IntConstraint& c : model.constraints()) swing += c.weight;
  for (const Objective& o : model.objectives()) {
    for (const auto& [mono, coef] : o.expr.terms()) {
      Rational a = abs_value(o.weight * coef);
      if (is_linear_single(mono)) {
        const IntVar& v = model.variable(mono.factors()[0].first);
        swing += a * Rational(v.upper - v.lower);
      } else {
        swing += a;
      }
    }
  }
  return swing;
}

void require_binary_monomial(const ConstraintModel& model,
                             const IntMonomial& mono) {
  for (const auto& [id, exp] : mono.factors()) {
    if (!model.variable(id).is_binary()) {
      throw InvalidArgument(
          "nonlinear term over non-binary variable " +
          model.variable(id).name +
          "; only products of binary variables can be lowered");
    }
  }
}

std::vector<int> monomial_ids(const IntMonomial& mono) {
  std::vector<int> ids;
  for (const auto& [id, exp] : mono.factors()) ids.push_back(id);
  return ids;
}

struct IntegerForm {
  std::vector<std::pair<int, std::int64_t>> coefficients;
  std::int64_t constant = 0;
  std::int64_t scale = 1;
};

IntegerForm integerize(const IntExpr& expr) {
  IntegerForm out;
  std::int64_t l = expr.constant().denominator();
  for (const auto& [mono, coef] : expr.terms()) {
    if (!is_linear_single(mono)) {
      throw InvalidArgument("constraint is not linear: " + expr.to_string());
    }
    l = lcm(l, coef.denominator());
  }
  out.scale = l;
  out.constant = checked_mul(expr.constant().numerator(),
                             l / expr.constant().denominator());
  for (const auto& [mono, coef] : expr.terms()) {
    out.coefficients.emplace_back(
        mono.factors()[0].first,
        checked_mul(coef.numerator(), l / coef.denominator()));
  }
  return out;
}

struct ShiftedRange {
  std::int64_t constant = 0;  // value at y = 0
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

ShiftedRange shifted_range(const IntegerForm& f, const ConstraintModel& m) {
  ShiftedRange r;
  r.constant = f.constant;
  for (const auto& [id, b] : f.coefficients) {
    r.constant = checked_add(r.constant, checked_mul(b, m.variable(id).lower));
  }
  r.lower = r.upper = r.constant;
  for (const auto& [id, b] : f.coefficients) {
    const IntVar& v = m.variable(id);
    std::int64_t span = checked_mul(b, checked_add(v.upper, -v.lower));
    if (span < 0) {
      r.lower = checked_add(r.lower, span);
    } else {
      r.upper = checked_add(r.upper, span);
    }
  }
  return r;
}

// Integer interval that satisfies an ordering relation, as [lo, hi] on the
// integerized expression value.
std::pair<std::int64_t, std::int64_t> ordering_window(Relation rel) {
  constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  switch (rel) {
    case Relation::kLessThan: return {kMin, -1};
    case Relation::kLessEqual: return {kMin, 0};
    case Relation::kGreaterThan: return {1, kMax};
    case Relation::kGreaterEqual: return {0, kMax};
    default: break;
  }
  throw InvalidArgument("not an ordering relation");
}

std::uint64_t required_order(Relation rel, const ShiftedRange& r,
                             std::int64_t modulus) {
  auto width = static_cast<std::uint64_t>(r.upper - r.lower);
  if (modulus != 0) return width;
  if (rel == Relation::kEquals || rel == Relation::kDoesNotEqual) {
    auto a = static_cast<std::uint64_t>(r.lower < 0 ? -r.lower : r.lower);
    auto b = static_cast<std::uint64_t>(r.upper < 0 ? -r.upper : r.upper);
    return std::max(a, b);
  }
  return width;
}

struct Item {
  LinsatExpr expr;
  std::vector<gf::Residue> values;
  Rational weight;
  std::set<int> groups;
};

}  // namespace

std::vector<ParityTerm> walsh_expansion(const IntExpr& poly) {
  std::map<std::vector<int>, Rational> acc;
  acc[{}] += poly.constant();
  for (const auto& [mono, coef] : poly.terms()) {
    std::vector<int> ids;
    for (const auto& [id, exp] : mono.factors()) {
      auto it = poly.domains().find(id);
      if (it == poly.domains().end() || !it->second.is_binary()) {
        throw InvalidArgument("Walsh expansion needs binary variables");
      }
      ids.push_back(id);
    }
    if (ids.size() > 24) {
      throw InvalidArgument("monomial degree too large for Walsh expansion");
    }
    const std::uint32_t subsets = 1u << ids.size();
    const Rational base = coef / Rational(std::int64_t{1} << ids.size());
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> s;
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (mask >> j & 1) s.push_back(ids[j]);
      }
      acc[s] += (s.size() % 2 == 0) ? base : -base;
    }
  }
  std::vector<ParityTerm> out;
  for (auto& [s, c] : acc) {
    if (s.empty() || c != 0) out.push_back({s, c});
  }
  return out;
}

PolynomialLowering lower_polynomials(const ConstraintModel& model,
                                     const LoweringOptions& options) {
  if (options.degree_threshold < 3) {
    throw InvalidArgument("degree threshold must be at least 3");
  }
  model.validate();
  PolynomialLowering out;
  for (const IntVar& v : model.variables()) {
    out.model.new_var(v.name, v.lower, v.upper);
  }
  if (options.penalty) {
    if (*options.penalty <= 0) throw InvalidArgument("penalty must be > 0");
    out.penalty = *options.penalty;
  } else {
    out.penalty = Rational(floor(score_swing(model)) + 1);
  }

  int next_group = 0;
  for (const IntConstraint& c : model.constraints()) {
    next_group = std::max(next_group, c.group + 1);
  }

  std::map<std::vector<int>, int> memo;
  std::function<int(const std::vector<int>&)> represent =
      [&](const std::vector<int>& ids) -> int {
    if (ids.size() == 1) return ids[0];
    auto it = memo.find(ids);
    if (it != memo.end()) return it->second;
    std::size_t half = (ids.size() + 1) / 2;
    int left = represent({ids.begin(), ids.begin() + half});
    int right = represent({ids.begin() + half, ids.end()});
    IntVar a =
        out.model.new_binary_var("aux" + std::to_string(out.aux.size()));
    out.aux.push_back({a.id, left, right, ids});
    memo.emplace(ids, a.id);
    return a.id;
  };

  auto emit_parity = [&](const IntExpr& poly, ConstraintRole role) {
    int group = next_group++;
    Rational shift{0};
    for (const ParityTerm& t : walsh_expansion(poly)) {
      if (t.support.empty()) {
        shift += t.coefficient;
        continue;
      }
      shift -= abs_value(t.coefficient);
      IntExpr sum;
      for (int id : t.support) sum += var_expr(out.model, id);
      IntConstraint c;
      c.expr = sum - IntExpr(t.coefficient > 0 ? 0 : 1);
      c.relation = Relation::kEquals;
      c.modulus = 2;
      c.weight = 2 * abs_value(t.coefficient);
      c.role = role;
      c.group = group;
      out.model.add_constraint(std::move(c));
      if (role == ConstraintRole::kPenalty) {
        ++out.penalty_constraints;
      } else {
        ++out.parity_constraints;
      }
    }
    out.constant += shift;
  };

  for (const Objective& o : model.objectives()) {
    bool nonlinear = false;
    for (const auto& [mono, coef] : o.expr.terms()) {
      if (!is_linear_single(mono)) {
        require_binary_monomial(model, mono);
        nonlinear = true;
      }
    }
    if (!nonlinear) {
      out.model.add_raw_objective(o);
      continue;
    }
    IntExpr binary_part(o.weight * o.expr.constant());
    IntExpr other_part;
    for (const auto& [mono, coef] : o.expr.terms()) {
      Rational c = o.weight * coef;
      std::vector<int> ids = monomial_ids(mono);
      if (is_linear_single(mono) && !model.variable(ids[0]).is_binary()) {
        other_part += IntExpr(c) * var_expr(out.model, ids[0]);
      } else if (static_cast<int>(ids.size()) >= options.degree_threshold) {
        std::size_t half = (ids.size() + 1) / 2;
        int l = represent({ids.begin(), ids.begin() + half});
        int r = represent({ids.begin() + half, ids.end()});
        binary_part += IntExpr(c) * var_expr(out.model, l) *
                       var_expr(out.model, r);
      } else {
        IntExpr term(c);
        for (int id : ids) term *= var_expr(out.model, id);
        binary_part += term;
      }
    }
    emit_parity(binary_part, ConstraintRole::kObjective);
    if (!other_part.is_constant()) {
      out.model.add_raw_objective({other_part, Rational(1), o.kind});
    }
  }

  for (const IntConstraint& c : model.constraints()) {
    IntExpr expr(c.expr.constant());
    for (const auto& [mono, coef] : c.expr.terms()) {
      if (is_linear_single(mono)) {
        expr += IntExpr(coef) * var_expr(out.model, mono.factors()[0].first);
        continue;
      }
      require_binary_monomial(model, mono);
      expr += IntExpr(coef) * var_expr(out.model, represent(monomial_ids(mono)));
    }
    IntConstraint lowered = c;
    lowered.expr = expr;
    out.model.add_constraint(std::move(lowered));
  }

  // -P (v1 v2 - a)^2 = -P (v1 v2 + a - 2 v1 v2 a) on binary values.
  for (const AuxVariable& a : out.aux) {
    IntExpr v1 = var_expr(out.model, a.left);
    IntExpr v2 = var_expr(out.model, a.right);
    IntExpr av = var_expr(out.model, a.id);
    IntExpr poly = IntExpr(-out.penalty) * (v1 * v2 + av - IntExpr(2) * v1 * v2 * av);
    emit_parity(poly, ConstraintRole::kPenalty);
  }
  return out;
}

LinearObjectiveExpansion lower_linear_objective(const Rational& a,
                                                std::int64_t lower,
                                                std::int64_t upper) {
  if (lower > upper) throw InvalidArgument("empty variable range");
  LinearObjectiveExpansion out;
  const std::int64_t r = upper - lower;
  if (a == 0 || r == 0) return out;
  if (r >= kMaxExplicitSet) {
    throw GuardExceeded("variable range too wide for binary expansion");
  }
  int bits = 0;
  while ((std::int64_t{1} << bits) <= r) ++bits;
  const bool positive = a > 0;
  const Rational mag = abs_value(a);
  for (int j = bits - 1; j >= 0; --j) {
    WeightedSet s;
    for (std::int64_t v = 0; v <= r; ++v) {
      bool set = (v >> j & 1) != 0;
      if (set == positive) s.values.push_back(v + lower);
    }
    s.weight = mag * Rational(std::int64_t{1} << j);
    out.sets.push_back(std::move(s));
  }
  if (!positive) {
    out.constant = -mag * Rational((std::int64_t{1} << bits) - 1);
  }
  return out;
}

PrimePlan plan_prime(const ConstraintModel& model) {
  PrimePlan plan;
  std::uint64_t need = 1;
  for (const IntVar& v : model.variables()) {
    if (!v.is_bounded()) {
      throw InvalidArgument("variable " + v.name +
                            " is unbounded; every variable needs finite "
                            "bounds before prime planning");
    }
    plan.variables.emplace_back(v.lower, v.upper);
    need = std::max(need, static_cast<std::uint64_t>(v.upper - v.lower));
  }
  for (const IntConstraint& c : model.constraints()) {
    IntegerForm f = integerize(c.expr);
    ShiftedRange r = shifted_range(f, model);
    ConstraintRange cr;
    cr.lower = r.lower;
    cr.upper = r.upper;
    cr.scale = f.scale;
    cr.modulus = c.modulus.value_or(0);
    cr.required = required_order(c.relation, r, cr.modulus);
    plan.constraints.push_back(cr);
  }
  auto accepts = [&](std::uint64_t p) {
    for (const auto& [l, u] : plan.variables) {
      if (static_cast<std::uint64_t>(u - l) >= p) return false;
    }
    for (const ConstraintRange& cr : plan.constraints) {
      if (cr.modulus != 0 && static_cast<std::uint64_t>(cr.modulus) == p) {
        continue;
      }
      if (cr.required >= p) return false;
    }
    return true;
  };
  std::uint64_t p = 2;
  while (!accepts(p)) {
    p = gf::next_prime(p + 1);
    if (p > gf::kMaxOrder) {
      throw GuardExceeded("no prime field below 2^32 encodes the model");
    }
  }
  (void)need;
  plan.p = p;
  return plan;
}

ModularLowering lower_to_modular(const ConstraintModel& model,
                                 const PrimePlan& plan) {
  const gf::FieldOrder field(plan.p);
  const auto p = static_cast<std::int64_t>(plan.p);
  ModularLowering out{LinsatInstance(field), {}, 0, 0, 0, 0, 0, 0, 0};
  for (const IntVar& v : model.variables()) {
    if (!v.is_bounded()) {
      throw InvalidArgument("variable " + v.name + " is unbounded");
    }
    if (v.upper - v.lower >= p) {
      throw InvalidArgument("prime " + std::to_string(p) +
                            " is too small for the range of " + v.name);
    }
    out.instance.add_variable(v.name);
  }

  Rational constant{0};
  std::vector<Item> items;

  // Objectives: a * x = a * (x - l) + a * l.
  std::map<int, Rational> linear;
  for (const Objective& o : model.objectives()) {
    constant += o.weight * o.expr.constant();
    for (const auto& [mono, coef] : o.expr.terms()) {
      if (!is_linear_single(mono)) {
        throw InvalidArgument("objective is not linear: " + o.expr.to_string());
      }
      linear[mono.factors()[0].first] += o.weight * coef;
    }
  }
  for (const auto& [id, a] : linear) {
    if (a == 0) continue;
    const IntVar& v = model.variable(id);
    constant += a * Rational(v.lower);
    LinearObjectiveExpansion e = lower_linear_objective(a, v.lower, v.upper);
    constant += e.constant;
    if (!e.sets.empty()) {
      ++out.expanded_variables;
      if (!v.is_binary()) ++out.nonbinary_expanded;
    }
    for (const WeightedSet& s : e.sets) {
      Item it{{{id, 1}}, {}, s.weight, {}};
      for (std::int64_t x : s.values) {
        it.values.push_back(static_cast<gf::Residue>(x - v.lower));
      }
      items.push_back(std::move(it));
      ++out.objective_sets;
    }
  }

  // Constraints over shifted variables y = x - l.
  for (std::size_t ci = 0; ci < model.constraints().size(); ++ci) {
    const IntConstraint& c = model.constraints()[ci];
    IntegerForm f = integerize(c.expr);
    ShiftedRange r = shifted_range(f, model);
    const std::int64_t modulus = c.modulus.value_or(0);
    if (required_order(c.relation, r, modulus) >= plan.p &&
        !(modulus != 0 && modulus == p)) {
      throw InvalidArgument("prime " + std::to_string(p) +
                            " is too small for constraint " +
                            std::to_string(ci));
    }
    // Allowed values of the integer expression, as residues of
    // (value - constant) mod p.
    std::vector<gf::Residue> residues;
    bool always = false;
    bool never = false;
    auto shifted = [&](std::int64_t value) {
      return static_cast<gf::Residue>(floor_mod(value - r.constant, p));
    };
    if (modulus != 0 && modulus == p) {
      gf::Residue zero = shifted(0);
      for (std::int64_t v = 0; v < p; ++v) {
        bool is_zero = static_cast<gf::Residue>(v) == zero;
        if (is_zero == (c.relation == Relation::kEquals)) {
          residues.push_back(static_cast<gf::Residue>(v));
        }
      }
    } else if (modulus != 0) {
      std::int64_t count = 0;
      for (std::int64_t v = r.lower; v <= r.upper; ++v) {
        bool zero = floor_mod(v, modulus) == 0;
        if (zero == (c.relation == Relation::kEquals)) {
          residues.push_back(shifted(v));
          ++count;
        }
      }
      never = count == 0;
      always = count == r.upper - r.lower + 1;
    } else if (c.relation == Relation::kEquals) {
      never = r.lower > 0 || r.upper < 0;
      always = r.lower == 0 && r.upper == 0;
      if (!never) residues.push_back(shifted(0));
    } else if (c.relation == Relation::kDoesNotEqual) {
      never = r.lower == 0 && r.upper == 0;
      always = r.lower > 0 || r.upper < 0;
      gf::Residue zero = shifted(0);
      for (std::int64_t v = 0; v < p && !never && !always; ++v) {
        if (static_cast<gf::Residue>(v) != zero) {
          residues.push_back(static_cast<gf::Residue>(v));
        }
      }
    } else {
      auto [wlo, whi] = ordering_window(c.relation);
      std::int64_t lo = std::max(wlo, r.lower);
      std::int64_t hi = std::min(whi, r.upper);
      never = lo > hi;
      always = lo == r.lower && hi == r.upper;
      if (!never && !always) {
        if (hi - lo >= kMaxExplicitSet) {
          throw GuardExceeded("ordering constraint set too large");
        }
        for (std::int64_t v = lo; v <= hi; ++v) residues.push_back(shifted(v));
      }
    }

    LinsatExpr expr;
    for (const auto& [id, b] : f.coefficients) {
      gf::Residue rb = field.reduce(b);
      if (rb != 0) expr[id] = field.add(expr[id], rb);
      if (expr.count(id) && expr[id] == 0) expr.erase(id);
    }
    if (!never && !always) {
      std::sort(residues.begin(), residues.end());
      residues.erase(std::unique(residues.begin(), residues.end()),
                     residues.end());
      if (expr.empty()) {
        bool hit = std::binary_search(residues.begin(), residues.end(), 0u);
        always = hit;
        never = !hit;
      } else if (residues.size() == plan.p) {
        always = true;
      } else if (residues.empty()) {
        never = true;
      }
    }
    if (always) {
      constant += c.weight;
      ++out.folded_constraints;
      continue;
    }
    if (never) {
      ++out.dropped_constraints;
      continue;
    }
    Item it{std::move(expr), std::move(residues), c.weight, {}};
    if (c.group >= 0) it.groups.insert(c.group);
    items.push_back(std::move(it));
  }

  // Range rows outweigh everything else combined.
  Rational others{0};
  for (const Item& it : items) others += it.weight;
  const Rational range_weight(floor(others) + 1);
  std::size_t ranges = 0;
  for (const IntVar& v : model.variables()) {
    std::int64_t width = v.upper - v.lower;
    if (width + 1 >= p) continue;
    Item it{{{v.id, 1}}, {}, range_weight, {}};
    for (std::int64_t y = 0; y <= width; ++y) {
      it.values.push_back(static_cast<gf::Residue>(y));
    }
    items.push_back(std::move(it));
    ++ranges;
  }
  out.range_constraints = ranges;

  std::int64_t scale = 1;
  for (const Item& it : items) scale = lcm(scale, it.weight.denominator());

  // Merge rows equal up to scaling, in first-insertion order.
  struct Stage {
    LinsatExpr expr;
    std::map<gf::Residue, std::int64_t> rhs;
    std::set<int> groups;
  };
  std::vector<Stage> stages;
  std::map<LinsatExpr, std::size_t> where;
  for (const Item& it : items) {
    CanonicalExpr ce = canonical_expression(it.expr, field);
    auto [pos, inserted] = where.emplace(ce.expr, stages.size());
    if (inserted) stages.push_back({ce.expr, {}, {}});
    Stage& s = stages[pos->second];
    Rational w = it.weight * Rational(scale);
    for (gf::Residue v : it.values) {
      s.rhs[field.mul(v, ce.factor)] =
          checked_add(s.rhs[field.mul(v, ce.factor)], w.numerator());
    }
    s.groups.insert(it.groups.begin(), it.groups.end());
  }
  out.staged_rows = items.size();

  std::int64_t extracted = 0;
  for (Stage& s : stages) {
    if (s.rhs.size() == plan.p) {
      std::int64_t low = std::numeric_limits<std::int64_t>::max();
      for (const auto& [v, w] : s.rhs) low = std::min(low, w);
      extracted += low;
      for (auto it = s.rhs.begin(); it != s.rhs.end();) {
        it->second -= low;
        it = it->second == 0 ? s.rhs.erase(it) : std::next(it);
      }
    }
    if (s.rhs.empty()) continue;
    out.instance.add_constraint(s.expr, {s.rhs.begin(), s.rhs.end()},
                                s.groups);
  }

  TransformCertificate& cert = out.certificate;
  cert.p = plan.p;
  cert.scale = Rational(scale);
  cert.offset = -Rational(scale) * constant +
                Rational(scale) * range_weight *
                    Rational(static_cast<std::int64_t>(ranges)) -
                Rational(extracted);
  cert.range_weight = (range_weight * Rational(scale)).numerator();
  for (const IntVar& v : model.variables()) {
    cert.variables.push_back({v.id, v.id, v.name, v.lower, v.upper});
  }
  return out;
}

gf::Vector encode_assignment(const TransformCertificate& cert,
                             std::span<const std::int64_t> source) {
  const gf::FieldOrder field(cert.p);
  gf::Vector y(cert.variables.size(), 0);
  std::map<int, std::int64_t> value;
  for (const VariableMapEntry& e : cert.variables) {
    if (e.source < 0) continue;
    if (static_cast<std::size_t>(e.source) >= source.size()) {
      throw InvalidArgument("source assignment is too short");
    }
    std::int64_t x = source[static_cast<std::size_t>(e.source)];
    value[e.target] = x;
    y[static_cast<std::size_t>(e.target)] = field.reduce(x - e.lower);
  }
  for (const AuxVariable& a : cert.aux) {
    std::int64_t prod = 1;
    for (int s : a.support) prod *= source[static_cast<std::size_t>(s)];
    y[static_cast<std::size_t>(a.id)] = field.reduce(prod);
  }
  return y;
}

std::vector<std::int64_t> decode_assignment(const TransformCertificate& cert,
                                            std::span<const gf::Residue> y) {
  std::size_t n = 0;
  for (const VariableMapEntry& e : cert.variables) {
    if (e.source >= 0) n = std::max(n, static_cast<std::size_t>(e.source) + 1);
  }
  std::vector<std::int64_t> x(n, 0);
  for (const VariableMapEntry& e : cert.variables) {
    if (e.source < 0) continue;
    if (static_cast<std::size_t>(e.target) >= y.size()) {
      throw InvalidArgument("target assignment is too short");
    }
    x[static_cast<std::size_t>(e.source)] =
        e.lower + static_cast<std::int64_t>(y[static_cast<std::size_t>(e.target)]);
  }
  return x;
}

RoundResult round_weights(const LinsatInstance& inst, std::int64_t d) {
  if (d < 1) throw InvalidArgument("rounding multiple must be >= 1");
  RoundResult out{LinsatInstance(inst.order(), inst.merge_mode()), 0, 0};
  for (const LinsatVar& v : inst.variables()) out.instance.add_variable(v.name);
  for (const LinsatConstraint& c : inst.constraints()) {
    LinsatRhs rhs;
    for (const auto& [v, w] : c.rhs) {
      std::int64_t q = w / d;
      std::int64_t rem = w % d;
      std::int64_t rounded = (2 * rem >= d ? q + 1 : q) * d;
      rounded = std::max(rounded, d);
      out.max_relative_error =
          std::max(out.max_relative_error,
                   std::abs(static_cast<double>(rounded - w)) /
                       static_cast<double>(w));
      rhs[v] = rounded;
    }
    if (covers_field_uniformly(rhs, inst.q())) {
      out.dropped_weight += rhs.begin()->second;
      continue;
    }
    out.instance.add_constraint(c.expr, {rhs.begin(), rhs.end()}, c.groups);
  }
  return out;
}

EqualizeResult equalize_set_sizes(const LinsatInstance& inst,
                                  const EqualizeOptions& options) {
  if (!inst.is_unweighted()) {
    throw InvalidArgument("set-size equalization needs an unweighted instance");
  }
  const std::uint64_t q = inst.q();
  const gf::FieldOrder& field = inst.order();
  EqualizeResult out{LinsatInstance(field, MergeMode::kNone), 0, 0, 0, 0};
  for (const LinsatVar& v : inst.variables()) out.instance.add_variable(v.name);
  if (inst.num_constraints() == 0) return out;

  std::size_t smallest = std::numeric_limits<std::size_t>::max();
  std::size_t largest = 0;
  bool duplicates = false;
  {
    std::set<LinsatExpr> seen;
    for (const LinsatConstraint& c : inst.constraints()) {
      smallest = std::min(smallest, c.rhs.size());
      largest = std::max(largest, c.rhs.size());
      duplicates |= !seen.insert(canonical_expression(c.expr, field).expr).second;
    }
  }
  // Values of b.y that no in-range y reaches, per row.
  std::vector<std::vector<gf::Residue>> spare(inst.num_constraints());
  if (options.pad) {
    for (std::size_t i = 0; i < inst.num_constraints(); ++i) {
      const LinsatConstraint& c = inst.constraints()[i];
      std::uint64_t work = 0;
      bool bounded = true;
      for (const auto& [id, b] : c.expr) {
        if (static_cast<std::size_t>(id) >= options.widths.size()) {
          bounded = false;
          break;
        }
        work += q * static_cast<std::uint64_t>(
                        options.widths[static_cast<std::size_t>(id)] + 1);
      }
      if (!bounded || work > options.attainable_limit) continue;
      std::vector<char> reach(q, 0);
      reach[0] = 1;
      for (const auto& [id, b] : c.expr) {
        std::vector<char> next(q, 0);
        std::int64_t w = options.widths[static_cast<std::size_t>(id)];
        for (std::uint64_t r = 0; r < q; ++r) {
          if (!reach[r]) continue;
          gf::Residue acc = static_cast<gf::Residue>(r);
          for (std::int64_t t = 0; t <= w; ++t) {
            next[acc] = 1;
            acc = field.add(acc, b);
          }
        }
        reach = std::move(next);
      }
      for (std::uint64_t v = 0; v < q; ++v) {
        if (!reach[v] && !c.rhs.contains(static_cast<gf::Residue>(v))) {
          spare[i].push_back(static_cast<gf::Residue>(v));
        }
      }
    }
  }

  // Repair pins are singletons, so any split or repair forces d = 1.
  std::size_t d = 1;
  if (!duplicates && smallest == largest) {
    d = largest;
  } else if (!duplicates && options.pad) {
    bool ok = true;
    for (std::size_t i = 0; i < inst.num_constraints() && ok; ++i) {
      std::size_t s = inst.constraints()[i].rhs.size();
      ok = largest - s <= spare[i].size() && (largest == s || largest < q);
    }
    if (ok) d = largest;
  }
  out.set_size = d;

  for (std::size_t i = 0; i < inst.num_constraints(); ++i) {
    const LinsatConstraint& c = inst.constraints()[i];
    std::vector<gf::Residue> values;
    for (const auto& [v, w] : c.rhs) values.push_back(v);
    std::size_t target = (values.size() + d - 1) / d * d;
    if (target > values.size()) {
      values.insert(values.end(), spare[i].begin(),
                    spare[i].begin() +
                        static_cast<std::ptrdiff_t>(target - values.size()));
      std::sort(values.begin(), values.end());
      ++out.padded_rows;
    }
    if (values.size() > d) ++out.split_rows;
    for (std::size_t start = 0; start < values.size(); start += d) {
      std::vector<std::pair<gf::Residue, std::int64_t>> members;
      for (std::size_t j = start; j < start + d; ++j) {
        members.emplace_back(values[j], 1);
      }
      out.instance.add_constraint(c.expr, members, c.groups);
    }
  }
  out.offset = repair_duplicates(out.instance).offset;
  return out;
}

PipelineResult full_pipeline(const ConstraintModel& model,
                             const PipelineOptions& options) {
  PolynomialLowering pl = lower_polynomials(model, options.lowering);
  PrimePlan plan = plan_prime(pl.model);
  ModularLowering ml = lower_to_modular(pl.model, plan);

  TransformCertificate cert = ml.certificate;
  cert.offset -= cert.scale * pl.constant;
  cert.aux = pl.aux;
  const auto n_source = static_cast<int>(model.variables().size());
  for (VariableMapEntry& e : cert.variables) {
    if (e.target >= n_source) e.source = -1;
  }
  cert.penalty_weight =
      pl.aux.empty() ? 0 : (pl.penalty * cert.scale).numerator();

  UnweightedView uv = to_unweighted(ml.instance);
  const std::size_t copies = uv.instance.num_constraints();
  RepairResult repair = repair_duplicates(uv.instance);
  const std::size_t vars_before_equalize = uv.instance.num_variables();
  EqualizeOptions eo;
  eo.pad = options.pad_sets;
  for (const IntVar& v : pl.model.variables()) {
    eo.widths.push_back(v.upper - v.lower);
  }
  EqualizeResult eq = equalize_set_sizes(uv.instance, eo);
  cert.unweighted_gcd = uv.gcd;
  cert.unweighted_offset = repair.offset + eq.offset;

  TransformDiagnostics diag;
  auto edge = [&](std::string name, std::vector<std::string> cats,
                  std::map<std::string, std::int64_t> counts) {
    diag.edges.push_back({std::move(name), std::move(cats), std::move(counts)});
  };
  auto n = [](std::size_t v) { return static_cast<std::int64_t>(v); };

  edge("degree_reduction",
       pl.aux.empty() ? std::vector<std::string>{"favourable"}
                      : std::vector<std::string>{"aux-adding",
                                                 "constraint-increasing"},
       {{"aux_variables", n(pl.aux.size())},
        {"penalty_constraints", n(pl.penalty_constraints)}});

  std::map<int, std::size_t> group_rows;
  for (const IntConstraint& c : pl.model.constraints()) {
    if (c.role == ConstraintRole::kObjective && c.group >= 0) {
      ++group_rows[c.group];
    }
  }
  std::size_t dependent_groups = 0;
  for (const auto& [gid, rows] : group_rows) {
    if (rows >= 3) ++dependent_groups;
  }
  std::vector<std::string> parity_cats;
  if (pl.parity_constraints > 0) parity_cats.push_back("constraint-increasing");
  if (dependent_groups > 0) parity_cats.push_back("dependency-creating");
  if (parity_cats.empty()) parity_cats.push_back("favourable");
  edge("pseudo_boolean_to_parity", parity_cats,
       {{"parity_constraints", n(pl.parity_constraints)},
        {"dependent_groups", n(dependent_groups)}});

  edge("linear_objective_expansion",
       ml.nonbinary_expanded > 0
           ? std::vector<std::string>{"constraint-increasing"}
           : std::vector<std::string>{"favourable"},
       {{"expanded_variables", n(ml.expanded_variables)},
        {"sets", n(ml.objective_sets)}});
  edge("modular_encoding", {"favourable"},
       {{"p", static_cast<std::int64_t>(plan.p)},
        {"folded_constraints", n(ml.folded_constraints)},
        {"dropped_constraints", n(ml.dropped_constraints)}});
  edge("range_constraints",
       ml.range_constraints > 0
           ? std::vector<std::string>{"constraint-increasing"}
           : std::vector<std::string>{"favourable"},
       {{"range_constraints", n(ml.range_constraints)}});
  edge("constraint_merging", {"favourable"},
       {{"rows_before", n(ml.staged_rows)},
        {"rows_after", n(ml.instance.num_constraints())}});
  std::vector<std::string> dup_cats;
  if (copies > ml.instance.num_constraints()) {
    dup_cats = {"constraint-increasing", "dependency-creating"};
  } else {
    dup_cats = {"favourable"};
  }
  edge("weight_duplication", dup_cats,
       {{"gcd", uv.gcd},
        {"rows_before", n(ml.instance.num_constraints())},
        {"rows_after", n(copies)}});
  edge("duplicate_repair",
       repair.repaired_rows > 0
           ? std::vector<std::string>{"aux-adding", "constraint-increasing"}
           : std::vector<std::string>{"favourable"},
       {{"repaired_rows", n(repair.repaired_rows)},
        {"offset", repair.offset}});
  std::vector<std::string> eq_cats;
  if (eq.split_rows > 0) {
    eq_cats = {"constraint-increasing", "dependency-creating"};
    if (eq.instance.num_variables() > vars_before_equalize) {
      eq_cats.push_back("aux-adding");
    }
  } else {
    eq_cats = {"favourable"};
  }
  edge("set_size_equalization", eq_cats,
       {{"set_size", n(eq.set_size)},
        {"split_rows", n(eq.split_rows)},
        {"padded_rows", n(eq.padded_rows)},
        {"offset", eq.offset}});

  diag.dependencies = find_dependent_row_sets(
      ml.instance, options.dependency_cap, options.max_dependency_reports);
  diag.set_size = eq.set_size;

  return {std::move(ml.instance), std::move(eq.instance), std::move(cert),
          std::move(diag)};
}

}  // namespace maxlin
