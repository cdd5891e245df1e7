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

#include "maxlin/linsat.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "maxlin/error.hpp"

namespace maxlin {

CanonicalExpr canonical_expression(const LinsatExpr& expr,
                                   const gf::FieldOrder& order) {
  if (expr.empty()) throw InvalidArgument("zero linear expression");
  gf::Residue factor = order.inv(expr.begin()->second);
  CanonicalExpr out;
  out.factor = factor;
  for (const auto& [id, c] : expr) out.expr.emplace(id, order.mul(c, factor));
  return out;
}

bool covers_field_uniformly(const LinsatRhs& rhs, std::uint64_t q) {
  if (rhs.size() != q) return false;
  const std::int64_t w = rhs.begin()->second;
  return std::all_of(rhs.begin(), rhs.end(),
                     [w](const auto& kv) { return kv.second == w; });
}

LinsatInstance::LinsatInstance(gf::FieldOrder order, MergeMode mode)
    : order_(order), mode_(mode) {}

int LinsatInstance::add_variable(std::string name) {
  int id = static_cast<int>(variables_.size());
  if (name.empty()) name = "x" + std::to_string(id);
  variables_.push_back({id, std::move(name)});
  return id;
}

std::size_t LinsatInstance::add_constraint(
    const LinsatExpr& raw,
    const std::vector<std::pair<gf::Residue, std::int64_t>>& members,
    const std::set<int>& groups) {
  LinsatExpr expr;
  for (const auto& [id, c] : raw) {
    if (id < 0 || static_cast<std::size_t>(id) >= variables_.size()) {
      throw InvalidArgument("constraint references unknown variable " +
                            std::to_string(id));
    }
    gf::Residue r = order_.reduce(static_cast<std::int64_t>(c));
    if (r != 0) expr.emplace(id, r);
  }
  if (expr.empty()) throw InvalidArgument("zero linear expression");
  if (members.empty()) throw InvalidArgument("empty right-hand side");

  gf::Residue factor = 1;
  if (mode_ == MergeMode::kScaled) {
    CanonicalExpr ce = canonical_expression(expr, order_);
    expr = std::move(ce.expr);
    factor = ce.factor;
  }
  LinsatRhs rhs;
  for (const auto& [v, w] : members) {
    if (w <= 0) throw InvalidArgument("right-hand side weight must be > 0");
    gf::Residue val = order_.mul(order_.reduce(static_cast<std::int64_t>(v)),
                                 factor);
    rhs[val] += w;
  }

  if (mode_ != MergeMode::kNone) {
    auto it = index_.find(expr);
    if (it != index_.end()) {
      LinsatConstraint& c = constraints_[it->second];
      LinsatRhs merged = c.rhs;
      for (const auto& [v, w] : rhs) merged[v] += w;
      if (covers_field_uniformly(merged, q())) {
        throw InvalidArgument(
            "merged right-hand side covers the whole field uniformly");
      }
      c.rhs = std::move(merged);
      c.groups.insert(groups.begin(), groups.end());
      if (!groups.empty()) {
        next_group_ = std::max(next_group_, *groups.rbegin() + 1);
      }
      return it->second;
    }
  }
  if (covers_field_uniformly(rhs, q())) {
    throw InvalidArgument("right-hand side covers the whole field uniformly");
  }
  if (!groups.empty()) next_group_ = std::max(next_group_, *groups.rbegin() + 1);
  if (mode_ != MergeMode::kNone) index_.emplace(expr, constraints_.size());
  constraints_.push_back({std::move(expr), std::move(rhs), groups});
  return constraints_.size() - 1;
}

void LinsatInstance::replace_expression(std::size_t i,
                                        const LinsatExpr& raw) {
  if (i >= constraints_.size()) {
    throw InvalidArgument("constraint index " + std::to_string(i) +
                          " out of range");
  }
  LinsatExpr expr;
  for (const auto& [id, c] : raw) {
    if (id < 0 || static_cast<std::size_t>(id) >= variables_.size()) {
      throw InvalidArgument("constraint references unknown variable " +
                            std::to_string(id));
    }
    gf::Residue r = order_.reduce(static_cast<std::int64_t>(c));
    if (r != 0) expr.emplace(id, r);
  }
  if (expr.empty()) throw InvalidArgument("zero linear expression");
  LinsatConstraint& c = constraints_[i];
  gf::Residue factor = 1;
  if (mode_ == MergeMode::kScaled) {
    CanonicalExpr ce = canonical_expression(expr, order_);
    expr = std::move(ce.expr);
    factor = ce.factor;
  }
  if (mode_ != MergeMode::kNone) {
    auto hit = index_.find(expr);
    if (hit != index_.end() && hit->second != i) {
      throw InvalidArgument("replacement expression collides with row " +
                            std::to_string(hit->second));
    }
    index_.erase(c.expr);
    index_.emplace(expr, i);
  }
  if (factor != 1) {
    LinsatRhs scaled;
    for (const auto& [v, w] : c.rhs) scaled[order_.mul(v, factor)] = w;
    c.rhs = std::move(scaled);
  }
  c.expr = std::move(expr);
}

int LinsatInstance::new_group() { return next_group_++; }

gf::Residue LinsatInstance::row_value(std::size_t i,
                                      std::span<const gf::Residue> x) const {
  gf::Residue acc = 0;
  for (const auto& [id, c] : constraints_[i].expr) {
    acc = order_.add(acc, order_.mul(c, x[static_cast<std::size_t>(id)]));
  }
  return acc;
}

std::int64_t LinsatInstance::evaluate(std::span<const gf::Residue> x) const {
  if (x.size() != variables_.size()) {
    throw InvalidArgument("assignment has " + std::to_string(x.size()) +
                          " entries for " + std::to_string(variables_.size()) +
                          " variables");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const LinsatRhs& rhs = constraints_[i].rhs;
    auto it = rhs.find(row_value(i, x));
    if (it != rhs.end()) total += it->second;
  }
  return total;
}

gf::FieldMatrix LinsatInstance::matrix() const {
  gf::FieldMatrix b(constraints_.size(), variables_.size(), order_);
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    for (const auto& [id, c] : constraints_[i].expr) {
      b.set(i, static_cast<std::size_t>(id), c);
    }
  }
  return b;
}

bool LinsatInstance::is_unweighted() const {
  for (const LinsatConstraint& c : constraints_) {
    for (const auto& [v, w] : c.rhs) {
      if (w != 1) return false;
    }
  }
  return true;
}

std::int64_t LinsatInstance::total_weight() const {
  std::int64_t total = 0;
  for (const LinsatConstraint& c : constraints_) {
    std::int64_t best = 0;
    for (const auto& [v, w] : c.rhs) best = std::max(best, w);
    total += best;
  }
  return total;
}

std::int64_t LinsatInstance::weight_gcd() const {
  std::int64_t g = 0;
  for (const LinsatConstraint& c : constraints_) {
    for (const auto& [v, w] : c.rhs) g = std::gcd(g, w);
  }
  return g;
}

UnweightedView to_unweighted(const LinsatInstance& inst) {
  UnweightedView out{LinsatInstance(inst.order(), MergeMode::kNone), {}, 1};
  for (const LinsatVar& v : inst.variables()) {
    out.instance.add_variable(v.name);
  }
  std::int64_t g = inst.weight_gcd();
  out.gcd = g == 0 ? 1 : g;
  for (std::size_t i = 0; i < inst.num_constraints(); ++i) {
    const LinsatConstraint& c = inst.constraints()[i];
    std::map<std::int64_t, std::vector<std::pair<gf::Residue, std::int64_t>>>
        by_weight;
    for (const auto& [v, w] : c.rhs) by_weight[w / out.gcd].push_back({v, 1});
    for (const auto& [w, members] : by_weight) {
      for (std::int64_t copy = 0; copy < w; ++copy) {
        out.instance.add_constraint(c.expr, members, c.groups);
        out.source_row.push_back(i);
      }
    }
  }
  return out;
}

std::uint64_t saturating_power(std::uint64_t q, std::size_t n) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (q != 0 && out > std::numeric_limits<std::uint64_t>::max() / q) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= q;
  }
  return out;
}

void for_each_assignment(
    std::uint64_t q, std::size_t n, std::uint64_t limit,
    const std::function<void(std::span<const gf::Residue>)>& fn) {
  if (saturating_power(q, n) > limit) {
    throw GuardExceeded("assignment space q^n = " + std::to_string(q) + "^" +
                        std::to_string(n) + " exceeds limit " +
                        std::to_string(limit));
  }
  std::vector<gf::Residue> x(n, 0);
  while (true) {
    fn(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] + 1 < q) {
        ++x[i];
        break;
      }
      x[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace maxlin
