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

#include "maxlin/gadgets.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "maxlin/error.hpp"

namespace maxlin {
namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// Canonical coefficient vectors (first nonzero entry 1) in lexicographic
// order.
std::vector<std::vector<gf::Residue>> canonical_rows(std::uint64_t q,
                                                     int slots) {
  std::vector<std::vector<gf::Residue>> out;
  for_each_assignment(q, static_cast<std::size_t>(slots),
                      std::numeric_limits<std::uint64_t>::max(),
                      [&](std::span<const gf::Residue> v) {
                        auto first = std::find_if(
                            v.begin(), v.end(),
                            [](gf::Residue r) { return r != 0; });
                        if (first != v.end() && *first == 1) {
                          out.emplace_back(v.begin(), v.end());
                        }
                      });
  return out;
}

// Nonempty proper subsets of F_q as sorted vectors, in lexicographic order.
std::vector<std::vector<gf::Residue>> member_sets(std::uint64_t q) {
  if (q > 16) {
    throw GuardExceeded("gadget synthesis supports q <= 16");
  }
  std::vector<std::vector<gf::Residue>> out;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << q); ++mask) {
    std::vector<gf::Residue> s;
    for (std::uint64_t v = 0; v < q; ++v) {
      if (mask >> v & 1) s.push_back(static_cast<gf::Residue>(v));
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_string(GadgetKind k) {
  return k == GadgetKind::kExact ? "exact" : "approximate";
}

GadgetKind parse_gadget_kind(std::string_view name) {
  if (name == "exact") return GadgetKind::kExact;
  if (name == "approximate") return GadgetKind::kApproximate;
  throw InvalidArgument("unknown gadget kind '" + std::string(name) + "'");
}

TruthTable TruthTable::parse(std::string_view bits) {
  TruthTable t;
  std::size_t size = bits.size();
  if (size == 0 || (size & (size - 1)) != 0 || size > (1u << 16)) {
    throw InvalidArgument("truth table length must be a power of two, got " +
                          std::to_string(size));
  }
  while ((std::size_t{1} << t.arity) < size) ++t.arity;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw InvalidArgument("truth table may contain only '0' and '1'");
    }
    t.rows.push_back(c == '1');
  }
  return t;
}

std::string TruthTable::to_string() const {
  std::string s;
  for (bool b : rows) s.push_back(b ? '1' : '0');
  return s;
}

GadgetProfile profile_gadget(const gf::FieldOrder& order, int arity, int aux,
                             const std::vector<GadgetConstraint>& constraints,
                             const TruthTable& table, GadgetKind kind) {
  if (table.arity != arity) {
    throw InvalidArgument("truth table arity does not match gadget arity");
  }
  const auto slots = static_cast<std::size_t>(arity + aux);
  for (const GadgetConstraint& c : constraints) {
    if (c.coefficients.size() != slots) {
      throw InvalidArgument("gadget row has wrong number of coefficients");
    }
  }
  GadgetProfile p;
  const std::size_t rows = std::size_t{1} << arity;
  p.row_best.assign(rows, std::numeric_limits<std::int64_t>::min());
  std::vector<gf::Residue> x(slots, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (int j = 0; j < arity; ++j) {
      x[static_cast<std::size_t>(j)] =
          static_cast<gf::Residue>(r >> (arity - 1 - j) & 1);
    }
    for_each_assignment(
        order.value(), static_cast<std::size_t>(aux),
        std::numeric_limits<std::uint64_t>::max(),
        [&](std::span<const gf::Residue> y) {
          std::copy(y.begin(), y.end(), x.begin() + arity);
          std::int64_t total = 0;
          for (const GadgetConstraint& c : constraints) {
            gf::Residue v = 0;
            for (std::size_t s = 0; s < slots; ++s) {
              v = order.add(v, order.mul(c.coefficients[s], x[s]));
            }
            if (std::binary_search(c.members.begin(), c.members.end(), v)) {
              total += c.weight;
            }
          }
          p.row_best[r] = std::max(p.row_best[r], total);
        });
  }

  bool any_true = false;
  bool any_false = false;
  bool yes_constant = true;
  bool no_constant = true;
  std::int64_t yes = 0;
  std::int64_t no_max = std::numeric_limits<std::int64_t>::min();
  std::int64_t no_first = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (table.value(r)) {
      if (any_true && p.row_best[r] != yes) yes_constant = false;
      if (!any_true) yes = p.row_best[r];
      any_true = true;
    } else {
      if (any_false && p.row_best[r] != no_first) no_constant = false;
      if (!any_false) no_first = p.row_best[r];
      no_max = std::max(no_max, p.row_best[r]);
      any_false = true;
    }
  }
  if (!any_true || !any_false || !yes_constant) return p;
  p.s_yes = yes;
  p.s_no = no_max;
  p.valid = no_max < yes &&
            (kind == GadgetKind::kApproximate || no_constant);
  return p;
}

void verify_gadget(const Gadget& g) {
  GadgetProfile p =
      profile_gadget(g.order, g.arity, g.aux, g.constraints, g.table, g.kind);
  if (!p.valid || p.s_yes != g.s_yes || p.s_no != g.s_no) {
    throw InvalidArgument("gadget " + g.name +
                          " does not meet its declared profile");
  }
}

std::vector<std::size_t> instantiate(const Gadget& g, LinsatInstance& inst,
                                     const std::vector<int>& inputs,
                                     std::int64_t scale) {
  if (static_cast<int>(inputs.size()) != g.arity) {
    throw InvalidArgument("gadget " + g.name + " expects " +
                          std::to_string(g.arity) + " inputs");
  }
  if (!(inst.order() == g.order)) {
    throw InvalidArgument("gadget field order differs from the instance");
  }
  if (scale < 1) throw InvalidArgument("gadget weight scale must be >= 1");
  for (int id : inputs) {
    if (id < 0 || static_cast<std::size_t>(id) >= inst.num_variables()) {
      throw InvalidArgument("gadget input " + std::to_string(id) +
                            " is not a variable of the instance");
    }
  }
  std::vector<int> slots = inputs;
  for (int j = 0; j < g.aux; ++j) {
    slots.push_back(inst.add_variable(g.name + "_aux" + std::to_string(j) +
                                      "_" + std::to_string(inst.num_variables())));
  }
  int group = inst.new_group();
  std::vector<std::size_t> rows;
  for (const GadgetConstraint& c : g.constraints) {
    LinsatExpr expr;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (c.coefficients[s] == 0) continue;
      gf::Residue& e = expr[slots[s]];
      e = inst.order().add(e, c.coefficients[s]);
      if (e == 0) expr.erase(slots[s]);
    }
    std::vector<std::pair<gf::Residue, std::int64_t>> members;
    for (gf::Residue v : c.members) members.emplace_back(v, c.weight * scale);
    rows.push_back(inst.add_constraint(expr, members, {group}));
  }
  return rows;
}

Gadget not_gadget() {
  Gadget g;
  g.name = "not";
  g.arity = 1;
  g.constraints = {{{1}, {0}, 1}};
  g.s_yes = 1;
  g.s_no = 0;
  g.table = TruthTable::parse("10");
  return g;
}

Gadget and_gadget() {
  Gadget g;
  g.name = "and";
  g.arity = 2;
  g.constraints = {{{1, 0}, {1}, 1}, {{0, 1}, {1}, 1}, {{1, 1}, {0}, 1}};
  g.s_yes = 3;
  g.s_no = 1;
  g.table = TruthTable::parse("0001");
  return g;
}

Gadget or_gadget(int n) {
  if (n < 1 || n > 12) throw InvalidArgument("or gadget arity must be 1..12");
  Gadget g;
  g.name = "or" + std::to_string(n);
  g.arity = n;
  for (std::uint32_t b = 1; b < (1u << n); ++b) {
    GadgetConstraint c;
    for (int j = 0; j < n; ++j) c.coefficients.push_back(b >> (n - 1 - j) & 1);
    c.members = {1};
    g.constraints.push_back(std::move(c));
  }
  g.s_yes = std::int64_t{1} << (n - 1);
  g.s_no = 0;
  std::string bits(std::size_t{1} << n, '1');
  bits[0] = '0';
  g.table = TruthTable::parse(bits);
  return g;
}

Gadget xor_gadget() {
  Gadget g;
  g.name = "xor";
  g.arity = 2;
  g.constraints = {{{1, 1}, {1}, 1}};
  g.s_yes = 1;
  g.s_no = 0;
  g.table = TruthTable::parse("0110");
  return g;
}

const Gadget& majority3_gadget() {
  static const Gadget g = [] {
    SynthesisOptions opt;
    opt.max_constraints = 4;
    opt.kind = GadgetKind::kApproximate;
    std::optional<Gadget> found = synthesize_gadget(
        TruthTable::parse("00010111"), gf::FieldOrder(2), opt);
    if (!found) throw Error("majority-3 synthesis found no gadget");
    found->name = "majority3";
    return *found;
  }();
  return g;
}

std::optional<Gadget> synthesize_gadget(const TruthTable& table,
                                        const gf::FieldOrder& order,
                                        const SynthesisOptions& options) {
  if (options.max_constraints < 1) {
    throw InvalidArgument("max_constraints must be >= 1");
  }
  if (options.aux < 0) throw InvalidArgument("aux count must be >= 0");
  const int slots = table.arity + options.aux;
  if (saturating_power(order.value(), static_cast<std::size_t>(slots)) >
      options.search_cap) {
    throw GuardExceeded("gadget synthesis: too many coefficient vectors");
  }
  const auto exprs = canonical_rows(order.value(), slots);
  const auto sets = member_sets(order.value());
  struct Candidate {
    std::size_t expr;
    std::size_t set;
  };
  std::vector<Candidate> cands;
  for (std::size_t e = 0; e < exprs.size(); ++e) {
    for (std::size_t s = 0; s < sets.size(); ++s) cands.push_back({e, s});
  }
  const auto k_max = static_cast<std::size_t>(options.max_constraints);
  std::uint64_t space = binomial_saturating(cands.size(), k_max);
  if (space > options.search_cap) {
    throw GuardExceeded("gadget synthesis search space " +
                        std::to_string(space) + " exceeds cap " +
                        std::to_string(options.search_cap));
  }

  for (std::size_t k = 1; k <= std::min(k_max, cands.size()); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      bool distinct = true;
      for (std::size_t i = 1; i < k && distinct; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (cands[idx[i]].expr == cands[idx[j]].expr) {
            distinct = false;
            break;
          }
        }
      }
      if (distinct) {
        std::vector<GadgetConstraint> rows;
        for (std::size_t i : idx) {
          rows.push_back({exprs[cands[i].expr], sets[cands[i].set], 1});
        }
        GadgetProfile p = profile_gadget(order, table.arity, options.aux,
                                         rows, table, options.kind);
        if (p.valid) {
          Gadget g;
          g.name = "synth_" + table.to_string();
          g.order = order;
          g.arity = table.arity;
          g.aux = options.aux;
          g.constraints = std::move(rows);
          g.s_yes = p.s_yes;
          g.s_no = p.s_no;
          g.kind = options.kind;
          g.table = table;
          return g;
        }
      }
      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == cands.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

DistanceGadgetResult distance_gadget(LinsatInstance& inst, std::size_t i,
                                     int k) {
  if (i >= inst.num_constraints()) {
    throw InvalidArgument("constraint index " + std::to_string(i) +
                          " out of range");
  }
  if (k < 0) throw InvalidArgument("distance gadget needs k >= 0");
  DistanceGadgetResult out;
  if (k == 0) return out;
  std::int64_t w = 0;
  for (const auto& [v, wv] : inst.constraints()[i].rhs) w = std::max(w, wv);
  LinsatExpr expr = inst.constraints()[i].expr;
  for (int j = 0; j < k; ++j) {
    int y = inst.add_variable("y" + std::to_string(inst.num_variables()));
    out.aux_vars.push_back(y);
    expr.emplace(y, 1);
  }
  inst.replace_expression(i, expr);
  for (int y : out.aux_vars) {
    out.aux_rows.push_back(inst.add_constraint({{y, 1}}, {{0, w}}));
  }
  out.offset = static_cast<std::int64_t>(k) * w;
  return out;
}

RepairResult repair_duplicates(LinsatInstance& inst) {
  RepairResult out;
  std::map<LinsatExpr, std::size_t> seen;
  const std::size_t m = inst.num_constraints();
  for (std::size_t i = 0; i < m; ++i) {
    LinsatExpr key =
        canonical_expression(inst.constraints()[i].expr, inst.order()).expr;
    if (seen.emplace(std::move(key), i).second) continue;
    out.offset += distance_gadget(inst, i, 1).offset;
    ++out.repaired_rows;
  }
  return out;
}

}  // namespace maxlin
