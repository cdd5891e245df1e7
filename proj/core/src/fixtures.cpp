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

#include "maxlin/fixtures.hpp"

#include "maxlin/error.hpp"
#include "maxlin/gadgets.hpp"

namespace maxlin {
namespace {

const std::vector<Edge> kTriangle = {{0, 1}, {0, 2}, {1, 2}};
const std::vector<Edge> kSquare = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};

ProblemFile wrap(std::string name, std::string provenance,
                 std::variant<ConstraintModel, LinsatInstance> payload) {
  ProblemFile f;
  f.metadata["name"] = std::move(name);
  f.metadata["provenance"] = std::move(provenance);
  f.payload = std::move(payload);
  return f;
}

}  // namespace

ConstraintModel knapsack_model(const std::vector<std::int64_t>& values,
                               const std::vector<std::int64_t>& weights,
                               std::int64_t capacity) {
  if (values.size() != weights.size()) {
    throw InvalidArgument("knapsack needs one weight per value");
  }
  ConstraintModel m;
  IntExpr value;
  IntExpr load;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    IntExpr x = IntExpr::variable(m.new_binary_var("item" + std::to_string(i)));
    value += IntExpr(values[i]) * x;
    load += IntExpr(weights[i]) * x;
    total += values[i];
  }
  m.add_constraint(le(load, IntExpr(capacity)), Rational(2 * std::max<std::int64_t>(total, 1)));
  m.add_objective(value);
  return m;
}

ConstraintModel vertex_cover_model(int nodes, const std::vector<Edge>& edges) {
  ConstraintModel m;
  IntExpr size;
  for (int v = 0; v < nodes; ++v) {
    size += IntExpr::variable(m.new_binary_var("v" + std::to_string(v)));
  }
  m.add_objective(size, /*minimize=*/true);
  for (const auto& [u, v] : edges) {
    m.add_boolean_constraint(m.var(u) | m.var(v), Rational(2));
  }
  return m;
}

ConstraintModel colouring_model(int nodes, const std::vector<Edge>& edges,
                                int colours) {
  ConstraintModel m;
  for (int v = 0; v < nodes; ++v) {
    m.new_var("c" + std::to_string(v), 0, colours - 1);
  }
  for (const auto& [u, v] : edges) m.add_constraint(ne(m.var(u), m.var(v)));
  return m;
}

LinsatInstance colouring_instance(int nodes, const std::vector<Edge>& edges,
                                  std::uint64_t q) {
  const gf::FieldOrder f(q);
  LinsatInstance inst(f);
  for (int v = 0; v < nodes; ++v) inst.add_variable("c" + std::to_string(v));
  std::vector<std::pair<gf::Residue, std::int64_t>> nonzero;
  for (std::uint64_t a = 1; a < q; ++a) {
    nonzero.emplace_back(static_cast<gf::Residue>(a), 1);
  }
  for (const auto& [u, v] : edges) {
    inst.add_constraint({{u, 1}, {v, f.neg(1)}}, nonzero);
  }
  return inst;
}

LinsatInstance maxcut_instance(int nodes, const std::vector<Edge>& edges) {
  LinsatInstance inst(gf::FieldOrder(2));
  for (int v = 0; v < nodes; ++v) inst.add_variable("x" + std::to_string(v));
  for (const auto& [u, v] : edges) inst.add_constraint({{u, 1}, {v, 1}}, {{1, 1}});
  return inst;
}

LinsatInstance and_gadget_instance() {
  LinsatInstance inst(gf::FieldOrder(2));
  int a = inst.add_variable("x1");
  int b = inst.add_variable("x2");
  instantiate(and_gadget(), inst, {a, b});
  return inst;
}

LinsatInstance repetition3_instance() {
  LinsatInstance inst(gf::FieldOrder(2));
  inst.add_variable("x0");
  inst.add_variable("x1");
  inst.add_constraint({{0, 1}}, {{1, 1}});
  inst.add_constraint({{1, 1}}, {{1, 1}});
  inst.add_constraint({{0, 1}, {1, 1}}, {{1, 1}});
  return inst;
}

LinsatInstance duplicate_rows_instance() {
  LinsatInstance inst(gf::FieldOrder(2), MergeMode::kNone);
  inst.add_variable("x0");
  inst.add_variable("x1");
  inst.add_constraint({{0, 1}}, {{1, 1}});
  inst.add_constraint({{0, 1}}, {{1, 1}});
  inst.add_constraint({{1, 1}}, {{1, 1}});
  return inst;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "and_gadget",         "duplicate_rows",
      "knapsack",           "mod6",
      "repetition3",        "triangle_colouring",
      "triangle_colouring_linsat", "triangle_maxcut",
      "vertex_cover"};
  return names;
}

ProblemFile make_fixture(std::string_view name) {
  if (name == "knapsack") {
    return wrap("knapsack", "three-item knapsack, capacity 4",
                knapsack_model({4, 3, 2}, {3, 2, 2}, 4));
  }
  if (name == "vertex_cover") {
    return wrap("vertex_cover", "minimum vertex cover of the 4-cycle",
                vertex_cover_model(4, kSquare));
  }
  if (name == "triangle_colouring") {
    return wrap("triangle_colouring", "3-colouring of the triangle",
                colouring_model(3, kTriangle));
  }
  if (name == "triangle_colouring_linsat") {
    return wrap("triangle_colouring_linsat",
                "3-colouring of the triangle over GF(3)",
                colouring_instance(3, kTriangle));
  }
  if (name == "triangle_maxcut") {
    return wrap("triangle_maxcut", "Max-Cut of the triangle over GF(2)",
                maxcut_instance(3, kTriangle));
  }
  if (name == "and_gadget") {
    return wrap("and_gadget", "AND gadget on two inputs",
                and_gadget_instance());
  }
  if (name == "repetition3") {
    return wrap("repetition3", "dual code is the repetition code of length 3",
                repetition3_instance());
  }
  if (name == "duplicate_rows") {
    return wrap("duplicate_rows", "two identical rows, unmerged",
                duplicate_rows_instance());
  }
  if (name == "mod6") {
    ConstraintModel m;
    IntExpr a = IntExpr::variable(m.new_var("a", 0, 5));
    IntExpr b = IntExpr::variable(m.new_var("b", 0, 5));
    m.add_constraint(eq(a - b - IntExpr(1), IntExpr(0)), Rational(1), 6);
    m.add_constraint(eq(a - b - IntExpr(2), IntExpr(0)), Rational(1), 6);
    return wrap("mod6", "two incompatible residue constraints modulo 6",
                std::move(m));
  }
  throw InvalidArgument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace maxlin
