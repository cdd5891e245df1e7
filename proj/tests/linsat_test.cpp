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

#include <gtest/gtest.h>

#include "maxlin/error.hpp"
#include "support.hpp"

namespace maxlin {
namespace {

using testing::Rng;
using testing::uniform_int;

TEST(LinsatTest, ScaledMergeCombinesMultiples) {
  LinsatInstance inst(gf::FieldOrder(5));
  inst.add_variable("a");
  inst.add_variable("b");
  inst.add_constraint({{0, 1}, {1, 2}}, {{1, 1}});
  // 2a + 4b = 2 is the same hyperplane as a + 2b = 1.
  std::size_t i = inst.add_constraint({{0, 2}, {1, 4}}, {{2, 3}, {4, 1}});
  EXPECT_EQ(i, 0u);
  ASSERT_EQ(inst.num_constraints(), 1u);
  const LinsatRhs& rhs = inst.constraints()[0].rhs;
  EXPECT_EQ(rhs.at(1), 4);  // 1 + 3
  EXPECT_EQ(rhs.at(2), 1);  // 4 / 2 = 2
}

TEST(LinsatTest, LiteralAndNoneModes) {
  for (auto mode : {MergeMode::kLiteral, MergeMode::kNone}) {
    LinsatInstance inst(gf::FieldOrder(3), mode);
    inst.add_variable("a");
    inst.add_constraint({{0, 1}}, {{1, 1}});
    inst.add_constraint({{0, 2}}, {{2, 1}});
    inst.add_constraint({{0, 1}}, {{0, 1}});
    EXPECT_EQ(inst.num_constraints(), mode == MergeMode::kLiteral ? 2u : 3u);
  }
}

TEST(LinsatTest, RejectsDegenerateRows) {
  LinsatInstance inst(gf::FieldOrder(2));
  inst.add_variable("a");
  EXPECT_THROW(inst.add_constraint({{0, 2}}, {{1, 1}}), InvalidArgument);  // zero row
  EXPECT_THROW(inst.add_constraint({{0, 1}}, {{1, 0}}), InvalidArgument);
  EXPECT_THROW(inst.add_constraint({{3, 1}}, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(inst.add_constraint({{0, 1}}, {{0, 1}, {1, 1}}), InvalidArgument);
  EXPECT_NO_THROW(inst.add_constraint({{0, 1}}, {{0, 1}, {1, 2}}));
}

TEST(LinsatTest, MergingPreservesSemantics) {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    std::uint64_t q = t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5);
    auto n = static_cast<std::size_t>(uniform_int(rng, 1, q == 5 ? 4 : 6));
    LinsatInstance plain(gf::FieldOrder(q), MergeMode::kNone);
    LinsatInstance scaled(gf::FieldOrder(q), MergeMode::kScaled);
    LinsatInstance literal(gf::FieldOrder(q), MergeMode::kLiteral);
    for (std::size_t j = 0; j < n; ++j) {
      plain.add_variable("x");
      scaled.add_variable("x");
      literal.add_variable("x");
    }
    const int m = static_cast<int>(uniform_int(rng, 1, 10));
    int added = 0;
    while (added < m) {
      // Draw from a tiny pool of rows so that merges actually happen.
      LinsatExpr e = testing::random_expr(rng, q, std::min<std::size_t>(n, 2));
      auto rhs = testing::random_rhs(rng, q, 3);
      plain.add_constraint(e, rhs);
      try {
        scaled.add_constraint(e, rhs);
        literal.add_constraint(e, rhs);
      } catch (const InvalidArgument&) {
        // The merged row filled F_q uniformly; skip this instance.
        break;
      }
      ++added;
    }
    if (added < m) continue;
    const std::uint64_t count = testing::ipow(q, n);
    for (std::uint64_t i = 0; i < count; ++i) {
      gf::Vector x = testing::digits(i, q, n);
      std::int64_t want = testing::row_sum(plain, x);
      EXPECT_EQ(testing::row_sum(scaled, x), want);
      EXPECT_EQ(testing::row_sum(literal, x), want);
      EXPECT_EQ(plain.evaluate(x), want);
    }
  }
}

TEST(LinsatTest, CanonicalIsIdempotent) {
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t q = t % 2 == 0 ? 7 : 3;
    gf::FieldOrder f(q);
    LinsatExpr e = testing::random_expr(rng, q, 5);
    CanonicalExpr c = canonical_expression(e, f);
    EXPECT_EQ(c.expr.begin()->second, 1u);
    CanonicalExpr cc = canonical_expression(c.expr, f);
    EXPECT_EQ(cc.expr, c.expr);
    EXPECT_EQ(cc.factor, 1u);
    for (const auto& [var, coef] : e) EXPECT_EQ(c.expr.at(var), f.mul(coef, c.factor));
  }
}

TEST(LinsatTest, UnweightedTimesGcdEqualsWeighted) {
  Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    std::uint64_t q = t % 2 == 0 ? 3 : 5;
    auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    LinsatInstance w(gf::FieldOrder(q), MergeMode::kNone);
    for (std::size_t j = 0; j < n; ++j) w.add_variable("x");
    const std::int64_t g = uniform_int(rng, 1, 3);
    for (int i = 0; i < uniform_int(rng, 1, 6); ++i) {
      auto rhs = testing::random_rhs(rng, q, 4);
      for (auto& [v, wt] : rhs) wt *= g;
      w.add_constraint(testing::random_expr(rng, q, n), rhs);
    }
    UnweightedView u = to_unweighted(w);
    EXPECT_TRUE(u.instance.is_unweighted());
    EXPECT_EQ(u.gcd % g, 0);
    EXPECT_EQ(u.gcd, w.weight_gcd());
    EXPECT_EQ(u.source_row.size(), u.instance.num_constraints());
    const std::uint64_t count = testing::ipow(q, n);
    for (std::uint64_t i = 0; i < count; ++i) {
      gf::Vector x = testing::digits(i, q, n);
      EXPECT_EQ(testing::row_sum(u.instance, x) * u.gcd, testing::row_sum(w, x));
    }
  }
}

TEST(LinsatTest, TotalWeightAndMatrix) {
  LinsatInstance inst(gf::FieldOrder(3), MergeMode::kNone);
  inst.add_variable("a");
  inst.add_variable("b");
  inst.add_constraint({{0, 1}, {1, 2}}, {{0, 2}, {1, 5}});
  inst.add_constraint({{1, 1}}, {{2, 3}});
  EXPECT_EQ(inst.total_weight(), 8);
  EXPECT_EQ(inst.weight_gcd(), 1);
  EXPECT_FALSE(inst.is_unweighted());
  gf::FieldMatrix b = inst.matrix();
  EXPECT_EQ(b.rows(), 2u);
  EXPECT_EQ(b.at(0, 1), 2u);
  EXPECT_EQ(b.at(1, 0), 0u);
  gf::Vector x = {1, 1};
  EXPECT_EQ(inst.row_value(0, x), 0u);
  EXPECT_EQ(inst.evaluate(x), 2);
  gf::Vector bad = {1};
  EXPECT_THROW(inst.evaluate(bad), InvalidArgument);
}

TEST(LinsatTest, ReplaceExpressionRescales) {
  LinsatInstance inst(gf::FieldOrder(5));
  inst.add_variable("a");
  inst.add_variable("b");
  inst.add_constraint({{0, 1}}, {{1, 1}});
  inst.add_constraint({{1, 1}}, {{2, 1}});
  inst.replace_expression(0, {{0, 2}, {1, 1}});
  for (std::uint64_t i = 0; i < 25; ++i) {
    gf::Vector x = testing::digits(i, 5, 2);
    std::int64_t want = ((2 * x[0] + x[1]) % 5 == 1) + (x[1] == 2);
    EXPECT_EQ(inst.evaluate(x), want);
  }
  EXPECT_THROW(inst.replace_expression(0, {{1, 3}}), InvalidArgument);
  EXPECT_THROW(inst.replace_expression(7, {{1, 3}}), InvalidArgument);
}

TEST(LinsatTest, AssignmentEnumeration) {
  std::vector<gf::Vector> seen;
  for_each_assignment(3, 2, 100, [&](std::span<const gf::Residue> x) {
    seen.emplace_back(x.begin(), x.end());
  });
  ASSERT_EQ(seen.size(), 9u);
  EXPECT_EQ(seen[1], (gf::Vector{0, 1}));
  EXPECT_EQ(seen[3], (gf::Vector{1, 0}));
  EXPECT_THROW(for_each_assignment(3, 3, 20, [](std::span<const gf::Residue>) {}),
               GuardExceeded);
  EXPECT_EQ(saturating_power(2, 70), std::numeric_limits<std::uint64_t>::max());
  EXPECT_EQ(saturating_power(3, 4), 81u);
}

}  // namespace
}  // namespace maxlin
