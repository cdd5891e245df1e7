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

#include "maxlin/dqi.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "maxlin/error.hpp"
#include "maxlin/fixtures.hpp"
#include "support.hpp"

namespace maxlin {
namespace {

using testing::Rng;
using testing::uniform_int;

TEST(SpectrumTest, CountsEveryAssignment) {
  LinsatInstance inst = and_gadget_instance();
  ObjectiveSpectrum s = objective_spectrum(inst);
  EXPECT_EQ(s, (ObjectiveSpectrum{{1, 3}, {3, 1}}));
  EXPECT_THROW(objective_spectrum(inst, 3), GuardExceeded);
}

TEST(StateTest, NormalizedAndMatchesRayleighQuotient) {
  Rng rng(71);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 60; ++t) {
    std::uint64_t q = t % 2 == 0 ? 2 : 3;
    auto n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    auto m = static_cast<std::size_t>(uniform_int(rng, 1, 8));
    LinsatInstance inst = testing::random_instance(rng, q, n, m, 3);
    DqiPolynomial p;
    for (int j = 0; j < 3; ++j) p.coefficients.push_back(unit(rng));
    DqiState state;
    try {
      state = build_dqi_state(inst, p);
    } catch (const InvalidArgument&) {
      continue;
    }
    double norm = 0;
    for (double a : state.amplitudes) norm += a * a;
    EXPECT_NEAR(norm, 1.0, 1e-12);
    // Amplitudes are proportional to P(f(x)).
    double raw_norm = 0;
    std::vector<double> raw;
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
      gf::Vector x = testing::digits(i, q, n);
      raw.push_back(p(static_cast<double>(testing::row_sum(inst, x))));
      raw_norm += raw.back() * raw.back();
    }
    raw_norm = std::sqrt(raw_norm);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      EXPECT_NEAR(std::abs(state.amplitudes[i]), std::abs(raw[i]) / raw_norm, 1e-12);
    }
    EXPECT_NEAR(expected_satisfied(state, inst),
                rayleigh_quotient(objective_spectrum(inst), p), 1e-9);
  }
}

TEST(OptimalPolynomialTest, DominatesLowerDegreesAndUniform) {
  Rng rng(72);
  for (int t = 0; t < 40; ++t) {
    std::uint64_t q = t % 2 == 0 ? 2 : 3;
    auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
    auto m = static_cast<std::size_t>(uniform_int(rng, 2, 9));
    LinsatInstance inst = testing::random_instance(rng, q, n, m, 2);
    ObjectiveSpectrum spectrum = objective_spectrum(inst);
    double uniform = rayleigh_quotient(spectrum, DqiPolynomial{{1.0}});
    double prev = uniform;
    for (std::size_t l = 1; l < std::min<std::size_t>(m, 5); ++l) {
      OptimalPolynomial opt = optimal_polynomial(inst, l);
      EXPECT_LE(opt.polynomial.degree(), l);
      EXPECT_NEAR(opt.expected, rayleigh_quotient(spectrum, opt.polynomial), 1e-9);
      EXPECT_GE(opt.expected, prev - 1e-9);
      prev = opt.expected;
    }
    if (spectrum.size() > 1) EXPECT_GT(prev, uniform + 1e-9);
  }
}

TEST(OptimalPolynomialTest, HighDegreeReachesMaximum) {
  // With degree >= (number of distinct values) - 1 the polynomial can vanish
  // on every non-optimal value.
  LinsatInstance inst = and_gadget_instance();
  ObjectiveSpectrum spectrum = objective_spectrum(inst);
  OptimalPolynomial opt = optimal_polynomial(spectrum, 1);
  EXPECT_NEAR(opt.expected, 3.0, 1e-9);
  EXPECT_NEAR(optimal_polynomial(inst, 3).expected, 3.0, 1e-9);
}

TEST(OptimalPolynomialTest, SingleConstraintIsolatesTheSatisfyingValue) {
  LinsatInstance inst(gf::FieldOrder(2));
  inst.add_variable("x");
  inst.add_constraint({{0, 1}}, {{1, 1}});
  EXPECT_NEAR(optimal_polynomial(inst, 0).expected, 0.5, 1e-12);
  OptimalPolynomial opt = optimal_polynomial(inst, 1);
  EXPECT_NEAR(opt.expected, 1.0, 1e-9);
  DqiState state = build_dqi_state(inst, opt.polynomial);
  EXPECT_NEAR(state.amplitudes[0], 0.0, 1e-9);
  EXPECT_NEAR(std::abs(state.amplitudes[1]), 1.0, 1e-9);
}

TEST(EstimateTest, RejectsDegreeAtLeastM) {
  EstimateOptions opt;
  opt.l = 3;
  EXPECT_THROW(estimate(and_gadget_instance(), opt), InvalidArgument);
}

TEST(FeasibilityTest, BallSize) {
  EXPECT_EQ(ball_size(3, 2, 1), 4u);
  EXPECT_EQ(ball_size(4, 3, 2), 1u + 8u + 24u);
  EXPECT_EQ(ball_size(200, 2, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(FeasibilityTest, ExactAndSampledAgree) {
  Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    auto m = static_cast<std::size_t>(uniform_int(rng, 6, 12));
    auto n = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(m) - 2));
    CodeView view = CodeView::from_matrix(testing::random_matrix(rng, 2, m, n));
    LookupDecoder lookup(view);
    FeasibilityOptions exact;
    exact.mode = FeasibilityMode::kExact;
    FeasibilityResult e = decoder_feasibility(view, 2, lookup, exact);
    EXPECT_EQ(e.patterns, ball_size(m, 2, 2));
    FeasibilityOptions sampled;
    sampled.mode = FeasibilityMode::kSampled;
    sampled.samples = 20000;
    sampled.seed = static_cast<std::uint64_t>(t);
    FeasibilityResult s = decoder_feasibility(view, 2, lookup, sampled);
    EXPECT_EQ(s.patterns, 20000u);
    EXPECT_LE(std::abs(s.fraction - e.fraction), 3 * s.standard_error + 1e-12)
        << "exact " << e.fraction << " sampled " << s.fraction;
  }
}

TEST(FeasibilityTest, AutoModeFollowsPatternLimit) {
  CodeView view = CodeView::from_instance(repetition3_instance());
  LookupDecoder lookup(view);
  FeasibilityOptions opt;
  EXPECT_EQ(decoder_feasibility(view, 1, lookup, opt).mode, FeasibilityMode::kExact);
  opt.pattern_limit = 2;
  opt.samples = 100;
  EXPECT_EQ(decoder_feasibility(view, 1, lookup, opt).mode, FeasibilityMode::kSampled);
  opt.mode = FeasibilityMode::kExact;
  EXPECT_THROW(decoder_feasibility(view, 1, lookup, opt), GuardExceeded);
}

TEST(EstimateTest, Repetition3IsExactPreparable) {
  EstimateOptions opt;
  opt.l = 1;
  opt.decoder = DecoderKind::kLookup;
  DqiEstimate e = estimate(repetition3_instance(), opt);
  EXPECT_EQ(e.feasibility.fraction, 1.0);
  EXPECT_EQ(e.regime, Regime::kExactPreparable);
  EXPECT_EQ(e.distance.value, 3u);
  EXPECT_NEAR(e.uniform_expected, 1.5, 1e-12);
  EXPECT_GT(e.expected, e.uniform_expected + 1e-9);
  EXPECT_EQ(to_string(e.regime), "exact_preparable");
}

TEST(EstimateTest, StrictImprovementWhenFeasible) {
  for (const char* name : {"repetition3", "triangle_maxcut", "triangle_colouring_linsat"}) {
    LinsatInstance inst = std::get<LinsatInstance>(make_fixture(name).payload);
    DqiEstimate e = estimate(inst);
    if (e.feasibility.fraction == 1.0 && e.l >= 1) {
      EXPECT_GT(e.expected, e.uniform_expected + 1e-9) << name;
    }
  }
}

TEST(EstimateTest, AutoChoices) {
  DqiEstimate dup = estimate(duplicate_rows_instance());
  EXPECT_EQ(dup.l, 0u);  // d_min = 2 leaves no correctable weight
  EstimateOptions opt;
  opt.l = 1;
  DqiEstimate forced = estimate(duplicate_rows_instance(), opt);
  EXPECT_LT(forced.feasibility.fraction, 1.0);
  EXPECT_EQ(forced.regime, Regime::kApproximate);
  EXPECT_EQ(forced.decoder, "lookup");
  LinsatInstance weighted(gf::FieldOrder(2));
  weighted.add_variable("x");
  weighted.add_constraint({{0, 1}}, {{1, 2}});
  EXPECT_THROW(estimate(weighted), InvalidArgument);
}

}  // namespace
}  // namespace maxlin
