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

// Desk-scale DQI estimation. The state sum_x P(f(x)) |x> is built by
// enumerating F_q^n, P is chosen to maximize the expected objective of a
// measurement, and the decoding step is scored by how many errors of
// weight <= l a classical decoder recovers.

#ifndef MAXLIN_DQI_HPP_
#define MAXLIN_DQI_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxlin/codes.hpp"
#include "maxlin/decoders.hpp"
#include "maxlin/linsat.hpp"

namespace maxlin {

inline constexpr std::uint64_t kDefaultStateLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultPatternLimit = std::uint64_t{1} << 20;
inline constexpr std::size_t kDefaultFeasibilitySamples = 10'000;

// P(t) = sum_j coefficients[j] t^j.
struct DqiPolynomial {
  std::vector<double> coefficients;

  std::size_t degree() const {
    return coefficients.empty() ? 0 : coefficients.size() - 1;
  }
  double operator()(double t) const;
};

// Number of assignments attaining each objective value.
using ObjectiveSpectrum = std::map<std::int64_t, std::uint64_t>;

// Throws GuardExceeded when q^n > limit.
ObjectiveSpectrum objective_spectrum(const LinsatInstance& inst,
                                     std::uint64_t limit = kDefaultStateLimit);

// Expected objective of a measurement of the state with polynomial P:
// sum_v N_v P(v)^2 v / sum_v N_v P(v)^2. Throws InvalidArgument when P
// vanishes on every value.
double rayleigh_quotient(const ObjectiveSpectrum& spectrum,
                         const DqiPolynomial& p);

struct DqiState {
  std::uint64_t q = 2;
  std::size_t n = 0;
  // Indexed by assignment, x[0] most significant; unit 2-norm.
  std::vector<double> amplitudes;
};

// Throws GuardExceeded when q^n > limit and InvalidArgument when P
// vanishes on every objective value.
DqiState build_dqi_state(const LinsatInstance& inst, const DqiPolynomial& p,
                         std::uint64_t limit = kDefaultStateLimit);

double expected_satisfied(const DqiState& state, const LinsatInstance& inst);

struct OptimalPolynomial {
  DqiPolynomial polynomial;
  double expected = 0;  // its Rayleigh quotient
  std::string diagnostic;  // set when the problem degenerates
};

// Degree <= l polynomial maximizing the Rayleigh quotient, from the top
// eigenvector of the quotient restricted to the polynomial space.
OptimalPolynomial optimal_polynomial(const LinsatInstance& inst, std::size_t l,
                                     std::uint64_t limit = kDefaultStateLimit);
OptimalPolynomial optimal_polynomial(const ObjectiveSpectrum& spectrum,
                                     std::size_t l);

enum class FeasibilityMode { kAuto, kExact, kSampled };

std::string to_string(FeasibilityMode m);
FeasibilityMode parse_feasibility_mode(std::string_view name);

struct FeasibilityOptions {
  FeasibilityMode mode = FeasibilityMode::kAuto;
  std::size_t samples = kDefaultFeasibilitySamples;
  std::uint64_t seed = 0;
  std::uint64_t pattern_limit = kDefaultPatternLimit;  // exact mode guard
  unsigned threads = 0;  // 0: hardware concurrency
};

struct FeasibilityResult {
  double fraction = 0;
  FeasibilityMode mode = FeasibilityMode::kExact;
  std::uint64_t patterns = 0;  // enumerated or sampled
  std::uint64_t decoded = 0;
  std::uint64_t seed = 0;
  double standard_error = 0;
};

// Number of error patterns of length m with weight <= l, saturating.
std::uint64_t ball_size(std::size_t m, std::uint64_t q, std::size_t l);

// Fraction of errors e with weight <= l such that decoder(H e) == e. In
// auto mode, exact when the ball fits pattern_limit and sampled otherwise.
// Throws GuardExceeded in exact mode when the ball is too large.
FeasibilityResult decoder_feasibility(const CodeView& view, std::size_t l,
                                      const Decoder& decoder,
                                      const FeasibilityOptions& options = {});

enum class Regime { kExactPreparable, kApproximate };
std::string to_string(Regime r);

struct EstimateOptions {
  std::optional<std::size_t> l;             // auto when empty
  std::optional<DecoderKind> decoder;       // auto when empty
  FeasibilityOptions feasibility;
  DecoderOptions decoder_options;
  std::uint64_t state_limit = kDefaultStateLimit;
  std::size_t distance_cap = kDefaultDependencyCap;
};

struct DqiEstimate {
  std::size_t l = 0;
  DqiPolynomial polynomial;
  // Ideal-state expectation; an upper-bound proxy when the regime is
  // approximate.
  double expected = 0;
  double uniform_expected = 0;
  double normalization = 0;  // squared norm of the built state
  std::int64_t total_weight = 0;
  DistanceResult distance;
  std::string decoder;
  FeasibilityResult feasibility;
  Regime regime = Regime::kApproximate;
  std::string diagnostic;
};

// `inst` must be unweighted. Auto l = min(m - 1, floor((d - 1) / 2)) with
// d = cap + 1 when d_min is above the search cap; auto decoder is lookup
// when its table fits, isd otherwise.
DqiEstimate estimate(const LinsatInstance& inst,
                     const EstimateOptions& options = {});

}  // namespace maxlin

#endif  // MAXLIN_DQI_HPP_
