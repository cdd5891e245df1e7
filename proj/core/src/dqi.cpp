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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "internal.hpp"
#include "maxlin/error.hpp"

namespace maxlin {
namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(p);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

// Multiplies polynomial a (coefficients in t) by (s0 + s1 t).
std::vector<double> times_linear(const std::vector<double>& a, double s0,
                                 double s1) {
  std::vector<double> out(a.size() + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] += s0 * a[i];
    out[i + 1] += s1 * a[i];
  }
  return out;
}

void check_unit_state(const DqiState& state, const LinsatInstance& inst) {
  if (state.q != inst.q() || state.n != inst.num_variables() ||
      state.amplitudes.size() != saturating_power(inst.q(), inst.num_variables())) {
    throw InvalidArgument("state does not match the instance");
  }
}

}  // namespace

double DqiPolynomial::operator()(double t) const {
  double acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

ObjectiveSpectrum objective_spectrum(const LinsatInstance& inst,
                                     std::uint64_t limit) {
  ObjectiveSpectrum spectrum;
  for_each_assignment(inst.q(), inst.num_variables(), limit,
                      [&](std::span<const gf::Residue> x) {
                        ++spectrum[inst.evaluate(x)];
                      });
  return spectrum;
}

double rayleigh_quotient(const ObjectiveSpectrum& spectrum,
                         const DqiPolynomial& p) {
  double num = 0;
  double den = 0;
  for (const auto& [v, count] : spectrum) {
    double a = p(static_cast<double>(v));
    double mass = static_cast<double>(count) * a * a;
    num += mass * static_cast<double>(v);
    den += mass;
  }
  if (den == 0) {
    throw InvalidArgument("polynomial vanishes on every objective value");
  }
  return num / den;
}

DqiState build_dqi_state(const LinsatInstance& inst, const DqiPolynomial& p,
                         std::uint64_t limit) {
  DqiState state{inst.q(), inst.num_variables(), {}};
  for_each_assignment(inst.q(), inst.num_variables(), limit,
                      [&](std::span<const gf::Residue> x) {
                        state.amplitudes.push_back(
                            p(static_cast<double>(inst.evaluate(x))));
                      });
  long double norm = 0;
  for (double a : state.amplitudes) norm += static_cast<long double>(a) * a;
  if (norm == 0) {
    throw InvalidArgument("polynomial vanishes on every objective value");
  }
  const double scale = static_cast<double>(1.0L / std::sqrt(norm));
  for (double& a : state.amplitudes) a *= scale;
  return state;
}

double expected_satisfied(const DqiState& state, const LinsatInstance& inst) {
  check_unit_state(state, inst);
  long double acc = 0;
  std::size_t i = 0;
  for_each_assignment(inst.q(), inst.num_variables(), UINT64_MAX,
                      [&](std::span<const gf::Residue> x) {
                        long double a = state.amplitudes[i++];
                        acc += a * a * inst.evaluate(x);
                      });
  return static_cast<double>(acc);
}

OptimalPolynomial optimal_polynomial(const ObjectiveSpectrum& spectrum,
                                     std::size_t l) {
  OptimalPolynomial out;
  if (spectrum.empty()) throw InvalidArgument("empty objective spectrum");
  const double lo = static_cast<double>(spectrum.begin()->first);
  const double hi = static_cast<double>(spectrum.rbegin()->first);
  if (spectrum.size() == 1 || l == 0) {
    out.polynomial.coefficients = {1.0};
    out.expected = rayleigh_quotient(spectrum, out.polynomial);
    if (spectrum.size() == 1) {
      out.diagnostic = "objective is constant; constant polynomial returned";
    }
    return out;
  }

  // Chebyshev basis on [lo, hi], weighted by the share of assignments at
  // each value. The left singular vectors span the polynomial space in the
  // weighted inner product, which turns the quotient into a symmetric
  // eigenproblem.
  const std::size_t k = spectrum.size();
  const std::size_t cols = l + 1;
  double total = 0;
  for (const auto& [v, count] : spectrum) total += static_cast<double>(count);
  const double a = 2.0 / (hi - lo);
  const double b = -(hi + lo) / (hi - lo);
  Eigen::MatrixXd g(k, cols);
  Eigen::VectorXd values(k);
  std::size_t row = 0;
  for (const auto& [v, count] : spectrum) {
    const double s = a * static_cast<double>(v) + b;
    const double w = std::sqrt(static_cast<double>(count) / total);
    double t_prev = 1.0;
    double t_cur = s;
    for (std::size_t j = 0; j < cols; ++j) {
      double tj = j == 0 ? 1.0 : (j == 1 ? s : 0.0);
      if (j >= 2) {
        tj = 2 * s * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = tj;
      }
      g(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = w * tj;
    }
    values(static_cast<Eigen::Index>(row)) = static_cast<double>(v);
    ++row;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > 1e-12 * sigma(0)) ++r;
  Eigen::MatrixXd u = svd.matrixU().leftCols(r);
  Eigen::MatrixXd s = u.transpose() * values.asDiagonal() * u;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  Eigen::VectorXd top = eig.eigenvectors().col(r - 1);
  out.expected = eig.eigenvalues()(r - 1);
  Eigen::VectorXd cheb = svd.matrixV().leftCols(r) *
                         (sigma.head(r).cwiseInverse().asDiagonal() * top);

  // Expand sum_j cheb_j T_j(a t + b) into powers of t.
  std::vector<double> poly(cols, 0.0);
  std::vector<double> t_prev{1.0};
  std::vector<double> t_cur{b, a};
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<double> tj;
    if (j == 0) {
      tj = t_prev;
    } else if (j == 1) {
      tj = t_cur;
    } else {
      tj = times_linear(t_cur, 2 * b, 2 * a);
      for (std::size_t i = 0; i < t_prev.size(); ++i) tj[i] -= t_prev[i];
      t_prev = t_cur;
      t_cur = tj;
    }
    for (std::size_t i = 0; i < tj.size() && i < cols; ++i) {
      poly[i] += cheb(static_cast<Eigen::Index>(j)) * tj[i];
    }
  }
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  double scale = 0;
  for (double c : poly) scale = std::max(scale, std::abs(c));
  DqiPolynomial p{poly};
  if (p(hi) < 0) scale = -scale;
  for (double& c : poly) c /= scale;
  out.polynomial.coefficients = std::move(poly);
  return out;
}

OptimalPolynomial optimal_polynomial(const LinsatInstance& inst, std::size_t l,
                                     std::uint64_t limit) {
  return optimal_polynomial(objective_spectrum(inst, limit), l);
}

std::string to_string(FeasibilityMode m) {
  switch (m) {
    case FeasibilityMode::kAuto: return "auto";
    case FeasibilityMode::kExact: return "exact";
    case FeasibilityMode::kSampled: return "sampled";
  }
  return "auto";
}

FeasibilityMode parse_feasibility_mode(std::string_view name) {
  if (name == "auto") return FeasibilityMode::kAuto;
  if (name == "exact") return FeasibilityMode::kExact;
  if (name == "sampled") return FeasibilityMode::kSampled;
  throw InvalidArgument("unknown feasibility mode '" + std::string(name) +
                        "' (expected auto, exact or sampled)");
}

std::uint64_t ball_size(std::size_t m, std::uint64_t q, std::size_t l) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::size_t w = 0; w <= std::min(l, m); ++w) {
    total = saturating_add(total, saturating_mul(binomial(m, w), power));
    power = saturating_mul(power, q - 1);
  }
  return total;
}

FeasibilityResult decoder_feasibility(const CodeView& view, std::size_t l,
                                      const Decoder& decoder,
                                      const FeasibilityOptions& options) {
  const std::size_t m = view.length;
  const std::uint64_t q = view.q();
  l = std::min(l, m);
  const std::uint64_t ball = ball_size(m, q, l);
  FeasibilityMode mode = options.mode;
  if (mode == FeasibilityMode::kAuto) {
    mode = ball <= options.pattern_limit ? FeasibilityMode::kExact
                                         : FeasibilityMode::kSampled;
  }
  FeasibilityResult out;
  out.mode = mode;
  auto hit = [&](const gf::Vector& e) {
    auto got = decoder.decode(view.syndrome(e));
    return got && *got == e;
  };

  if (mode == FeasibilityMode::kExact) {
    if (ball > options.pattern_limit) {
      throw GuardExceeded("exact feasibility over " + std::to_string(ball) +
                          " error patterns exceeds limit " +
                          std::to_string(options.pattern_limit));
    }
    for (std::size_t w = 0; w <= l; ++w) {
      internal::for_each_of_weight(m, w, q, [&](const gf::Vector& e) {
        ++out.patterns;
        out.decoded += hit(e);
      });
    }
    out.fraction = static_cast<double>(out.decoded) /
                   static_cast<double>(out.patterns);
    return out;
  }

  if (options.samples == 0) {
    throw InvalidArgument("sampled feasibility needs at least one sample");
  }
  // P(w) proportional to C(m, w) (q - 1)^w, which is uniform on the ball.
  std::vector<double> cumulative;
  double acc = 0;
  for (std::size_t w = 0; w <= l; ++w) {
    acc += std::exp(std::lgamma(m + 1.0) - std::lgamma(w + 1.0) -
                    std::lgamma(m - w + 1.0) +
                    static_cast<double>(w) * std::log(static_cast<double>(q - 1)));
    cumulative.push_back(acc);
  }
  std::vector<char> ok(options.samples, 0);
  internal::parallel_for(options.samples, options.threads, [&](std::size_t i) {
    std::mt19937_64 rng(internal::derive_seed(options.seed, i));
    const double u = internal::uniform_unit(rng) * cumulative.back();
    std::size_t w = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
    w = std::min(w, l);
    std::vector<std::size_t> pos(m);
    for (std::size_t j = 0; j < m; ++j) pos[j] = j;
    gf::Vector e(m, 0);
    for (std::size_t j = 0; j < w; ++j) {
      std::size_t pick = j + internal::uniform_below(rng, m - j);
      std::swap(pos[j], pos[pick]);
      e[pos[j]] = static_cast<gf::Residue>(1 + internal::uniform_below(rng, q - 1));
    }
    ok[i] = hit(e);
  });
  out.patterns = options.samples;
  out.decoded = static_cast<std::uint64_t>(std::count(ok.begin(), ok.end(), 1));
  out.seed = options.seed;
  out.fraction = static_cast<double>(out.decoded) /
                 static_cast<double>(out.patterns);
  out.standard_error = std::sqrt(out.fraction * (1 - out.fraction) /
                                 static_cast<double>(out.patterns));
  return out;
}

std::string to_string(Regime r) {
  return r == Regime::kExactPreparable ? "exact_preparable" : "approximate";
}

DqiEstimate estimate(const LinsatInstance& inst,
                     const EstimateOptions& options) {
  if (!inst.is_unweighted()) {
    throw InvalidArgument(
        "estimate needs an unweighted instance; convert weighted instances "
        "with the transform pipeline first");
  }
  const std::size_t m = inst.num_constraints();
  if (m == 0) throw InvalidArgument("instance has no constraints");
  DqiEstimate out;
  CodeView view = CodeView::from_instance(inst);
  out.distance = min_distance(view, options.distance_cap);

  if (options.l) {
    if (*options.l >= m) {
      throw InvalidArgument("degree l = " + std::to_string(*options.l) +
                            " must be below m = " + std::to_string(m));
    }
    out.l = *options.l;
  } else {
    std::size_t d = m + 1;
    if (out.distance.kind == DistanceResult::Kind::kExact) {
      d = out.distance.value;
    } else if (out.distance.kind == DistanceResult::Kind::kAboveCap) {
      d = out.distance.value + 1;
    }
    out.l = std::min(m - 1, (d - 1) / 2);
  }

  ObjectiveSpectrum spectrum = objective_spectrum(inst, options.state_limit);
  OptimalPolynomial opt = optimal_polynomial(spectrum, out.l);
  out.polynomial = opt.polynomial;
  out.diagnostic = opt.diagnostic;
  out.uniform_expected = rayleigh_quotient(spectrum, DqiPolynomial{{1.0}});
  DqiState state = build_dqi_state(inst, out.polynomial, options.state_limit);
  long double norm = 0;
  for (double a : state.amplitudes) norm += static_cast<long double>(a) * a;
  out.normalization = static_cast<double>(norm);
  out.expected = expected_satisfied(state, inst);
  out.total_weight = inst.total_weight();

  DecoderKind kind;
  if (options.decoder) {
    kind = *options.decoder;
  } else {
    kind = saturating_power(view.q(), view.rank) <=
                   options.decoder_options.lookup_limit
               ? DecoderKind::kLookup
               : DecoderKind::kIsd;
  }
  DecoderOptions dopt = options.decoder_options;
  if (kind == DecoderKind::kIsd && !dopt.isd.max_weight) {
    dopt.isd.max_weight = out.l;
  }
  std::unique_ptr<Decoder> decoder = make_decoder(kind, view, dopt);
  out.decoder = to_string(kind);
  out.feasibility =
      decoder_feasibility(view, out.l, *decoder, options.feasibility);
  out.regime = out.feasibility.decoded == out.feasibility.patterns
                   ? Regime::kExactPreparable
                   : Regime::kApproximate;
  return out;
}

}  // namespace maxlin
