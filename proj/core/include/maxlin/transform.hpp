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

// Lowering of a ConstraintModel into Max-LINSAT.
//
//   lower_polynomials   nonlinear binary terms -> parity constraints, with
//                       degree reduction through auxiliary products
//   plan_prime          smallest prime that keeps every constraint exact
//   lower_to_modular    linear model -> weighted set constraints over F_p
//   to_unweighted, repair_duplicates, equalize_set_sizes
//                       weighted -> unweighted with uniform set sizes
//
// The source score of an assignment is objective value plus satisfied
// constraint weight (ModelEvaluation::score). The weighted image satisfies
//   target_weight = scale * source_score + offset
// for every in-bounds assignment whose auxiliary variables hold their
// defining products. The unweighted image satisfies
//   max_aux unweighted_count = target_weight / unweighted_gcd
//                              + unweighted_offset.

#ifndef MAXLIN_TRANSFORM_HPP_
#define MAXLIN_TRANSFORM_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxlin/codes.hpp"
#include "maxlin/linsat.hpp"
#include "maxlin/model.hpp"
#include "maxlin/rational.hpp"

namespace maxlin {

// Walsh coefficient of the character (-1)^{sum_{i in S} x_i}.
struct ParityTerm {
  std::vector<int> support;  // sorted variable ids
  Rational coefficient;
};

// Walsh expansion of a polynomial over binary variables; entry with empty
// support is the constant coefficient. Throws InvalidArgument when a term
// references a non-binary variable or has degree above 24.
std::vector<ParityTerm> walsh_expansion(const IntExpr& binary_poly);

// Product variable introduced by degree reduction: value = left * right,
// which equals the product of `support` (source variables).
struct AuxVariable {
  int id = 0;
  int left = 0;
  int right = 0;
  std::vector<int> support;
};

struct PolynomialLowering {
  ConstraintModel model;  // linear objectives, linear or parity constraints
  // source_score = lowered_score + constant when aux variables are correct.
  Rational constant{0};
  std::vector<AuxVariable> aux;
  // Weight lost per violated product definition; an integer above the
  // largest possible swing of the user score.
  Rational penalty{0};
  std::size_t parity_constraints = 0;
  std::size_t penalty_constraints = 0;
};

struct LoweringOptions {
  int degree_threshold = 4;  // split monomials of at least this degree
  std::optional<Rational> penalty;  // overrides the automatic penalty
};

// Throws InvalidArgument on a nonlinear term over a non-binary variable or
// a threshold below 3.
PolynomialLowering lower_polynomials(const ConstraintModel& model,
                                     const LoweringOptions& options = {});

struct WeightedSet {
  std::vector<std::int64_t> values;  // original (unshifted) integer values
  Rational weight;
};

struct LinearObjectiveExpansion {
  std::vector<WeightedSet> sets;
  // For every x in [lower, upper]:
  //   sum of weights of sets containing x + constant == a * (x - lower).
  Rational constant{0};
};

// Binary expansion of a * x with x in [lower, upper]: one set per bit of
// x - lower. Negative coefficients use the complementary bit sets.
LinearObjectiveExpansion lower_linear_objective(const Rational& a,
                                                std::int64_t lower,
                                                std::int64_t upper);

struct ConstraintRange {
  std::int64_t lower = 0;  // bounds of the integerized expression
  std::int64_t upper = 0;
  std::int64_t scale = 1;  // LCM used to clear denominators
  std::uint64_t required = 1;  // p must exceed this...
  std::int64_t modulus = 0;    // ...or equal this modulus (0 for none)
};

struct PrimePlan {
  std::uint64_t p = 2;
  std::vector<ConstraintRange> constraints;
  std::vector<std::pair<std::int64_t, std::int64_t>> variables;
};

// Smallest prime that encodes every constraint exactly and exceeds every
// variable width. Throws InvalidArgument on an unbounded variable or a
// nonlinear constraint.
PrimePlan plan_prime(const ConstraintModel& model);

struct VariableMapEntry {
  int source = 0;  // variable id in the source model, -1 for aux
  int target = 0;  // variable id in the Max-LINSAT instance
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

struct TransformCertificate {
  std::uint64_t p = 2;
  Rational scale{1};
  Rational offset{0};
  std::vector<VariableMapEntry> variables;
  std::vector<AuxVariable> aux;
  std::int64_t penalty_weight = 0;  // per product definition, target units
  std::int64_t range_weight = 0;    // per range constraint, target units
  std::int64_t unweighted_gcd = 1;
  std::int64_t unweighted_offset = 0;

  // source_score = target_weight / scale + source_constant().
  Rational source_constant() const { return -offset / scale; }
  Rational source_score(std::int64_t target_weight) const {
    return (Rational(target_weight) - offset) / scale;
  }
};

struct ModularLowering {
  LinsatInstance instance;
  TransformCertificate certificate;
  std::size_t range_constraints = 0;
  std::size_t folded_constraints = 0;   // always satisfied in range
  std::size_t dropped_constraints = 0;  // never satisfied
  std::size_t staged_rows = 0;          // rows before merging
  std::size_t objective_sets = 0;
  std::size_t expanded_variables = 0;
  std::size_t nonbinary_expanded = 0;
};

// `model` must be linear (output of lower_polynomials). Throws
// InvalidArgument when the plan prime is too small for the model.
ModularLowering lower_to_modular(const ConstraintModel& model,
                                 const PrimePlan& plan);

// Maps a source assignment (plus aux values computed from their products)
// into F_p^n, and back.
gf::Vector encode_assignment(const TransformCertificate& cert,
                             std::span<const std::int64_t> source);
std::vector<std::int64_t> decode_assignment(const TransformCertificate& cert,
                                            std::span<const gf::Residue> y);

struct RoundResult {
  LinsatInstance instance;
  double max_relative_error = 0;
  std::int64_t dropped_weight = 0;  // weight that became constant
};

// Replaces every weight by the nearest positive multiple of d; exact
// halves round up, and nothing drops below d.
RoundResult round_weights(const LinsatInstance& inst, std::int64_t d);

struct EqualizeOptions {
  bool pad = false;
  // Largest in-range value of each variable (u - l); variables beyond the
  // vector are treated as free over F_q. Needed for padding.
  std::vector<std::int64_t> widths;
  // Padding looks for unattainable values only when q * sum(widths) is
  // below this.
  std::uint64_t attainable_limit = 10'000'000;
};

struct EqualizeResult {
  LinsatInstance instance;
  std::size_t set_size = 0;  // common |F_i|, 0 for an empty instance
  std::size_t split_rows = 0;
  std::size_t padded_rows = 0;
  std::int64_t offset = 0;  // from duplicate repair after splitting
};

// Gives every right-hand side a common size d. Rows that already share one
// size keep it; with padding, smaller sets may grow to the largest size
// using values no in-range assignment attains. Otherwise every set is split
// into singletons, and the duplicate rows this creates are repaired with
// distance gadgets, whose pinning rows are singletons as well. `inst` must
// be unweighted.
EqualizeResult equalize_set_sizes(const LinsatInstance& inst,
                                  const EqualizeOptions& options = {});

struct EdgeReport {
  std::string edge;
  std::vector<std::string> categories;
  std::map<std::string, std::int64_t> counts;
};

struct TransformDiagnostics {
  std::vector<EdgeReport> edges;
  DependencyReport dependencies;  // on the weighted instance
  std::size_t set_size = 0;
};

struct PipelineOptions {
  LoweringOptions lowering;
  bool pad_sets = false;
  std::size_t dependency_cap = 3;
  std::size_t max_dependency_reports = 64;
};

struct PipelineResult {
  LinsatInstance weighted;
  LinsatInstance unweighted;
  TransformCertificate certificate;
  TransformDiagnostics diagnostics;
};

PipelineResult full_pipeline(const ConstraintModel& model,
                             const PipelineOptions& options = {});

}  // namespace maxlin

#endif  // MAXLIN_TRANSFORM_HPP_
