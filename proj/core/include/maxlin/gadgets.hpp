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

// Gadgets: small Max-LINSAT templates that encode a Boolean function of
// their input slots, plus the distance gadget that lengthens a linear
// dependency at the price of fresh variables.
//
// For a gadget g and an input row r in {0,1}^n let s(r) be the largest
// satisfied weight over all values of the aux variables. An exact gadget has
// s(r) = s_yes on true rows and s(r) = s_no < s_yes on every false row. An
// approximate gadget keeps s(r) = s_yes on true rows but only requires
// s(r) < s_yes on false rows; s_no then reports the largest false-row value.

#ifndef MAXLIN_GADGETS_HPP_
#define MAXLIN_GADGETS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxlin/gf.hpp"
#include "maxlin/linsat.hpp"

namespace maxlin {

enum class GadgetKind { kExact, kApproximate };

std::string to_string(GadgetKind k);
GadgetKind parse_gadget_kind(std::string_view name);

struct GadgetConstraint {
  // One coefficient per slot: inputs first, then aux variables.
  std::vector<gf::Residue> coefficients;
  std::vector<gf::Residue> members;  // sorted, distinct
  std::int64_t weight = 1;
};

// Truth table over n inputs; row index r encodes inputs with x[0] as the
// most significant bit, so "0001" is AND of two inputs.
struct TruthTable {
  int arity = 0;
  std::vector<bool> rows;  // size 2^arity

  // Parses a string of 2^n characters '0'/'1'.
  static TruthTable parse(std::string_view bits);
  std::string to_string() const;
  bool value(std::size_t row) const { return rows[row]; }
};

struct Gadget {
  std::string name;
  gf::FieldOrder order{2};
  int arity = 0;
  int aux = 0;
  std::vector<GadgetConstraint> constraints;
  std::int64_t s_yes = 0;
  std::int64_t s_no = 0;
  GadgetKind kind = GadgetKind::kExact;
  TruthTable table;
};

struct GadgetProfile {
  // Best satisfied weight per Boolean input row, maximized over aux values.
  std::vector<std::int64_t> row_best;
  std::int64_t s_yes = 0;
  std::int64_t s_no = 0;
  bool valid = false;
};

// Exhaustive evaluation over all Boolean input rows and every aux value in
// F_q. `valid` tells whether the template meets the requested kind.
GadgetProfile profile_gadget(const gf::FieldOrder& order, int arity, int aux,
                             const std::vector<GadgetConstraint>& constraints,
                             const TruthTable& table, GadgetKind kind);

// Re-runs profile_gadget and checks the declared s_yes/s_no. Throws
// InvalidArgument when they disagree.
void verify_gadget(const Gadget& g);

// Adds the template to `inst` with fresh aux variables; weights are
// multiplied by `scale`. All emitted rows share one new provenance group.
// Throws InvalidArgument on arity or field mismatch.
std::vector<std::size_t> instantiate(const Gadget& g, LinsatInstance& inst,
                                     const std::vector<int>& inputs,
                                     std::int64_t scale = 1);

// Library over GF(2). `or_gadget(n)` uses all 2^n - 1 parities b.x = 1.
Gadget not_gadget();
Gadget and_gadget();
Gadget or_gadget(int n = 2);
Gadget xor_gadget();
// Approximate majority of three inputs, found by synthesize_gadget.
const Gadget& majority3_gadget();

struct SynthesisOptions {
  int max_constraints = 3;
  int aux = 0;
  GadgetKind kind = GadgetKind::kExact;
  // Abort when C(#candidates, max_constraints) exceeds this.
  std::uint64_t search_cap = 10'000'000;
};

// Exhaustive search in order of increasing constraint count, then
// lexicographic over candidate rows (canonical coefficient vector, member
// set). Candidate rows use unit weight and pairwise distinct left-hand
// sides. Returns the first template meeting the kind, or nullopt. Throws
// GuardExceeded when the search space is above the cap.
std::optional<Gadget> synthesize_gadget(const TruthTable& table,
                                        const gf::FieldOrder& order,
                                        const SynthesisOptions& options);

struct DistanceGadgetResult {
  std::vector<int> aux_vars;
  std::vector<std::size_t> aux_rows;
  // Constant added to the optimum: for every x,
  //   max_y new_f(x, y) = old_f(x) + offset.
  std::int64_t offset = 0;
};

// Adds k fresh variables y to row i (b_i.x becomes b_i.x + sum y) and k
// pinning rows y_j in {0}, each weighted with the largest weight of row i.
// Throws InvalidArgument on a bad index or negative k.
DistanceGadgetResult distance_gadget(LinsatInstance& inst, std::size_t i,
                                     int k);

struct RepairResult {
  std::size_t repaired_rows = 0;
  std::int64_t offset = 0;
};

// Applies distance_gadget with k = 1 to every row whose canonical left-hand
// side already occurred earlier in the instance.
RepairResult repair_duplicates(LinsatInstance& inst);

}  // namespace maxlin

#endif  // MAXLIN_GADGETS_HPP_
