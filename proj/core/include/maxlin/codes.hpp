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

// The code C = { y : B^T y = 0 } attached to a Max-LINSAT instance with
// constraint matrix B (m x n). Codewords have length m; the parity-check
// matrix is H = B^T, so a set of columns of H (rows of B) is dependent
// exactly when it supports a codeword.

#ifndef MAXLIN_CODES_HPP_
#define MAXLIN_CODES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "maxlin/gf.hpp"
#include "maxlin/linsat.hpp"

namespace maxlin {

inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1}
                                                          << 22;
inline constexpr std::size_t kDefaultDependencyCap = 6;

struct CodeView {
  gf::FieldMatrix parity_check;  // H = B^T, n x m
  std::size_t length = 0;        // m
  std::size_t rank = 0;          // rank(H)
  std::size_t dimension = 0;     // k = m - rank

  static CodeView from_matrix(const gf::FieldMatrix& b);
  static CodeView from_instance(const LinsatInstance& inst);

  std::uint64_t q() const { return parity_check.order().value(); }
  // H e for an error vector of length m.
  gf::Vector syndrome(std::span<const gf::Residue> e) const {
    return parity_check.multiply(e);
  }
};

struct DistanceResult {
  enum class Kind {
    kExact,        // value is d_min
    kAboveCap,     // d_min > value
    kNoCodewords,  // k = 0
  };
  Kind kind = Kind::kNoCodewords;
  std::size_t value = 0;
  std::string method;
};

// Smallest d <= cap such that some d columns of H are dependent, or
// nullopt. Throws GuardExceeded when more than `budget` subsets would be
// examined.
std::optional<std::size_t> min_distance_by_subsets(
    const CodeView& view, std::size_t cap, std::uint64_t budget = 50'000'000);

// Smallest weight of a nonzero codeword, enumerating all q^k messages;
// nullopt when k = 0. Throws GuardExceeded when q^k > limit.
std::optional<std::size_t> min_distance_by_enumeration(
    const CodeView& view, std::uint64_t limit = kDefaultEnumerationLimit);

// Enumeration when q^k <= limit, subset search up to `cap` otherwise.
DistanceResult min_distance(const CodeView& view,
                            std::size_t cap = kDefaultDependencyCap,
                            std::uint64_t limit = kDefaultEnumerationLimit);

enum class DependencyPattern { kDuplicate, kAndOrGadget, kCycle, kOther };
std::string to_string(DependencyPattern p);

struct DependentSet {
  std::vector<std::size_t> rows;  // sorted
  DependencyPattern pattern = DependencyPattern::kOther;
};

struct DependencyReport {
  std::vector<DependentSet> sets;
  std::size_t cap = 0;
  bool truncated = false;  // stopped at max_reports

  std::size_t count(DependencyPattern p) const;
};

// Minimal dependent sets of rows of B with at most `cap` rows, in order of
// size then lexicographic row order. `groups[i]` are provenance tags of row
// i (may be empty). Three rows sharing a tag are classified as a Boolean
// gadget.
DependencyReport find_dependent_row_sets(
    const gf::FieldMatrix& b, std::size_t cap,
    const std::vector<std::set<int>>& groups = {},
    std::size_t max_reports = 1000);
DependencyReport find_dependent_row_sets(const LinsatInstance& inst,
                                         std::size_t cap,
                                         std::size_t max_reports = 1000);

// Codeword count per Hamming weight, by enumerating all q^k messages.
// Throws GuardExceeded when q^k > limit.
std::map<std::size_t, std::uint64_t> weight_enumerator(
    const CodeView& view, std::uint64_t limit = kDefaultEnumerationLimit);

// Calls fn on every codeword (including zero). Throws GuardExceeded when
// q^k > limit.
void for_each_codeword(
    const CodeView& view, std::uint64_t limit,
    const std::function<void(std::span<const gf::Residue>)>& fn);

}  // namespace maxlin

#endif  // MAXLIN_CODES_HPP_
