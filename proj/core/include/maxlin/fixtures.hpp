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

// Small reference problems shared by tests, benchmarks and the CLI.

#ifndef MAXLIN_FIXTURES_HPP_
#define MAXLIN_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxlin/io.hpp"
#include "maxlin/linsat.hpp"
#include "maxlin/model.hpp"

namespace maxlin {

using Edge = std::pair<int, int>;

// Binary items; the capacity constraint weighs 2 * sum(values), so no
// optimum overfills the knapsack.
ConstraintModel knapsack_model(const std::vector<std::int64_t>& values,
                               const std::vector<std::int64_t>& weights,
                               std::int64_t capacity);

// Minimize the cover size; each edge is a Boolean constraint x_u | x_v of
// weight 2.
ConstraintModel vertex_cover_model(int nodes, const std::vector<Edge>& edges);

// Colours in {0, ..., colours - 1}; one x_u != x_v constraint per edge.
ConstraintModel colouring_model(int nodes, const std::vector<Edge>& edges,
                                int colours = 3);

// x_u - x_v in F_q \ {0} per edge.
LinsatInstance colouring_instance(int nodes, const std::vector<Edge>& edges,
                                  std::uint64_t q = 3);

// x_u + x_v = 1 over GF(2) per edge.
LinsatInstance maxcut_instance(int nodes, const std::vector<Edge>& edges);

// The AND gadget on two inputs.
LinsatInstance and_gadget_instance();

// Three rows x0, x1, x0 + x1 over GF(2): the dual code is the length-3
// repetition code.
LinsatInstance repetition3_instance();

// Row x0 = 1 twice plus x1 = 1, kept unmerged: d_min = 2.
LinsatInstance duplicate_rows_instance();

const std::vector<std::string>& fixture_names();
// Throws InvalidArgument on an unknown name.
ProblemFile make_fixture(std::string_view name);

}  // namespace maxlin

#endif  // MAXLIN_FIXTURES_HPP_
