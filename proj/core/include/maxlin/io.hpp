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

// JSON interchange. Objects are emitted with sorted keys and rationals as
// "num/den" strings, so serialization is byte-stable. Load errors are
// SchemaError carrying a JSON pointer to the offending field.

#ifndef MAXLIN_IO_HPP_
#define MAXLIN_IO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "maxlin/codes.hpp"
#include "maxlin/dqi.hpp"
#include "maxlin/gadgets.hpp"
#include "maxlin/linsat.hpp"
#include "maxlin/model.hpp"
#include "maxlin/rational.hpp"
#include "maxlin/solvers.hpp"
#include "maxlin/transform.hpp"

namespace maxlin {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

enum class ProblemKind { kConstraint, kLinsat };
std::string to_string(ProblemKind k);

struct ProblemFile {
  int format_version = kFormatVersion;
  std::map<std::string, std::string> metadata;  // e.g. name, provenance
  std::variant<ConstraintModel, LinsatInstance> payload;

  ProblemKind kind() const {
    return payload.index() == 0 ? ProblemKind::kConstraint
                                : ProblemKind::kLinsat;
  }
};

// Pretty-printed with two-space indent and a trailing newline.
std::string dump_canonical(const Json& j);

Json rational_to_json(const Rational& r);
// Accepts "n/d", "n", or a JSON integer.
Rational rational_from_json(const Json& j, const std::string& path);

Json expr_to_json(const IntExpr& e);
Json model_to_json(const ConstraintModel& model);
ConstraintModel model_from_json(const Json& j, const std::string& path = "");
Json instance_to_json(const LinsatInstance& inst);
LinsatInstance instance_from_json(const Json& j, const std::string& path = "");

Json problem_to_json(const ProblemFile& file);
ProblemFile problem_from_json(const Json& j);
// Throws SchemaError on malformed JSON (path names the line and column)
// or on schema violations.
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);
void save_problem(const std::filesystem::path& path, const ProblemFile& file);

Json gadget_to_json(const Gadget& g);
Gadget gadget_from_json(const Json& j, const std::string& path = "");

Json certificate_to_json(const TransformCertificate& cert);
Json diagnostics_to_json(const TransformDiagnostics& diag);
Json dependency_report_to_json(const DependencyReport& report);
Json distance_to_json(const DistanceResult& d);
Json solve_result_to_json(const SolveResult& r, bool include_timing = false);
Json estimate_to_json(const DqiEstimate& e);

}  // namespace maxlin

#endif  // MAXLIN_IO_HPP_
