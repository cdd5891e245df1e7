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

#include "maxlin/io.hpp"

#include <fstream>
#include <sstream>

#include "maxlin/error.hpp"

namespace maxlin {
namespace {

std::string at(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}
std::string at(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& field(const Json& j, std::string_view key,
                  const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(at(path, key), "missing required field");
  }
  return *it;
}

const Json* optional_field(const Json& j, std::string_view key,
                           const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const Json& array_field(const Json& j, std::string_view key,
                        const std::string& path) {
  const Json& a = field(j, key, path);
  if (!a.is_array()) throw SchemaError(at(path, key), "expected an array");
  return a;
}

std::int64_t to_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  if (j.is_number_unsigned() &&
      j.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw SchemaError(path, "integer out of range");
  }
  return j.get<std::int64_t>();
}

std::int64_t int_field(const Json& j, std::string_view key,
                       const std::string& path) {
  return to_int(field(j, key, path), at(path, key));
}

std::string string_field(const Json& j, std::string_view key,
                         const std::string& path) {
  const Json& s = field(j, key, path);
  if (!s.is_string()) throw SchemaError(at(path, key), "expected a string");
  return s.get<std::string>();
}

// Runs fn, turning library validation errors into schema errors at path.
template <typename Fn>
auto guarded(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw SchemaError(path, e.what());
  }
}

gf::Residue residue(const Json& j, const std::string& path) {
  std::int64_t v = to_int(j, path);
  if (v < 0 || static_cast<std::uint64_t>(v) > gf::kMaxOrder) {
    throw SchemaError(path, "field element out of range");
  }
  return static_cast<gf::Residue>(v);
}

Json bound_to_json(std::int64_t v, std::int64_t unbounded) {
  return v == unbounded ? Json(nullptr) : Json(v);
}

std::string kind_name(ObjectiveKind k) {
  return k == ObjectiveKind::kObjective ? "objective" : "boolean_constraint";
}

ObjectiveKind parse_objective_kind(const std::string& s,
                                   const std::string& path) {
  if (s == "objective") return ObjectiveKind::kObjective;
  if (s == "boolean_constraint") return ObjectiveKind::kBooleanConstraint;
  throw SchemaError(path, "unknown objective kind '" + s + "'");
}

std::string merge_mode_name(MergeMode m) {
  switch (m) {
    case MergeMode::kScaled: return "scaled";
    case MergeMode::kLiteral: return "literal";
    case MergeMode::kNone: return "none";
  }
  return "scaled";
}

MergeMode parse_merge_mode(const std::string& s, const std::string& path) {
  if (s == "scaled") return MergeMode::kScaled;
  if (s == "literal") return MergeMode::kLiteral;
  if (s == "none") return MergeMode::kNone;
  throw SchemaError(path, "unknown merge mode '" + s + "'");
}

IntExpr expr_from_json(const Json& j, const ConstraintModel& model,
                       const std::string& path) {
  Rational constant = rational_from_json(field(j, "constant", path),
                                         at(path, "constant"));
  std::map<IntMonomial, Rational> terms;
  std::map<int, VarDomain> domains;
  const Json& ts = array_field(j, "terms", path);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string tp = at(at(path, "terms"), i);
    Rational coef = rational_from_json(field(ts[i], "coef", tp), at(tp, "coef"));
    const Json& fs = array_field(ts[i], "factors", tp);
    std::vector<std::pair<int, int>> factors;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const std::string fp = at(at(tp, "factors"), k);
      std::int64_t id = int_field(fs[k], "var", fp);
      std::int64_t power = int_field(fs[k], "power", fp);
      if (id < 0 || static_cast<std::size_t>(id) >= model.variables().size()) {
        throw SchemaError(at(fp, "var"), "unknown variable id");
      }
      if (power < 1 || power > 64) {
        throw SchemaError(at(fp, "power"), "power must lie in [1, 64]");
      }
      const IntVar& v = model.variable(static_cast<int>(id));
      domains[v.id] = {v.lower, v.upper};
      factors.emplace_back(v.id, static_cast<int>(power));
    }
    if (factors.empty()) {
      throw SchemaError(at(tp, "factors"), "term needs at least one factor");
    }
    terms[IntMonomial(factors)] += coef;
  }
  return guarded(path, [&] {
    return IntExpr::from_terms(std::move(terms), constant, std::move(domains));
  });
}

Json int_set(const std::set<int>& s) {
  Json a = Json::array();
  for (int v : s) a.push_back(v);
  return a;
}

}  // namespace

std::string to_string(ProblemKind k) {
  return k == ProblemKind::kConstraint ? "constraint" : "linsat";
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(to_int(j, path));
  if (!j.is_string()) {
    throw SchemaError(path, "expected a rational string \"num/den\"");
  }
  return guarded(path, [&] { return parse_rational(j.get<std::string>()); });
}

Json expr_to_json(const IntExpr& e) {
  Json terms = Json::array();
  for (const auto& [mono, coef] : e.terms()) {
    Json factors = Json::array();
    for (const auto& [id, power] : mono.factors()) {
      factors.push_back({{"var", id}, {"power", power}});
    }
    terms.push_back({{"coef", rational_to_json(coef)}, {"factors", factors}});
  }
  return {{"constant", rational_to_json(e.constant())}, {"terms", terms}};
}

Json model_to_json(const ConstraintModel& model) {
  Json vars = Json::array();
  for (const IntVar& v : model.variables()) {
    vars.push_back({{"name", v.name},
                    {"lower", bound_to_json(v.lower, kUnboundedLower)},
                    {"upper", bound_to_json(v.upper, kUnboundedUpper)}});
  }
  Json objectives = Json::array();
  for (const Objective& o : model.objectives()) {
    objectives.push_back({{"expr", expr_to_json(o.expr)},
                          {"weight", rational_to_json(o.weight)},
                          {"kind", kind_name(o.kind)}});
  }
  Json constraints = Json::array();
  for (const IntConstraint& c : model.constraints()) {
    constraints.push_back(
        {{"expr", expr_to_json(c.expr)},
         {"relation", to_string(c.relation)},
         {"modulus", c.modulus ? Json(*c.modulus) : Json(nullptr)},
         {"weight", rational_to_json(c.weight)},
         {"role", to_string(c.role)},
         {"group", c.group}});
  }
  return {{"variables", vars},
          {"objectives", objectives},
          {"constraints", constraints}};
}

ConstraintModel model_from_json(const Json& j, const std::string& path) {
  ConstraintModel model;
  const Json& vars = array_field(j, "variables", path);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string vp = at(at(path, "variables"), i);
    std::string name = string_field(vars[i], "name", vp);
    const Json* lo = optional_field(vars[i], "lower", vp);
    const Json* hi = optional_field(vars[i], "upper", vp);
    std::int64_t lower = lo ? to_int(*lo, at(vp, "lower")) : kUnboundedLower;
    std::int64_t upper = hi ? to_int(*hi, at(vp, "upper")) : kUnboundedUpper;
    guarded(vp, [&] { return model.new_var(name, lower, upper); });
  }
  const Json& objs = array_field(j, "objectives", path);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string op = at(at(path, "objectives"), i);
    Objective o;
    o.expr = expr_from_json(field(objs[i], "expr", op), model, at(op, "expr"));
    o.weight = rational_from_json(field(objs[i], "weight", op), at(op, "weight"));
    o.kind = parse_objective_kind(string_field(objs[i], "kind", op),
                                  at(op, "kind"));
    guarded(op, [&] {
      model.add_raw_objective(std::move(o));
      return 0;
    });
  }
  const Json& cons = array_field(j, "constraints", path);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::string cp = at(at(path, "constraints"), i);
    IntConstraint c;
    c.expr = expr_from_json(field(cons[i], "expr", cp), model, at(cp, "expr"));
    std::string rel = string_field(cons[i], "relation", cp);
    c.relation = guarded(at(cp, "relation"), [&] { return parse_relation(rel); });
    if (const Json* m = optional_field(cons[i], "modulus", cp)) {
      c.modulus = to_int(*m, at(cp, "modulus"));
    }
    c.weight = rational_from_json(field(cons[i], "weight", cp), at(cp, "weight"));
    std::string role = string_field(cons[i], "role", cp);
    c.role = guarded(at(cp, "role"), [&] { return parse_constraint_role(role); });
    c.group = static_cast<int>(int_field(cons[i], "group", cp));
    guarded(cp, [&] { return model.add_constraint(std::move(c)); });
  }
  guarded(path, [&] {
    model.validate();
    return 0;
  });
  return model;
}

Json instance_to_json(const LinsatInstance& inst) {
  Json vars = Json::array();
  for (const LinsatVar& v : inst.variables()) vars.push_back({{"name", v.name}});
  Json rows = Json::array();
  for (const LinsatConstraint& c : inst.constraints()) {
    Json terms = Json::array();
    for (const auto& [id, b] : c.expr) terms.push_back({{"var", id}, {"coef", b}});
    Json rhs = Json::array();
    for (const auto& [v, w] : c.rhs) rhs.push_back({{"value", v}, {"weight", w}});
    rows.push_back({{"terms", terms}, {"rhs", rhs}, {"groups", int_set(c.groups)}});
  }
  return {{"q", inst.q()},
          {"merge_mode", merge_mode_name(inst.merge_mode())},
          {"variables", vars},
          {"constraints", rows}};
}

LinsatInstance instance_from_json(const Json& j, const std::string& path) {
  std::int64_t q = int_field(j, "q", path);
  if (q < 2) throw SchemaError(at(path, "q"), "field order must be >= 2");
  gf::FieldOrder order = guarded(at(path, "q"), [&] {
    return gf::FieldOrder(static_cast<std::uint64_t>(q));
  });
  MergeMode mode = MergeMode::kScaled;
  if (const Json* m = optional_field(j, "merge_mode", path)) {
    if (!m->is_string()) {
      throw SchemaError(at(path, "merge_mode"), "expected a string");
    }
    mode = parse_merge_mode(m->get<std::string>(), at(path, "merge_mode"));
  }
  LinsatInstance inst(order, mode);
  const Json& vars = array_field(j, "variables", path);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    inst.add_variable(string_field(vars[i], "name", at(at(path, "variables"), i)));
  }
  const Json& rows = array_field(j, "constraints", path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = at(at(path, "constraints"), i);
    LinsatExpr expr;
    const Json& terms = array_field(rows[i], "terms", rp);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string tp = at(at(rp, "terms"), k);
      std::int64_t id = int_field(terms[k], "var", tp);
      if (id < 0 || static_cast<std::size_t>(id) >= inst.num_variables()) {
        throw SchemaError(at(tp, "var"), "unknown variable id");
      }
      if (expr.contains(static_cast<int>(id))) {
        throw SchemaError(at(tp, "var"), "variable repeated in a row");
      }
      expr[static_cast<int>(id)] = residue(field(terms[k], "coef", tp), at(tp, "coef"));
    }
    std::vector<std::pair<gf::Residue, std::int64_t>> members;
    const Json& rhs = array_field(rows[i], "rhs", rp);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      const std::string mp = at(at(rp, "rhs"), k);
      members.emplace_back(residue(field(rhs[k], "value", mp), at(mp, "value")),
                           int_field(rhs[k], "weight", mp));
    }
    std::set<int> groups;
    if (const Json* g = optional_field(rows[i], "groups", rp)) {
      if (!g->is_array()) throw SchemaError(at(rp, "groups"), "expected an array");
      for (std::size_t k = 0; k < g->size(); ++k) {
        groups.insert(static_cast<int>(to_int((*g)[k], at(at(rp, "groups"), k))));
      }
    }
    guarded(rp, [&] { return inst.add_constraint(expr, members, groups); });
  }
  return inst;
}

Json problem_to_json(const ProblemFile& file) {
  Json meta = Json::object();
  for (const auto& [k, v] : file.metadata) meta[k] = v;
  Json payload = file.kind() == ProblemKind::kConstraint
                     ? model_to_json(std::get<ConstraintModel>(file.payload))
                     : instance_to_json(std::get<LinsatInstance>(file.payload));
  return {{"format_version", file.format_version},
          {"kind", to_string(file.kind())},
          {"metadata", meta},
          {"payload", payload}};
}

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  std::int64_t version = int_field(j, "format_version", "");
  if (version != kFormatVersion) {
    throw SchemaError("/format_version",
                      "unsupported format version " + std::to_string(version));
  }
  ProblemFile file;
  file.format_version = static_cast<int>(version);
  if (const Json* meta = optional_field(j, "metadata", "")) {
    if (!meta->is_object()) throw SchemaError("/metadata", "expected an object");
    for (const auto& [k, v] : meta->items()) {
      if (!v.is_string()) throw SchemaError("/metadata/" + k, "expected a string");
      file.metadata[k] = v.get<std::string>();
    }
  }
  std::string kind = string_field(j, "kind", "");
  const Json& payload = field(j, "payload", "");
  if (kind == "constraint") {
    file.payload = model_from_json(payload, "/payload");
  } else if (kind == "linsat") {
    file.payload = instance_from_json(payload, "/payload");
  } else {
    throw SchemaError("/kind", "expected \"constraint\" or \"linsat\", got \"" +
                                   kind + "\"");
  }
  return file;
}

ProblemFile parse_problem(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError("line " + std::to_string(line) + ", column " +
                          std::to_string(col),
                      "malformed JSON");
  }
  return problem_from_json(j);
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void save_problem(const std::filesystem::path& path, const ProblemFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << dump_canonical(problem_to_json(file));
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

gf::Residue element(const Json& j, gf::FieldOrder q, const std::string& path) {
  gf::Residue v = residue(j, path);
  if (v >= q.value()) throw SchemaError(path, "field element out of range");
  return v;
}

}  // namespace

Json gadget_to_json(const Gadget& g) {
  Json rows = Json::array();
  for (const GadgetConstraint& c : g.constraints) {
    rows.push_back({{"coefficients", c.coefficients},
                    {"members", c.members},
                    {"weight", c.weight}});
  }
  return {{"name", g.name},
          {"q", g.order.value()},
          {"arity", g.arity},
          {"aux", g.aux},
          {"kind", to_string(g.kind)},
          {"table", g.table.to_string()},
          {"s_yes", g.s_yes},
          {"s_no", g.s_no},
          {"constraints", rows}};
}

Gadget gadget_from_json(const Json& j, const std::string& path) {
  Gadget g;
  g.name = string_field(j, "name", path);
  std::int64_t q = int_field(j, "q", path);
  g.order = guarded(at(path, "q"), [&] {
    if (q < 2) throw InvalidArgument("field order must be >= 2");
    return gf::FieldOrder(static_cast<std::uint64_t>(q));
  });
  g.arity = static_cast<int>(int_field(j, "arity", path));
  g.aux = static_cast<int>(int_field(j, "aux", path));
  std::string kind = string_field(j, "kind", path);
  g.kind = guarded(at(path, "kind"), [&] { return parse_gadget_kind(kind); });
  std::string table = string_field(j, "table", path);
  g.table = guarded(at(path, "table"), [&] { return TruthTable::parse(table); });
  g.s_yes = int_field(j, "s_yes", path);
  g.s_no = int_field(j, "s_no", path);
  const Json& rows = array_field(j, "constraints", path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = at(at(path, "constraints"), i);
    GadgetConstraint c;
    const Json& coefs = array_field(rows[i], "coefficients", rp);
    for (std::size_t k = 0; k < coefs.size(); ++k) {
      c.coefficients.push_back(
          element(coefs[k], g.order, at(at(rp, "coefficients"), k)));
    }
    const Json& members = array_field(rows[i], "members", rp);
    for (std::size_t k = 0; k < members.size(); ++k) {
      c.members.push_back(element(members[k], g.order, at(at(rp, "members"), k)));
    }
    c.weight = int_field(rows[i], "weight", rp);
    g.constraints.push_back(std::move(c));
  }
  guarded(path, [&] {
    verify_gadget(g);
    return 0;
  });
  return g;
}

Json certificate_to_json(const TransformCertificate& cert) {
  Json vars = Json::array();
  for (const VariableMapEntry& e : cert.variables) {
    vars.push_back({{"source", e.source},
                    {"target", e.target},
                    {"name", e.name},
                    {"lower", e.lower},
                    {"upper", e.upper}});
  }
  Json aux = Json::array();
  for (const AuxVariable& a : cert.aux) {
    aux.push_back({{"id", a.id},
                   {"left", a.left},
                   {"right", a.right},
                   {"support", a.support}});
  }
  return {{"p", cert.p},
          {"scale", rational_to_json(cert.scale)},
          {"offset", rational_to_json(cert.offset)},
          {"source_constant", rational_to_json(cert.source_constant())},
          {"variables", vars},
          {"aux", aux},
          {"penalty_weight", cert.penalty_weight},
          {"range_weight", cert.range_weight},
          {"unweighted_gcd", cert.unweighted_gcd},
          {"unweighted_offset", cert.unweighted_offset}};
}

Json dependency_report_to_json(const DependencyReport& report) {
  Json sets = Json::array();
  for (const DependentSet& s : report.sets) {
    sets.push_back({{"rows", s.rows}, {"pattern", to_string(s.pattern)}});
  }
  Json counts = Json::object();
  for (DependencyPattern p :
       {DependencyPattern::kDuplicate, DependencyPattern::kAndOrGadget,
        DependencyPattern::kCycle, DependencyPattern::kOther}) {
    counts[to_string(p)] = report.count(p);
  }
  return {{"cap", report.cap},
          {"truncated", report.truncated},
          {"sets", sets},
          {"counts", counts}};
}

Json diagnostics_to_json(const TransformDiagnostics& diag) {
  Json edges = Json::array();
  for (const EdgeReport& e : diag.edges) {
    Json counts = Json::object();
    for (const auto& [k, v] : e.counts) counts[k] = v;
    edges.push_back(
        {{"edge", e.edge}, {"categories", e.categories}, {"counts", counts}});
  }
  return {{"edges", edges},
          {"dependencies", dependency_report_to_json(diag.dependencies)},
          {"set_size", diag.set_size}};
}

Json distance_to_json(const DistanceResult& d) {
  std::string kind = "exact";
  if (d.kind == DistanceResult::Kind::kAboveCap) kind = "above_cap";
  if (d.kind == DistanceResult::Kind::kNoCodewords) kind = "no_codewords";
  return {{"kind", kind},
          {"value", d.kind == DistanceResult::Kind::kNoCodewords
                        ? Json(nullptr)
                        : Json(d.value)},
          {"method", d.method}};
}

Json solve_result_to_json(const SolveResult& r, bool include_timing) {
  Json j = {{"solver", r.solver},
            {"assignment", r.assignment},
            {"weight", r.weight},
            {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
            {"diagnostic", r.diagnostic}};
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

Json estimate_to_json(const DqiEstimate& e) {
  return {{"l", e.l},
          {"coefficients", e.polynomial.coefficients},
          {"expected", e.expected},
          {"uniform_expected", e.uniform_expected},
          {"normalization", e.normalization},
          {"total_weight", e.total_weight},
          {"d_min", distance_to_json(e.distance)},
          {"decoder", e.decoder},
          {"feasibility", e.feasibility.fraction},
          {"feasibility_standard_error", e.feasibility.standard_error},
          {"mode", to_string(e.feasibility.mode)},
          {"samples", e.feasibility.patterns},
          {"decoded", e.feasibility.decoded},
          {"seed", e.feasibility.mode == FeasibilityMode::kSampled
                       ? Json(e.feasibility.seed)
                       : Json(nullptr)},
          {"regime", to_string(e.regime)},
          {"diagnostic", e.diagnostic}};
}

}  // namespace maxlin
