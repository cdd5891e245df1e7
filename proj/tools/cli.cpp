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

#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "maxlin/codes.hpp"
#include "maxlin/dqi.hpp"
#include "maxlin/error.hpp"
#include "maxlin/fixtures.hpp"
#include "maxlin/gadgets.hpp"
#include "maxlin/io.hpp"
#include "maxlin/solvers.hpp"
#include "maxlin/transform.hpp"

namespace maxlin::cli {
namespace {

struct TransformArgs {
  std::string input;
  std::string out;
  std::string unweighted_out;
  bool pad = false;
  int degree_threshold = 4;
};

struct AnalyzeArgs {
  std::string input;
  std::size_t dmin_cap = kDefaultDependencyCap;
  std::size_t dep_cap = 3;
  std::size_t max_reports = 64;
  bool histogram = false;
};

struct SolveArgs {
  std::string input;
  std::string solver = "brute";
  std::optional<std::uint64_t> seed;
  std::size_t restarts = 1;
  std::optional<std::uint64_t> steps;
  unsigned threads = 0;
  bool timing = false;
};

struct EstimateArgs {
  std::string input;
  std::optional<std::size_t> l;
  std::string decoder = "auto";
  std::optional<std::size_t> samples;
  std::string mode = "auto";
  std::uint64_t seed = 0;
  std::size_t isd_iterations = kDefaultIsdIterations;
  unsigned threads = 0;
};

struct GadgetArgs {
  std::string table;
  std::uint64_t q = 2;
  int max_constraints = 3;
  int aux = 0;
  bool approximate = false;
  std::uint64_t cap = 10'000'000;
};

struct FixtureArgs {
  std::string name;
  std::string out;
  bool list = false;
};

PipelineResult run_pipeline(const ConstraintModel& model, bool pad = false,
                            int degree_threshold = 4) {
  PipelineOptions opt;
  opt.pad_sets = pad;
  opt.lowering.degree_threshold = degree_threshold;
  return full_pipeline(model, opt);
}

Json instance_summary(const LinsatInstance& inst) {
  return {{"q", inst.q()},
          {"n", inst.num_variables()},
          {"m", inst.num_constraints()},
          {"total_weight", inst.total_weight()},
          {"unweighted", inst.is_unweighted()}};
}

ProblemFile as_problem(const LinsatInstance& inst, const ProblemFile& source,
                       const std::string& stage) {
  ProblemFile f;
  f.metadata = source.metadata;
  f.metadata["provenance"] = stage + " image of " +
                             (source.metadata.contains("name")
                                  ? source.metadata.at("name")
                                  : std::string("input"));
  f.payload = inst;
  return f;
}

int do_transform(const TransformArgs& a, std::ostream& out) {
  ProblemFile file = load_problem(a.input);
  if (file.kind() != ProblemKind::kConstraint) {
    throw InvalidArgument("transform expects a constraint model; " + a.input +
                          " already holds a Max-LINSAT instance");
  }
  PipelineResult r = run_pipeline(std::get<ConstraintModel>(file.payload),
                                  a.pad, a.degree_threshold);
  if (!a.out.empty()) save_problem(a.out, as_problem(r.weighted, file, "weighted"));
  if (!a.unweighted_out.empty()) {
    save_problem(a.unweighted_out, as_problem(r.unweighted, file, "unweighted"));
  }
  Json report = {{"report", "transform"},
                 {"certificate", certificate_to_json(r.certificate)},
                 {"diagnostics", diagnostics_to_json(r.diagnostics)},
                 {"weighted", instance_summary(r.weighted)},
                 {"unweighted", instance_summary(r.unweighted)}};
  out << dump_canonical(report);
  return kSuccess;
}

// The Max-LINSAT instance to work on: the file itself, or the weighted
// image of a constraint model.
struct Target {
  ProblemFile file;
  std::optional<PipelineResult> pipeline;
  const LinsatInstance& weighted() const {
    return pipeline ? pipeline->weighted
                    : std::get<LinsatInstance>(file.payload);
  }
};

Target load_target(const std::string& path) {
  Target t{load_problem(path), std::nullopt};
  if (t.file.kind() == ProblemKind::kConstraint) {
    t.pipeline = run_pipeline(std::get<ConstraintModel>(t.file.payload));
  }
  return t;
}

int do_analyze(const AnalyzeArgs& a, std::ostream& out) {
  Target t = load_target(a.input);
  const LinsatInstance& inst = t.weighted();
  CodeView view = CodeView::from_instance(inst);
  DistanceResult d = min_distance(view, a.dmin_cap);
  DependencyReport deps = find_dependent_row_sets(inst, a.dep_cap, a.max_reports);
  Json report = {{"report", "analysis"},
                 {"source", t.pipeline ? "weighted_image" : "input"},
                 {"q", inst.q()},
                 {"n", inst.num_variables()},
                 {"m", view.length},
                 {"rank", view.rank},
                 {"k", view.dimension},
                 {"d_min", distance_to_json(d)},
                 {"dependencies", dependency_report_to_json(deps)}};
  if (a.histogram) {
    Json hist = Json::array();
    for (const auto& [w, count] : weight_enumerator(view)) {
      hist.push_back({{"weight", w}, {"count", count}});
    }
    report["weight_histogram"] = hist;
  }
  out << dump_canonical(report);
  return kSuccess;
}

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  Target t = load_target(a.input);
  const LinsatInstance& inst = t.weighted();
  SolverKind kind = parse_solver_kind(a.solver);
  std::uint64_t seed = 0;
  if (kind != SolverKind::kBrute) {
    if (a.seed) {
      seed = *a.seed;
    } else {
      std::random_device rd;
      seed = (std::uint64_t{rd()} << 32) | rd();
      err << "maxlin: using random seed " << seed << "\n";
    }
  }
  SolveResult r;
  switch (kind) {
    case SolverKind::kBrute:
      r = brute_force(inst);
      break;
    case SolverKind::kAnneal: {
      AnnealSchedule s;
      s.steps = a.steps;
      r = simulated_annealing(inst, s, seed);
      break;
    }
    case SolverKind::kPrange:
      r = prange_solve(inst, seed, {a.restarts, a.threads});
      break;
  }
  Json report = solve_result_to_json(r, a.timing);
  report["report"] = "solve";
  report["q"] = inst.q();
  if (t.pipeline) {
    const TransformCertificate& cert = t.pipeline->certificate;
    report["source_assignment"] = decode_assignment(cert, r.assignment);
    report["source_score"] = rational_to_json(cert.source_score(r.weight));
  }
  out << dump_canonical(report);
  return kSuccess;
}

int do_estimate(const EstimateArgs& a, std::ostream& out) {
  ProblemFile file = load_problem(a.input);
  std::optional<PipelineResult> pipeline;
  if (file.kind() == ProblemKind::kConstraint) {
    pipeline = run_pipeline(std::get<ConstraintModel>(file.payload));
  }
  const LinsatInstance& inst =
      pipeline ? pipeline->unweighted : std::get<LinsatInstance>(file.payload);
  EstimateOptions opt;
  opt.l = a.l;
  if (a.decoder != "auto") opt.decoder = parse_decoder_kind(a.decoder);
  opt.feasibility.mode = parse_feasibility_mode(a.mode);
  if (a.samples) {
    opt.feasibility.samples = *a.samples;
    if (opt.feasibility.mode == FeasibilityMode::kAuto) {
      opt.feasibility.mode = FeasibilityMode::kSampled;
    }
  }
  opt.feasibility.seed = a.seed;
  opt.feasibility.threads = a.threads;
  opt.decoder_options.isd.iterations = a.isd_iterations;
  opt.decoder_options.isd.seed = a.seed;
  DqiEstimate e = estimate(inst, opt);
  Json report = estimate_to_json(e);
  report["report"] = "estimate";
  report["source"] = pipeline ? "unweighted_image" : "input";
  out << dump_canonical(report);
  return kSuccess;
}

int do_gadget_synth(const GadgetArgs& a, std::ostream& out) {
  TruthTable table = TruthTable::parse(a.table);
  SynthesisOptions opt;
  opt.max_constraints = a.max_constraints;
  opt.aux = a.aux;
  opt.kind = a.approximate ? GadgetKind::kApproximate : GadgetKind::kExact;
  opt.search_cap = a.cap;
  std::optional<Gadget> g = synthesize_gadget(table, gf::FieldOrder(a.q), opt);
  Json report = {{"report", "gadget"},
                 {"found", g.has_value()},
                 {"gadget", g ? gadget_to_json(*g) : Json(nullptr)}};
  out << dump_canonical(report);
  return kSuccess;
}

int do_fixture(const FixtureArgs& a, std::ostream& out) {
  if (a.list || a.name.empty()) {
    for (const std::string& n : fixture_names()) out << n << "\n";
    return kSuccess;
  }
  ProblemFile f = make_fixture(a.name);
  if (a.out.empty()) {
    out << dump_canonical(problem_to_json(f));
  } else {
    save_problem(a.out, f);
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"maxlin: constraint models to Max-LINSAT, code analysis, "
               "DQI estimation and classical baselines",
               "maxlin"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "maxlin 0.1.0");

  TransformArgs ta;
  auto* transform = app.add_subcommand(
      "transform", "Lower a constraint model and report diagnostics");
  transform->add_option("input", ta.input, "Problem file")->required();
  transform->add_option("--out", ta.out, "Write the weighted instance here");
  transform->add_option("--unweighted-out", ta.unweighted_out,
                        "Write the unweighted instance here");
  transform->add_flag("--pad", ta.pad,
                      "Pad right-hand sides with unattainable values");
  transform->add_option("--degree-threshold", ta.degree_threshold,
                        "Split monomials of at least this degree")
      ->check(CLI::Range(3, 64));

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand(
      "analyze", "Minimum distance and dependent rows of the dual code");
  analyze->add_option("input", aa.input, "Problem file")->required();
  analyze->add_option("--dmin-cap", aa.dmin_cap,
                      "Largest subset size for the distance search");
  analyze->add_option("--dep-cap", aa.dep_cap,
                      "Largest dependent row set to report");
  analyze->add_option("--max-reports", aa.max_reports,
                      "Stop after this many dependent sets");
  analyze->add_flag("--histogram", aa.histogram,
                    "Include the codeword weight histogram");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run a classical solver");
  solve->add_option("input", sa.input, "Problem file")->required();
  solve->add_option("--solver", sa.solver, "brute, anneal or prange")
      ->check(CLI::IsMember({"brute", "anneal", "prange"}));
  solve->add_option("--seed", sa.seed, "Seed for randomized solvers");
  solve->add_option("--restarts", sa.restarts, "Prange restarts")
      ->check(CLI::PositiveNumber);
  solve->add_option("--steps", sa.steps, "Annealing steps");
  solve->add_option("--threads", sa.threads, "Worker threads (0: all)");
  solve->add_flag("--timing", sa.timing, "Include wall time in the report");

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Desk-scale DQI estimate");
  est->add_option("input", ea.input, "Problem file")->required();
  est->add_option("--l", ea.l, "Polynomial degree (default: from d_min)");
  est->add_option("--decoder", ea.decoder, "auto, lookup, nearest or isd")
      ->check(CLI::IsMember({"auto", "lookup", "nearest", "isd"}));
  est->add_option("--samples", ea.samples,
                  "Sample this many error patterns instead of enumerating")
      ->check(CLI::PositiveNumber);
  est->add_option("--mode", ea.mode, "auto, exact or sampled")
      ->check(CLI::IsMember({"auto", "exact", "sampled"}));
  est->add_option("--seed", ea.seed, "Seed for sampling and ISD");
  est->add_option("--isd-iterations", ea.isd_iterations, "ISD iterations")
      ->check(CLI::PositiveNumber);
  est->add_option("--threads", ea.threads, "Worker threads (0: all)");

  GadgetArgs ga;
  auto* gadget = app.add_subcommand("gadget", "Gadget tools");
  gadget->require_subcommand(1);
  auto* synth = gadget->add_subcommand("synth", "Search for a gadget");
  synth->add_option("--table", ga.table, "Truth table, e.g. 0001 for AND")
      ->required();
  synth->add_option("--q", ga.q, "Field order");
  synth->add_option("--max-constraints", ga.max_constraints,
                    "Largest number of rows")
      ->check(CLI::PositiveNumber);
  synth->add_option("--aux", ga.aux, "Auxiliary variables")
      ->check(CLI::NonNegativeNumber);
  synth->add_flag("--approximate", ga.approximate,
                  "Accept s_no as the best false row");
  synth->add_option("--cap", ga.cap, "Largest search space");

  FixtureArgs fa;
  auto* fixture = app.add_subcommand("fixture", "Emit a bundled problem");
  fixture->add_option("name", fa.name, "Fixture name");
  fixture->add_option("--out", fa.out, "Write to this path");
  fixture->add_flag("--list", fa.list, "List fixture names");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*transform) return do_transform(ta, out);
    if (*analyze) return do_analyze(aa, out);
    if (*solve) return do_solve(sa, out, err);
    if (*est) return do_estimate(ea, out);
    if (*synth) return do_gadget_synth(ga, out);
    if (*fixture) return do_fixture(fa, out);
  } catch (const GuardExceeded& e) {
    err << "maxlin: limit exceeded: " << e.what() << "\n";
    return kGuard;
  } catch (const Error& e) {
    err << "maxlin: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace maxlin::cli
