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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "maxlin/io.hpp"

namespace maxlin::cli {
namespace {

std::string fixture(const std::string& name) {
  return std::string(MAXLIN_SOURCE_DIR) + "/fixtures/" + name + ".json";
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("maxlin_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()
                                                   ->random_seed()) +
          "_" + name);
}

TEST(CliTest, SolveAndGadgetByBruteForce) {
  CliRun r = run({"solve", fixture("and_gadget"), "--solver", "brute"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["report"], "solve");
  EXPECT_EQ(j["weight"], 3);
  EXPECT_EQ(j["q"], 2);
}

TEST(CliTest, EstimateRepetition3) {
  CliRun r = run({"estimate", fixture("repetition3"), "--l", "1", "--decoder", "lookup"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["report"], "estimate");
  EXPECT_EQ(j["source"], "input");
  EXPECT_EQ(j["feasibility"], 1.0);
  EXPECT_EQ(j["regime"], "exact_preparable");
}

TEST(CliTest, TransformTriangleColouringShowsCycle) {
  auto weighted = temp_file("weighted.json");
  auto unweighted = temp_file("unweighted.json");
  CliRun r = run({"transform", fixture("triangle_colouring"), "--out", weighted.string(),
               "--unweighted-out", unweighted.string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["report"], "transform");
  EXPECT_GE(j["diagnostics"]["dependencies"]["counts"]["cycle"].get<int>(), 1);
  EXPECT_EQ(j["certificate"]["p"], 3);
  ProblemFile w = load_problem(weighted);
  ProblemFile u = load_problem(unweighted);
  EXPECT_EQ(w.kind(), ProblemKind::kLinsat);
  EXPECT_TRUE(std::get<LinsatInstance>(u.payload).is_unweighted());
  std::filesystem::remove(weighted);
  std::filesystem::remove(unweighted);
}

TEST(CliTest, SolveConstraintModelReportsSourceScore) {
  CliRun r = run({"solve", fixture("knapsack"), "--solver", "brute"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  Json j = r.json();
  EXPECT_TRUE(j.contains("source_assignment"));
  EXPECT_TRUE(j.contains("source_score"));
}

TEST(CliTest, AnalyzeDuplicateRows) {
  CliRun r = run({"analyze", fixture("duplicate_rows"), "--histogram"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["d_min"]["value"], 2);
  EXPECT_EQ(j["dependencies"]["counts"]["duplicate"], 1);
  EXPECT_TRUE(j.contains("weight_histogram"));
}

TEST(CliTest, GadgetSynthesis) {
  CliRun r = run({"gadget", "synth", "--table", "0001", "--q", "2"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["found"], true);
  EXPECT_EQ(j["gadget"]["s_yes"], 3);
  EXPECT_EQ(j["gadget"]["s_no"], 1);
}

TEST(CliTest, FixtureListing) {
  CliRun r = run({"fixture", "--list"});
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("and_gadget\n"), std::string::npos);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"solve", fixture("and_gadget"), "--no-such-flag"}).code, kUsage);
  EXPECT_EQ(run({"solve", fixture("and_gadget"), "--solver", "cp-sat"}).code, kUsage);
  EXPECT_EQ(run({"solve", fixture("does_not_exist")}).code, kInputError);
  EXPECT_EQ(run({"analyze", fixture("repetition3"), "--dep-cap", "0"}).code, kSuccess);

  auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << "{ \"format_version\": 1,\n  \"kind\": ";
  }
  CliRun malformed = run({"solve", bad.string()});
  EXPECT_EQ(malformed.code, kInputError);
  EXPECT_NE(malformed.err.find("line 2"), std::string::npos) << malformed.err;
  std::filesystem::remove(bad);

  CliRun guard = run({"gadget", "synth", "--table", "0001", "--q", "2", "--cap", "1"});
  EXPECT_EQ(guard.code, kGuard) << guard.out << guard.err;
  CliRun linsat = run({"transform", fixture("and_gadget")});
  EXPECT_EQ(linsat.code, kInputError);
}

TEST(CliTest, IdenticalArgumentsGiveIdenticalBytes) {
  const std::vector<std::vector<std::string>> commands = {
      {"solve", fixture("vertex_cover"), "--solver", "anneal", "--seed", "5"},
      {"solve", fixture("triangle_maxcut"), "--solver", "prange", "--seed", "5",
       "--threads", "3"},
      {"estimate", fixture("triangle_colouring_linsat"), "--mode", "sampled",
       "--samples", "500", "--seed", "2", "--threads", "2"},
      {"transform", fixture("mod6")},
      {"analyze", fixture("triangle_colouring")},
  };
  for (const auto& c : commands) {
    CliRun a = run(c);
    CliRun b = run(c);
    ASSERT_EQ(a.code, kSuccess) << c[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c[0] << " " << c[1];
  }
}

}  // namespace
}  // namespace maxlin::cli
