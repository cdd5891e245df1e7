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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "maxlin/error.hpp"
#include "maxlin/fixtures.hpp"
#include "support.hpp"

namespace maxlin {
namespace {

using testing::Rng;

std::string fixture_path(const std::string& name) {
  return std::string(MAXLIN_SOURCE_DIR) + "/fixtures/" + name + ".json";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Returns the pointer carried by the SchemaError thrown from `f`.
template <typename F>
std::string schema_path(F&& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(RoundTripTest, InstancesSurviveSerialization) {
  Rng rng(91);
  for (int t = 0; t < 40; ++t) {
    std::uint64_t q = t % 3 == 0 ? 5 : (t % 3 == 1 ? 2 : 3);
    LinsatInstance inst = testing::random_instance(
        rng, q, static_cast<std::size_t>(testing::uniform_int(rng, 1, 6)),
        static_cast<std::size_t>(testing::uniform_int(rng, 1, 8)), 4);
    Json j = instance_to_json(inst);
    LinsatInstance back = instance_from_json(j);
    EXPECT_EQ(instance_to_json(back), j);
    EXPECT_EQ(testing::brute_optimum(back), testing::brute_optimum(inst));
  }
}

TEST(RoundTripTest, ModelsSurviveSerialization) {
  Rng rng(92);
  for (int t = 0; t < 40; ++t) {
    ConstraintModel model = testing::random_model(rng);
    Json j = model_to_json(model);
    ConstraintModel back = model_from_json(j);
    EXPECT_EQ(model_to_json(back), j);
    EXPECT_EQ(testing::source_optimum(back), testing::source_optimum(model));
  }
}

TEST(RoundTripTest, ProblemFilesAndCanonicalBytes) {
  for (const std::string& name : fixture_names()) {
    ProblemFile f = make_fixture(name);
    std::string text = dump_canonical(problem_to_json(f));
    ASSERT_FALSE(text.empty());
    EXPECT_EQ(text.back(), '\n');
    ProblemFile back = parse_problem(text);
    EXPECT_EQ(back.kind(), f.kind()) << name;
    EXPECT_EQ(back.metadata, f.metadata) << name;
    EXPECT_EQ(dump_canonical(problem_to_json(back)), text) << name;
  }
}

TEST(RoundTripTest, RationalStrings) {
  Rational r(-3, 6);
  EXPECT_EQ(rational_to_json(r), "-1/2");
  EXPECT_EQ(rational_from_json("-1/2", ""), r);
  EXPECT_EQ(rational_from_json("7", ""), Rational(7));
  EXPECT_EQ(rational_from_json(Json(4), ""), Rational(4));
  EXPECT_THROW(rational_from_json("1/0", "/x"), SchemaError);
  EXPECT_THROW(rational_from_json("half", "/x"), SchemaError);
}

TEST(FixturesTest, CheckedInFilesMatchGenerators) {
  for (const std::string& name : fixture_names()) {
    std::string path = fixture_path(name);
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    ProblemFile f = load_problem(path);
    EXPECT_EQ(slurp(path), dump_canonical(problem_to_json(make_fixture(name)))) << name;
    EXPECT_EQ(f.metadata.at("name"), name);
  }
}

TEST(SchemaErrorTest, PointersNameTheOffendingField) {
  Json good = problem_to_json(make_fixture("and_gadget"));

  Json j = good;
  j["payload"]["constraints"][1]["terms"][0]["var"] = 7;
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }),
            "/payload/constraints/1/terms/0/var");

  j = good;
  j["payload"]["constraints"][2]["rhs"][0].erase("weight");
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }),
            "/payload/constraints/2/rhs/0/weight");

  j = good;
  j["payload"]["q"] = 1;
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }), "/payload/q");

  j = good;
  j["payload"]["q"] = 6;
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }), "/payload/q");

  j = good;
  j["format_version"] = 9;
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }), "/format_version");

  j = good;
  j["kind"] = "cnf";
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }), "/kind");

  j = good;
  j["metadata"]["name"] = 3;
  EXPECT_EQ(schema_path([&] { problem_from_json(j); }), "/metadata/name");
}

TEST(SchemaErrorTest, MalformedJsonReportsLineAndColumn) {
  std::string text = "{\n  \"format_version\": 1,\n  \"kind\": ]\n}\n";
  std::string path = schema_path([&] { parse_problem(text); });
  EXPECT_EQ(path, "line 3, column 11");
  EXPECT_THROW(load_problem(std::string(MAXLIN_SOURCE_DIR) + "/fixtures/missing.json"),
               InvalidArgument);
}

TEST(GadgetJsonTest, RoundTripAndVerification) {
  for (const Gadget& g : {not_gadget(), and_gadget(), or_gadget(3), xor_gadget()}) {
    Json j = gadget_to_json(g);
    EXPECT_EQ(gadget_to_json(gadget_from_json(j)), j) << g.name;
  }
  Json bad = gadget_to_json(and_gadget());
  bad["s_yes"] = bad["s_yes"].get<std::int64_t>() + 1;
  EXPECT_THROW(gadget_from_json(bad), SchemaError);
  bad = gadget_to_json(and_gadget());
  bad["constraints"][0]["members"][0] = 9;
  EXPECT_EQ(schema_path([&] { gadget_from_json(bad); }), "/constraints/0/members/0");
}

}  // namespace
}  // namespace maxlin
