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

#include "maxlin/decoders.hpp"

#include <gtest/gtest.h>

#include "maxlin/error.hpp"
#include "maxlin/fixtures.hpp"
#include "support.hpp"

namespace maxlin {
namespace {

using testing::Rng;
using testing::uniform_int;

// Minimum error weight per syndrome, by exhaustive enumeration.
std::map<gf::Vector, std::size_t> coset_weights(const CodeView& view) {
  std::map<gf::Vector, std::size_t> best;
  const std::uint64_t count = testing::ipow(view.q(), view.length);
  for (std::uint64_t i = 0; i < count; ++i) {
    gf::Vector e = testing::digits(i, view.q(), view.length);
    gf::Vector s = view.syndrome(e);
    std::size_t w = testing::weight(e);
    auto [it, fresh] = best.emplace(s, w);
    if (!fresh) it->second = std::min(it->second, w);
  }
  return best;
}

TEST(LookupDecoderTest, ReturnsMinimumWeightLeaders) {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    std::uint64_t q = t % 2 == 0 ? 2 : 3;
    auto m = static_cast<std::size_t>(uniform_int(rng, 2, q == 2 ? 10 : 6));
    auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(m)));
    CodeView view = CodeView::from_matrix(testing::random_matrix(rng, q, m, n));
    LookupDecoder lookup(view);
    EXPECT_EQ(lookup.size(), testing::ipow(q, view.rank));
    NearestDecoder nearest(view);
    for (const auto& [s, w] : coset_weights(view)) {
      auto e = lookup.decode(s);
      ASSERT_TRUE(e.has_value());
      EXPECT_EQ(view.syndrome(*e), s);
      EXPECT_EQ(testing::weight(*e), w);
      auto f = nearest.decode(s);
      ASSERT_TRUE(f.has_value());
      EXPECT_EQ(view.syndrome(*f), s);
      EXPECT_EQ(testing::weight(*f), w);
      if (lookup.unique_leader(s)) EXPECT_EQ(*e, *f);
    }
  }
}

TEST(LookupDecoderTest, UniqueLeaderFlag) {
  CodeView dup = CodeView::from_instance(duplicate_rows_instance());
  LookupDecoder lookup(dup);
  gf::Vector e = {1, 0, 0};
  EXPECT_FALSE(lookup.unique_leader(dup.syndrome(e)));  // {1,0,0} and {0,1,0}
  gf::Vector f = {0, 0, 1};
  EXPECT_TRUE(lookup.unique_leader(dup.syndrome(f)));
  EXPECT_EQ(*lookup.decode(dup.syndrome(e)), (gf::Vector{0, 1, 0}) < e ? (gf::Vector{0, 1, 0}) : e);
}

TEST(LookupDecoderTest, GuardAndCapability) {
  CodeView view = CodeView::from_instance(repetition3_instance());
  EXPECT_THROW(LookupDecoder(view, 2), GuardExceeded);
  LookupDecoder lookup(view);
  DecoderCapability cap = lookup.capability();
  EXPECT_EQ(cap.name, "lookup");
  EXPECT_TRUE(cap.complete);
  EXPECT_EQ(cap.max_weight, 1u);
  gf::Vector bad = {1};
  EXPECT_THROW(lookup.decode(bad), InvalidArgument);
}

TEST(NearestTest, TieBreakIsLexicographic) {
  CodeView view = CodeView::from_instance(repetition3_instance());
  // Word 110 is at distance 1 from 111 and distance 2 from 000.
  gf::Vector w = {1, 1, 0};
  EXPECT_EQ(nearest_codeword(view, w), (gf::Vector{1, 1, 1}));
  gf::Vector z = {0, 0, 1};
  EXPECT_EQ(nearest_codeword(view, z), (gf::Vector{0, 0, 0}));
}

TEST(PrangeTest, OutputsSatisfySyndromeAndRespectMaxWeight) {
  Rng rng(62);
  for (int t = 0; t < 20; ++t) {
    std::uint64_t q = t % 2 == 0 ? 2 : 5;
    auto m = static_cast<std::size_t>(uniform_int(rng, 6, 20));
    auto n = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(m) - 1));
    CodeView view = CodeView::from_matrix(testing::random_matrix(rng, q, m, n));
    IsdOptions opt;
    opt.seed = 9;
    opt.max_weight = 2;
    PrangeDecoder dec(view, opt);
    EXPECT_EQ(dec.capability().max_weight, 2u);
    EXPECT_FALSE(dec.capability().complete);
    for (int s = 0; s < 30; ++s) {
      gf::Vector e(m, 0);
      e[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1))] =
          static_cast<gf::Residue>(uniform_int(rng, 1, static_cast<std::int64_t>(q) - 1));
      gf::Vector syn = view.syndrome(e);
      auto got = dec.decode(syn);
      if (got) {
        EXPECT_EQ(view.syndrome(*got), syn);
        EXPECT_LE(testing::weight(*got), 2u);
      }
      EXPECT_EQ(got, dec.decode(syn));
    }
  }
}

TEST(PrangeTest, FindsUniqueLightErrors) {
  // Triangle Max-Cut: d_min = 3, so weight-1 errors are unique coset leaders,
  // and any information set recovers them with enough iterations.
  CodeView view = CodeView::from_instance(maxcut_instance(3, {{0, 1}, {0, 2}, {1, 2}}));
  for (std::size_t i = 0; i < 3; ++i) {
    gf::Vector e(3, 0);
    e[i] = 1;
    auto got = isd_prange_decode(view, view.syndrome(e), 50, 3);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, e);
  }
}

TEST(FactoryTest, KindsRoundTrip) {
  CodeView view = CodeView::from_instance(repetition3_instance());
  for (auto k : {DecoderKind::kLookup, DecoderKind::kNearest, DecoderKind::kIsd}) {
    EXPECT_EQ(parse_decoder_kind(to_string(k)), k);
    auto d = make_decoder(k, view);
    EXPECT_EQ(d->capability().name, to_string(k));
  }
  EXPECT_THROW(parse_decoder_kind("belief"), InvalidArgument);
}

}  // namespace
}  // namespace maxlin
