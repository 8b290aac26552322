//
// Copyright 2026 The TextGuard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "textguard/transform.h"

#include <set>

#include <gtest/gtest.h>

#include "stub_backend.h"
#include "test_util.h"
#include "textguard/errors.h"

namespace textguard {
namespace {

Thesaurus SmallThesaurus() {
  Thesaurus t;
  t.Set("movie", {"film", "picture"});
  t.Set("great", {"superb", "fine"});
  t.Set("actors", {"performers"});
  t.Set("story", {"plot", "tale"});
  t.Set("boring", {"dull"});
  return t;
}

TransformReport Apply(TransformId id, std::string_view text,
                      const BackendEndpoint* endpoint = nullptr, std::uint64_t seed = 1) {
  static const Thesaurus thesaurus = SmallThesaurus();
  return ApplyTransform(id, text, {&thesaurus, nullptr, endpoint}, seed);
}

BackendEndpoint Dead(FallbackPolicy policy) {
  BackendEndpoint endpoint = MakeEndpoint(testing::DeadUrl(), policy);
  endpoint.timeout = std::chrono::milliseconds(300);
  return endpoint;
}

TEST(TransformIdTest, SixDistinctNamesRoundTrip) {
  std::set<std::string> names;
  for (TransformId id : kAllTransforms) {
    names.insert(std::string(TransformName(id)));
    EXPECT_EQ(ParseTransform(TransformName(id)), id);
  }
  EXPECT_EQ(names.size(), 6u);
  EXPECT_THROW(ParseTransform("rot13"), ConfigError);
  EXPECT_TRUE(RequiresBackend(TransformId::kBackTranslation));
  EXPECT_TRUE(RequiresBackend(TransformId::kMlmSuggestion));
  EXPECT_FALSE(RequiresBackend(TransformId::kContraction));
}

TEST(ContractionTest, Example) {
  EXPECT_EQ(Apply(TransformId::kContraction, "do not stop").output, "don't stop");
}

TEST(ContractionTest, ExpandsWhenNothingToContract) {
  EXPECT_EQ(Apply(TransformId::kContraction, "I can't stop").output, "I can not stop");
}

TEST(ContractionTest, TablePairsRoundTrip) {
  const MorphRules& m = MorphRules::Default();
  for (const ContractionPair& pair : m.contractions()) {
    EXPECT_EQ(ContractText(ExpandText(pair.contracted, m), m), pair.contracted);
    EXPECT_EQ(ExpandText(ContractText(pair.expanded, m), m), pair.expanded);
  }
}

TEST(TenseChangeTest, Example) {
  EXPECT_EQ(Apply(TransformId::kTenseChange, "she walked home").output, "she walks home");
}

TEST(TenseChangeTest, PresentToPast) {
  EXPECT_EQ(Apply(TransformId::kTenseChange, "he goes home").output, "he went home");
  EXPECT_EQ(Apply(TransformId::kTenseChange, "the movie is great").output,
            "the movie was great");
}

TEST(AdverbInsertionTest, AddsExactlyOneToken) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const char* text : {"she walked home", "a movie", "The actors were great ."}) {
      TransformReport r = Apply(TransformId::kAdverbInsertion, text, nullptr, seed);
      EXPECT_EQ(Tokenize(r.output).size(), Tokenize(text).size() + 1) << r.output;
      ASSERT_EQ(r.positions.size(), 1u);
    }
  }
}

TEST(SynonymSwapTest, SwapsCeilFifthWithRankOne) {
  // Five eligible words -> one swap; rank-1 synonym.
  TransformReport r = Apply(TransformId::kSynonymSwap,
                            "the movie had great actors and a boring story");
  EXPECT_EQ(r.positions.size(), 1u);
  TokenizedText in = Tokenize(r.input), out = Tokenize(r.output);
  ASSERT_EQ(in.size(), out.size());
  const std::size_t p = r.positions[0];
  EXPECT_EQ(SmallThesaurus().Synonyms(in.tokens[p], 1)[0], out.tokens[p]);
}

TEST(MlmSuggestionTest, UsesBackend) {
  testing::StubBackend stub;
  BackendEndpoint endpoint = stub.Endpoint();
  TransformReport r = Apply(TransformId::kMlmSuggestion, "the movie had great actors", &endpoint);
  EXPECT_FALSE(r.fallback_used);
  ASSERT_EQ(r.positions.size(), 1u);
  TokenizedText in = Tokenize(r.input), out = Tokenize(r.output);
  const std::string& replaced = out.tokens[r.positions[0]];
  const std::vector<std::string> stub_words = testing::StubOptions{}.default_suggestions;
  EXPECT_NE(replaced, in.tokens[r.positions[0]]);
  EXPECT_NE(std::find(stub_words.begin(), stub_words.end(), replaced), stub_words.end());
  EXPECT_GE(stub.requests("/v1/mlm"), 1u);
}

TEST(MlmSuggestionTest, FallbackEqualsSynonymSwap) {
  const std::string text = "the movie had great actors and a boring story";
  BackendEndpoint dead = Dead(FallbackPolicy::kRuleBased);
  TransformReport r = Apply(TransformId::kMlmSuggestion, text, &dead, 9);
  EXPECT_TRUE(r.fallback_used);
  EXPECT_EQ(r.output, Apply(TransformId::kSynonymSwap, text, nullptr, 9).output);
}

TEST(BackTranslationTest, UsesBackendPivot) {
  testing::StubBackend stub;
  BackendEndpoint endpoint = stub.Endpoint();
  TransformReport r = Apply(TransformId::kBackTranslation, "the movie was good", &endpoint);
  EXPECT_FALSE(r.fallback_used);
  EXPECT_EQ(r.output, testing::StubBackend::TranslateText("the movie was good", "de"));
}

TEST(BackTranslationTest, FallbackComposesSwapAndContraction) {
  const std::string text = "the movie is not great and it is a boring story";
  BackendEndpoint dead = Dead(FallbackPolicy::kRuleBased);
  TransformReport r = Apply(TransformId::kBackTranslation, text, &dead, 4);
  EXPECT_TRUE(r.fallback_used);
  const std::string swapped = Apply(TransformId::kSynonymSwap, text, nullptr, 4).output;
  EXPECT_EQ(r.output, ContractText(swapped, MorphRules::Default()));
  TransformReport no_endpoint = Apply(TransformId::kBackTranslation, text, nullptr, 4);
  EXPECT_TRUE(no_endpoint.fallback_used);
  EXPECT_EQ(no_endpoint.output, r.output);
}

TEST(BackendTransformsTest, ErrorPolicyCarriesId) {
  BackendEndpoint dead = Dead(FallbackPolicy::kError);
  for (TransformId id : {TransformId::kBackTranslation, TransformId::kMlmSuggestion}) {
    try {
      Apply(id, "the movie was good", &dead);
      FAIL() << "expected TransformError";
    } catch (const TransformError& e) {
      EXPECT_EQ(e.id(), id);
    }
  }
}

TEST(TransformPropertiesTest, NonEmptyValidUtf8AndDeterministic) {
  const std::vector<std::string> texts = {"x", "The actors were great .", "naïve café movie",
                                          "I do not think it is boring", "!!!"};
  for (TransformId id : kAllTransforms) {
    for (const std::string& text : texts) {
      TransformReport a = Apply(id, text, nullptr, 5);
      TransformReport b = Apply(id, text, nullptr, 5);
      EXPECT_FALSE(a.output.empty()) << TransformName(id) << " on " << text;
      EXPECT_EQ(EncodeUtf8(DecodeUtf8(a.output)), a.output);
      EXPECT_EQ(a.output, b.output);
      if (!RequiresBackend(id)) EXPECT_FALSE(a.fallback_used);
    }
  }
}

TEST(SampleTransformsTest, Contract) {
  std::vector<TransformId> all = SampleTransforms(3, 6);
  EXPECT_EQ(std::set<TransformId>(all.begin(), all.end()).size(), 6u);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::vector<TransformId> three = SampleTransforms(seed, 3);
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(std::set<TransformId>(three.begin(), three.end()).size(), 3u);
    EXPECT_EQ(three, SampleTransforms(seed, 3));
  }
  EXPECT_THROW(SampleTransforms(1, 7), ConfigError);
  EXPECT_THROW(SampleTransforms(1, 0), ConfigError);
}

}  // namespace
}  // namespace textguard
