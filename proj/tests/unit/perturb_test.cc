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

#include "textguard/perturb.h"

#include <set>
#include <string>

#include <gtest/gtest.h>

#include "stub_backend.h"
#include "test_util.h"
#include "textguard/errors.h"
#include "textguard/rng.h"

namespace textguard {
namespace {

std::size_t DiffCount(std::string_view a, std::string_view b) {
  TokenizedText x = Tokenize(a), y = Tokenize(b);
  if (x.size() != y.size()) return SIZE_MAX;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) n += x.tokens[i] != y.tokens[i];
  return n;
}

// Ten content words, each with two synonyms.
Thesaurus TenWordThesaurus() {
  Thesaurus t;
  for (const char* w : {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf",
                        "hotel", "india", "juliet"}) {
    t.Set(w, {std::string(w) + "x", std::string(w) + "y"});
  }
  return t;
}

constexpr const char* kTenWords =
    "alpha bravo charlie delta echo foxtrot golf hotel india juliet";

TEST(CeilCountTest, RoundsUp) {
  EXPECT_EQ(CeilCount(0.3, 10), 3u);
  EXPECT_EQ(CeilCount(0.15, 10), 2u);
  EXPECT_EQ(CeilCount(0.3, 1), 1u);
  EXPECT_EQ(CeilCount(0.3, 0), 0u);
}

TEST(CharOpTest, SwapVariantsStayWithinDistanceTwo) {
  const std::vector<std::string> swaps = EnumerateCharOp("film", CharOp::kSwap);
  ASSERT_FALSE(swaps.empty());
  for (const std::string& v : swaps) {
    EXPECT_EQ(v.front(), 'f');
    EXPECT_EQ(v.back(), 'm');
    EXPECT_LE(Levenshtein("film", v), 2u);
    EXPECT_NE(v, "film");
  }
}

TEST(CharOpTest, DeletionRemovesOneInteriorChar) {
  const std::vector<std::string> dels = EnumerateCharOp("good", CharOp::kDelete);
  EXPECT_NE(std::find(dels.begin(), dels.end(), "god"), dels.end());
  for (const std::string& v : dels) {
    EXPECT_EQ(Levenshtein("good", v), 1u);
    EXPECT_EQ(v.front(), 'g');
    EXPECT_EQ(v.back(), 'd');
  }
}

TEST(CharOpTest, EveryOpKeepsBoundaryAndDistance) {
  Rng rng(8);
  for (CharOp op : {CharOp::kSubstitute, CharOp::kInsert, CharOp::kDelete, CharOp::kSwap}) {
    for (int i = 0; i < 50; ++i) {
      auto out = ApplyCharOp("wonderful", op, rng);
      ASSERT_TRUE(out.has_value());
      EXPECT_LE(Levenshtein("wonderful", *out), 2u);
      EXPECT_GE(Levenshtein("wonderful", *out), 1u);
      if (op != CharOp::kInsert) {
        EXPECT_EQ(out->front(), 'w');
        EXPECT_EQ(out->back(), 'l');
      }
    }
  }
}

TEST(CharPerturbTest, ShortWordsAreUnmodifiable) {
  PerturbResult r = CharPerturb("a an it", 0.15, CharOpMix{}, 1);
  EXPECT_TRUE(r.unmodifiable);
  EXPECT_EQ(r.text, "a an it");
}

TEST(CharPerturbTest, DistanceBoundedPerModifiedWord) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string text = "the soundtrack was wonderful and the acting superb";
    PerturbResult r = CharPerturb(text, 0.3, CharOpMix{}, seed);
    ASSERT_FALSE(r.unmodifiable);
    EXPECT_GE(r.words_modified, 1u);
    EXPECT_GE(Levenshtein(text, r.text), 1u);
    EXPECT_LE(Levenshtein(text, r.text), 2 * r.words_modified);
  }
}

TEST(SynonymPerturbTest, TenWordsAtRateThirtyChangeThree) {
  Thesaurus t = TenWordThesaurus();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PerturbResult r = SynonymPerturb(kTenWords, 0.3, t, seed);
    EXPECT_EQ(r.words_modified, 3u);
    EXPECT_EQ(DiffCount(kTenWords, r.text), 3u);
  }
}

TEST(SynonymPerturbTest, NoSynonymsIsFlagged) {
  PerturbResult r = SynonymPerturb("plain words only", 0.3, Thesaurus{}, 1);
  EXPECT_TRUE(r.unmodifiable);
  EXPECT_EQ(r.text, "plain words only");
}

TEST(SynonymPerturbTest, PreservesCapitalisation) {
  Thesaurus t;
  t.Set("great", {"fine"});
  PerturbResult r = SynonymPerturb("Great show", 1.0, t, 1);
  EXPECT_EQ(r.text, "Fine show");
}

TEST(MlmPerturbTest, UsesStubSuggestions) {
  testing::StubBackend stub;
  BackendEndpoint endpoint = stub.Endpoint();
  PerturbResult r = MlmPerturb(kTenWords, 0.3, &endpoint, TenWordThesaurus(), 3);
  EXPECT_FALSE(r.fallback_used);
  TokenizedText out = Tokenize(r.text), in = Tokenize(kTenWords);
  ASSERT_EQ(out.size(), in.size());
  std::size_t greats = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.tokens[i] != in.tokens[i]) {
      EXPECT_EQ(out.tokens[i], "great");
      ++greats;
    }
  }
  EXPECT_EQ(greats, 3u);
}

TEST(MlmPerturbTest, SkipsSuggestionEqualToOriginal) {
  testing::StubOptions options;
  options.default_suggestions = {"alpha", "bravo", "charlie", "zulu", "yankee"};
  options.mlm_dictionary = {};
  testing::StubBackend stub(options);
  BackendEndpoint endpoint = stub.Endpoint();
  PerturbResult r = MlmPerturb("alpha", 1.0, &endpoint, Thesaurus{}, 1);
  EXPECT_EQ(r.text, "bravo");
}

TEST(MlmPerturbTest, FallbackMatchesSynonymPerturb) {
  BackendEndpoint endpoint = MakeEndpoint(testing::DeadUrl(), FallbackPolicy::kRuleBased);
  endpoint.timeout = std::chrono::milliseconds(300);
  Thesaurus t = TenWordThesaurus();
  PerturbResult mlm = MlmPerturb(kTenWords, 0.3, &endpoint, t, 42);
  EXPECT_TRUE(mlm.fallback_used);
  EXPECT_EQ(mlm.text, SynonymPerturb(kTenWords, 0.3, t, 42).text);
  PerturbResult none = MlmPerturb(kTenWords, 0.3, nullptr, t, 42);
  EXPECT_TRUE(none.fallback_used);
  EXPECT_EQ(none.text, mlm.text);
}

TEST(MlmPerturbTest, ErrorPolicyPropagates) {
  BackendEndpoint endpoint = MakeEndpoint(testing::DeadUrl(), FallbackPolicy::kError);
  endpoint.timeout = std::chrono::milliseconds(300);
  EXPECT_THROW(MlmPerturb(kTenWords, 0.3, &endpoint, TenWordThesaurus(), 1), TransportError);
}

Dataset HundredSamples() {
  Dataset d;
  for (int i = 0; i < 100; ++i) {
    TextSample s;
    s.id = "s" + std::to_string(i);
    s.text = i % 10 == 0 ? "a an it" : "the film number " + std::to_string(i) + " was quite good";
    s.label = i % 2;
    d.samples.push_back(s);
  }
  return d;
}

TEST(ArtificialDatasetTest, BalancedUpToDropped) {
  ArtificialDataset art = MakeArtificialDataset(
      HundredSamples(), PerturbFamily::Default(PerturbFamilyKind::kCharOps), {}, 5);
  EXPECT_EQ(art.dropped, 10u);
  EXPECT_EQ(art.data.size(), 190u);
  std::size_t positives = 0;
  double total_distance = 0.0;
  std::map<std::string, std::string> originals;
  for (const TextSample& s : art.data.samples) {
    ASSERT_TRUE(s.detector_label.has_value());
    if (*s.detector_label == 0) {
      EXPECT_EQ(s.provenance, Provenance::kOriginal);
      originals[s.id] = s.text;
    }
  }
  for (const TextSample& s : art.data.samples) {
    if (*s.detector_label == 1) {
      ++positives;
      EXPECT_EQ(s.provenance, Provenance::kArtificial);
      ASSERT_TRUE(originals.count(s.source_id));
      const std::size_t distance = Levenshtein(originals[s.source_id], s.text);
      EXPECT_GE(distance, 1u);
      total_distance += static_cast<double>(distance);
    }
  }
  EXPECT_EQ(positives, 90u);
  EXPECT_GT(total_distance / positives, 0.0);
}

TEST(ArtificialDatasetTest, Deterministic) {
  PerturbFamily family = PerturbFamily::Default(PerturbFamilyKind::kCharOps);
  ArtificialDataset a = MakeArtificialDataset(HundredSamples(), family, {}, 5);
  ArtificialDataset b = MakeArtificialDataset(HundredSamples(), family, {}, 5);
  ASSERT_EQ(a.data.size(), b.data.size());
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    EXPECT_EQ(a.data.samples[i].text, b.data.samples[i].text);
  }
}

TEST(PerturbFamilyTest, DefaultsAndValidation) {
  EXPECT_DOUBLE_EQ(PerturbFamily::Default(PerturbFamilyKind::kCharOps).rate, 0.15);
  EXPECT_DOUBLE_EQ(PerturbFamily::Default(PerturbFamilyKind::kThesaurusSub).rate, 0.3);
  EXPECT_DOUBLE_EQ(PerturbFamily::Default(PerturbFamilyKind::kMlmSub).rate, 0.15);
  PerturbFamily bad = PerturbFamily::Default(PerturbFamilyKind::kCharOps);
  bad.rate = 0.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad.rate = 0.5;
  bad.mix.swap = 0.9;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

}  // namespace
}  // namespace textguard
