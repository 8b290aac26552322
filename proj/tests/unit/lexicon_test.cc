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

#include "textguard/lexicon.h"

#include <sstream>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "textguard/errors.h"

namespace textguard {
namespace {

using ::testing::ElementsAre;

Thesaurus Read(const std::string& content, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(content);
  return ReadThesaurus(in, "mem", warnings);
}

TEST(ThesaurusTest, ParsesRankedLine) {
  Thesaurus t = Read("good\tgreat,fine,nice\n");
  EXPECT_THAT(t.Synonyms("good", 50), ElementsAre("great", "fine", "nice"));
}

TEST(ThesaurusTest, DropsHeadwordFromList) {
  Thesaurus t = Read("good\tgood,great\n");
  EXPECT_THAT(t.Synonyms("good", 50), ElementsAre("great"));
}

TEST(ThesaurusTest, LowercasesAndDeduplicates) {
  Thesaurus t = Read("Good\tGreat,great,FINE\n");
  EXPECT_THAT(t.Synonyms("good", 50), ElementsAre("great", "fine"));
}

TEST(ThesaurusTest, DuplicateHeadwordReplacesWithWarning) {
  std::vector<std::string> warnings;
  Thesaurus t = Read("good\tgreat\ngood\tfine\n", &warnings);
  EXPECT_THAT(t.Synonyms("good", 50), ElementsAre("fine"));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(ThesaurusTest, MalformedLineNamesLine) {
  try {
    Read("# header\ngood\tgreat\nbroken line\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ThesaurusTest, SynonymsTruncateToS) {
  Thesaurus t;
  std::vector<std::string> many;
  for (int i = 0; i < 120; ++i) many.push_back("w" + std::to_string(i));
  t.Set("head", many);
  std::vector<std::string> top = t.Synonyms("head", 50);
  ASSERT_EQ(top.size(), 50u);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(top[i], many[i]);
  t.Set("few", {"a", "b", "c"});
  EXPECT_EQ(t.Synonyms("few", 50).size(), 3u);
  EXPECT_TRUE(t.Synonyms("absent", 50).empty());
}

TEST(ThesaurusTest, NeverReturnsQueryWord) {
  Thesaurus t;
  t.Set("film", {"film", "movie", "Film", "picture"});
  for (std::size_t s = 1; s <= 4; ++s) {
    for (const std::string& w : t.Synonyms("film", s)) EXPECT_NE(w, "film");
    EXPECT_LE(t.Synonyms("film", s).size(), s);
  }
}

TEST(InflectVerbTest, Examples) {
  const MorphRules& m = MorphRules::Default();
  EXPECT_EQ(m.InflectVerb("walked", Tense::kPresent), "walks");
  EXPECT_EQ(m.InflectVerb("went", Tense::kPresent), "goes");
  EXPECT_EQ(m.InflectVerb("walks", Tense::kPresent), "walks");
  EXPECT_EQ(m.InflectVerb("walks", Tense::kPast), "walked");
  EXPECT_EQ(m.InflectVerb("goes", Tense::kPast), "went");
}

TEST(InflectVerbTest, NonVerbUnchanged) {
  EXPECT_EQ(MorphRules::Default().InflectVerb("table", Tense::kPast), "table");
}

TEST(InflectVerbTest, IdempotentPerTarget) {
  const MorphRules& m = MorphRules::Default();
  for (const std::string& verb : {"walked", "went", "goes", "likes", "watched", "made"}) {
    for (Tense tense : {Tense::kPast, Tense::kPresent}) {
      const std::string once = m.InflectVerb(verb, tense);
      EXPECT_EQ(m.InflectVerb(once, tense), once) << verb;
    }
  }
}

TEST(MorphRulesTest, ContractionTableIsBijective) {
  const MorphRules& m = MorphRules::Default();
  ASSERT_GE(m.contractions().size(), 35u);
  for (const ContractionPair& pair : m.contractions()) {
    EXPECT_EQ(m.Contract(pair.expanded), pair.contracted);
    EXPECT_EQ(m.Expand(pair.contracted), pair.expanded);
  }
}

TEST(MorphRulesTest, FileRoundTrip) {
  std::ostringstream out;
  WriteMorphRules(out, MorphRules::Default());
  std::istringstream in(out.str());
  MorphRules back = ReadMorphRules(in, "mem");
  EXPECT_EQ(back.contractions().size(), MorphRules::Default().contractions().size());
  EXPECT_EQ(back.adverbs(), MorphRules::Default().adverbs());
  EXPECT_EQ(back.InflectVerb("went", Tense::kPresent), "goes");
}

TEST(MorphRulesTest, UnknownSectionIsError) {
  std::istringstream in("[NOUNS]\ncat\n");
  EXPECT_THROW(ReadMorphRules(in, "mem"), ParseError);
}

}  // namespace
}  // namespace textguard
