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

#include "textguard/desk_corpus.h"

#include <cstdio>
#include <string>
#include <vector>

#include "textguard/rng.h"

namespace textguard {
namespace {

struct WordGroup {
  std::vector<std::string> common;
  // Uncommon synonyms; only the first half appears in generated text.
  std::vector<std::string> rare;
};

const std::vector<WordGroup>& PositiveAdjectives() {
  static const auto* groups = new std::vector<WordGroup>{
      {{"great", "good", "excellent", "wonderful", "brilliant"},
       {"superb", "splendid", "terrific", "marvelous", "stellar", "sublime",
        "exquisite", "magnificent", "outstanding", "phenomenal"}},
      {{"moving", "touching", "charming", "beautiful"},
       {"poignant", "affecting", "endearing", "delightful", "captivating",
        "enchanting", "lovely", "heartfelt"}},
      {{"funny", "clever", "fresh", "smart"},
       {"witty", "hilarious", "inventive", "ingenious", "amusing", "original",
        "sharp", "playful"}},
  };
  return *groups;
}

const std::vector<WordGroup>& NegativeAdjectives() {
  static const auto* groups = new std::vector<WordGroup>{
      {{"bad", "awful", "terrible", "poor", "horrible"},
       {"dreadful", "abysmal", "atrocious", "lousy", "wretched", "dismal",
        "shoddy", "horrid", "appalling", "pathetic"}},
      {{"boring", "dull", "slow", "bland"},
       {"tedious", "tiresome", "monotonous", "plodding", "lifeless", "sluggish",
        "dreary", "insipid"}},
      {{"silly", "weak", "messy", "stupid"},
       {"flimsy", "feeble", "clumsy", "shallow", "inept", "muddled", "sloppy",
        "vapid"}},
  };
  return *groups;
}

const WordGroup& PositiveVerbs() {
  static const auto* group = new WordGroup{
      {"loved", "enjoyed", "liked"},
      {"adored", "relished", "cherished", "savored", "admired", "treasured"}};
  return *group;
}

const WordGroup& NegativeVerbs() {
  static const auto* group = new WordGroup{
      {"hated", "disliked"},
      {"loathed", "detested", "despised", "resented", "deplored", "abhorred"}};
  return *group;
}

const WordGroup& Nouns() {
  static const auto* group = new WordGroup{
      {"film", "movie"},
      {"picture", "feature", "flick", "production", "piece", "work"}};
  return *group;
}

const WordGroup& Intensifiers() {
  static const auto* group = new WordGroup{
      {"really", "very", "quite"},
      {"truly", "remarkably", "genuinely", "thoroughly", "decidedly",
       "exceedingly"}};
  return *group;
}

const std::vector<WordGroup>& Aspects() {
  static const auto* groups = new std::vector<WordGroup>{
      {{"plot", "story"}, {"storyline", "narrative"}},
      {{"acting", "cast"}, {"performers", "ensemble"}},
      {{"script", "dialogue"}, {"screenplay", "writing"}},
      {{"soundtrack", "music"}, {"score", "melodies"}},
      {{"ending", "finale"}, {"conclusion", "climax"}},
      {{"pacing"}, {"tempo", "rhythm"}},
      {{"cinematography", "visuals"}, {"photography", "imagery"}},
  };
  return *groups;
}

// Slots: {P} adjective of the label's sentiment, {O} adjective of the
// opposite sentiment, {V} verb of the label's sentiment, {N} noun, {A}
// aspect, {I} intensifier.
const std::vector<std::string>& Templates() {
  static const auto* templates = new std::vector<std::string>{
      "I {V} this {N} , the {A} was {I} {P} and the {A} was {P} .",
      "The {A} was {P} , the {A} felt {P} , and overall the {N} was {I} {P} .",
      "We watched the {N} last night and it's {I} {P} ; the {A} is {P} too .",
      "I didn't expect much , but the {N} turned out {P} and the {A} was {I} {P} .",
      "The director made a {P} {N} , and the {A} is {P} from start to finish .",
      "My friends {V} the {N} , and I thought the {A} was {I} {P} .",
      "It is a {P} {N} with a {P} {A} , and I would say the {A} is {P} as well .",
      "What a {P} {N} ! The {A} was {P} and I {V} every minute of it .",
      "If you ask me , this {N} is {I} {P} , and the {A} does not feel {O} at all .",
      "You are going to find the {A} {P} , and the {N} itself is {P} .",
      "I have seen many films like this , but this one is {P} and the {A} is {I} {P} .",
      "The {N} was {P} , the {A} wasn't {O} , and I {V} the {A} .",
  };
  return *templates;
}

const std::vector<std::string>& MixedClauses() {
  static const auto* clauses = new std::vector<std::string>{
      ", although the {A} was {O} .",
      ", even if the {A} is a bit {O} .",
      ", but the {A} was {I} {O} .",
  };
  return *clauses;
}

const std::vector<std::string>& Prefixes() {
  static const auto* prefixes = new std::vector<std::string>{
      "Honestly ,", "In my opinion ,", "From the opening scene ,",
      "To be fair ,", "After the screening ,", "All in all ,"};
  return *prefixes;
}

const std::vector<std::string>& Suffixes() {
  static const auto* suffixes = new std::vector<std::string>{
      ", at least for me .", ", to be honest .",
      "for what it's worth ."};
  return *suffixes;
}

class SentenceWriter {
 public:
  SentenceWriter(const DeskCorpusConfig& config, Rng& rng)
      : config_(config), rng_(rng) {}

  std::string Write(int label) {
    std::string text = Pick(Templates());
    if (rng_.Bernoulli(config_.mixed_rate)) {
      text = ReplaceEnding(text, Pick(MixedClauses()));
    }
    if (rng_.Bernoulli(0.3)) {
      std::string suffix = Pick(Suffixes());
      text = ReplaceEnding(text, suffix.front() == ',' ? suffix : ", " + suffix);
    }
    if (rng_.Bernoulli(0.5)) {
      if (text.rfind("I ", 0) != 0) text[0] = static_cast<char>(text[0] - 'A' + 'a');
      text = Pick(Prefixes()) + " " + text;
    }
    return Render(text, label);
  }

 private:
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(rng_.Uniform(items.size()))];
  }

  std::string Word(const WordGroup& group) {
    const std::size_t seen = (group.rare.size() + 1) / 2;
    if (seen > 0 && rng_.Bernoulli(config_.rare_rate)) {
      return group.rare[static_cast<std::size_t>(rng_.Uniform(seen))];
    }
    return Pick(group.common);
  }

  // Swaps the final " ." (or "!") clause ending for `ending`.
  static std::string ReplaceEnding(const std::string& text, const std::string& ending) {
    std::size_t cut = text.rfind(" .");
    if (cut == std::string::npos || cut + 2 != text.size()) return text;
    return text.substr(0, cut) + " " + ending;
  }

  std::string Render(const std::string& pattern, int label) {
    const auto& own = label == 1 ? PositiveAdjectives() : NegativeAdjectives();
    const auto& opposite = label == 1 ? NegativeAdjectives() : PositiveAdjectives();
    const WordGroup& verbs = label == 1 ? PositiveVerbs() : NegativeVerbs();
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < pattern.size()) {
      std::size_t space = pattern.find(' ', i);
      if (space == std::string::npos) space = pattern.size();
      std::string token = pattern.substr(i, space - i);
      i = space + 1;
      if (token == "{P}") {
        token = Word(Pick(own));
      } else if (token == "{O}") {
        token = Word(Pick(opposite));
      } else if (token == "{V}") {
        token = Word(verbs);
      } else if (token == "{N}") {
        token = Word(Nouns());
      } else if (token == "{A}") {
        token = Word(Pick(Aspects()));
      } else if (token == "{I}") {
        token = Word(Intensifiers());
      }
      words.push_back(std::move(token));
    }
    std::string out;
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::string word = words[w];
      if ((word == "a" || word == "A") && w + 1 < words.size() &&
          std::string("aeiou").find(words[w + 1][0]) != std::string::npos) {
        word += "n";
      }
      if (!out.empty()) out += ' ';
      out += word;
    }
    return out;
  }

  const DeskCorpusConfig& config_;
  Rng& rng_;
};

Dataset MakeSplit(const DeskCorpusConfig& config, std::size_t size, Split split,
                  std::string_view prefix) {
  Dataset data;
  data.num_classes = 2;
  data.split = split;
  Rng rng(DeriveSeed(config.seed, "desk-corpus", prefix));
  SentenceWriter writer(config, rng);
  for (std::size_t n = 0; n < size; ++n) {
    const int sentiment = static_cast<int>(n % 2);
    TextSample sample;
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%05zu", std::string(prefix).c_str(), n);
    sample.id = id;
    sample.text = writer.Write(sentiment);
    sample.label = rng.Bernoulli(config.label_noise) ? 1 - sentiment : sentiment;
    data.samples.push_back(std::move(sample));
  }
  return data;
}

void AddGroup(Thesaurus& thesaurus, const WordGroup& group) {
  std::vector<std::string> ranked = group.common;
  ranked.insert(ranked.end(), group.rare.begin(), group.rare.end());
  for (const std::string& word : ranked) thesaurus.Set(word, ranked);
}

}  // namespace

DeskCorpus GenerateDeskCorpus(const DeskCorpusConfig& config) {
  DeskCorpus corpus;
  corpus.train = MakeSplit(config, config.train_size, Split::kTrain, "train");
  corpus.test = MakeSplit(config, config.test_size, Split::kTest, "test");
  for (const WordGroup& g : PositiveAdjectives()) AddGroup(corpus.thesaurus, g);
  for (const WordGroup& g : NegativeAdjectives()) AddGroup(corpus.thesaurus, g);
  for (const WordGroup& g : Aspects()) AddGroup(corpus.thesaurus, g);
  AddGroup(corpus.thesaurus, PositiveVerbs());
  AddGroup(corpus.thesaurus, NegativeVerbs());
  AddGroup(corpus.thesaurus, Nouns());
  AddGroup(corpus.thesaurus, Intensifiers());
  return corpus;
}

}  // namespace textguard
