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

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "textguard/corpus.h"
#include "textguard/errors.h"

namespace textguard {

// --- Thesaurus -------------------------------------------------------------

bool Thesaurus::Set(std::string_view headword,
                    const std::vector<std::string>& synonyms) {
  std::string head = AsciiLower(headword);
  std::vector<std::string> ranked;
  std::set<std::string, std::less<>> seen;
  for (const std::string& raw : synonyms) {
    std::string syn = AsciiLower(raw);
    if (syn.empty() || syn == head || !seen.insert(syn).second) continue;
    ranked.push_back(std::move(syn));
  }
  auto [it, inserted] = entries_.insert_or_assign(std::move(head), std::move(ranked));
  return !inserted;
}

const std::vector<std::string>* Thesaurus::Find(std::string_view word) const {
  auto it = entries_.find(AsciiLower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> Thesaurus::Synonyms(std::string_view word,
                                             std::size_t s) const {
  const std::vector<std::string>* list = Find(word);
  if (list == nullptr) return {};
  std::size_t n = std::min(s, list->size());
  return std::vector<std::string>(list->begin(), list->begin() + n);
}

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> SplitOn(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    parts.emplace_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Thesaurus ReadThesaurus(std::istream& in, std::string_view source_name,
                        std::vector<std::string>* warnings) {
  Thesaurus thesaurus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(std::string(source_name), line_no,
                       "expected 'word<TAB>syn1,syn2,...'");
    }
    std::string_view head = Trim(std::string_view(line).substr(0, tab));
    if (head.empty()) {
      throw ParseError(std::string(source_name), line_no, "empty headword");
    }
    std::vector<std::string> synonyms =
        SplitOn(Trim(std::string_view(line).substr(tab + 1)), ',');
    if (thesaurus.Set(head, synonyms) && warnings != nullptr) {
      warnings->push_back(std::string(source_name) + ":" +
                          std::to_string(line_no) + ": duplicate headword '" +
                          AsciiLower(head) + "' replaces earlier entry");
    }
  }
  return thesaurus;
}

Thesaurus LoadThesaurus(const std::filesystem::path& path,
                        std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open thesaurus '" + path.string() + "'");
  return ReadThesaurus(in, path.string(), warnings);
}

void SaveThesaurus(const std::filesystem::path& path, const Thesaurus& thesaurus,
                   std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write thesaurus '" + path.string() + "'");
  if (!header_comment.empty()) {
    std::istringstream lines{std::string(header_comment)};
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
  }
  for (const auto& [head, synonyms] : thesaurus.entries()) {
    out << head << '\t';
    for (std::size_t i = 0; i < synonyms.size(); ++i) {
      if (i > 0) out << ',';
      out << synonyms[i];
    }
    out << '\n';
  }
}

// --- MorphRules --------------------------------------------------------------

MorphRules::MorphRules(std::vector<ContractionPair> contractions,
                       std::vector<std::string> adverbs,
                       std::vector<IrregularVerb> irregular_verbs,
                       std::vector<std::string> regular_verbs)
    : contractions_(std::move(contractions)),
      adverbs_(std::move(adverbs)),
      irregular_(std::move(irregular_verbs)),
      regular_(std::move(regular_verbs)) {
  Index();
}

void MorphRules::Index() {
  contract_.clear();
  expand_.clear();
  for (const ContractionPair& pair : contractions_) {
    std::string expanded = AsciiLower(pair.expanded);
    std::string contracted = AsciiLower(pair.contracted);
    if (!contract_.emplace(expanded, contracted).second ||
        !expand_.emplace(contracted, expanded).second) {
      throw ConfigError("contraction table is not bijective at '" + expanded +
                        "' / '" + contracted + "'");
    }
  }
  irregular_by_form_.clear();
  for (std::size_t i = 0; i < irregular_.size(); ++i) {
    const IrregularVerb& verb = irregular_[i];
    for (const std::string& form : {verb.base, verb.past, verb.third_person}) {
      irregular_by_form_.emplace(AsciiLower(form), i);
    }
  }
  regular_set_.clear();
  for (const std::string& verb : regular_) regular_set_.emplace(AsciiLower(verb), true);
}

std::optional<std::string> MorphRules::Contract(std::string_view expanded) const {
  auto it = contract_.find(AsciiLower(expanded));
  if (it == contract_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> MorphRules::Expand(std::string_view contracted) const {
  auto it = expand_.find(AsciiLower(contracted));
  if (it == expand_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::string MatchCase(std::string_view original, std::string word) {
  if (!original.empty() && original[0] >= 'A' && original[0] <= 'Z' &&
      !word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

}  // namespace

std::optional<std::string> MorphRules::VerbBase(std::string_view token) const {
  std::string lower = AsciiLower(token);
  if (auto it = irregular_by_form_.find(lower); it != irregular_by_form_.end()) {
    return irregular_[it->second].base;
  }
  if (regular_set_.count(lower)) return lower;
  std::vector<std::string> candidates;
  const std::size_t n = lower.size();
  if (n > 4 && (EndsWith(lower, "ied") || EndsWith(lower, "ies"))) {
    candidates.push_back(lower.substr(0, n - 3) + "y");
  }
  if (n > 3 && EndsWith(lower, "ed")) {
    candidates.push_back(lower.substr(0, n - 2));
    candidates.push_back(lower.substr(0, n - 1));
    if (n > 4 && lower[n - 3] == lower[n - 4]) {
      candidates.push_back(lower.substr(0, n - 3));
    }
  } else if (n > 3 && EndsWith(lower, "es")) {
    candidates.push_back(lower.substr(0, n - 2));
    candidates.push_back(lower.substr(0, n - 1));
  } else if (n > 2 && EndsWith(lower, "s") && !EndsWith(lower, "ss")) {
    candidates.push_back(lower.substr(0, n - 1));
  }
  for (const std::string& candidate : candidates) {
    if (regular_set_.count(candidate)) return candidate;
  }
  return std::nullopt;
}

std::optional<Tense> MorphRules::DetectTense(std::string_view token) const {
  std::optional<std::string> base = VerbBase(token);
  if (!base) return std::nullopt;
  std::string lower = AsciiLower(token);
  if (auto it = irregular_by_form_.find(lower); it != irregular_by_form_.end()) {
    const IrregularVerb& verb = irregular_[it->second];
    return (lower == AsciiLower(verb.past) && lower != AsciiLower(verb.base))
               ? Tense::kPast
               : Tense::kPresent;
  }
  if (lower == *base) return Tense::kPresent;
  return EndsWith(lower, "ed") ? Tense::kPast : Tense::kPresent;
}

std::string MorphRules::PastOf(const std::string& base) const {
  if (auto it = irregular_by_form_.find(base); it != irregular_by_form_.end()) {
    return AsciiLower(irregular_[it->second].past);
  }
  const std::size_t n = base.size();
  if (EndsWith(base, "e")) return base + "d";
  if (n > 1 && base[n - 1] == 'y' && !IsVowel(base[n - 2])) {
    return base.substr(0, n - 1) + "ied";
  }
  // Short consonant-vowel-consonant stems double the final consonant.
  if (n >= 3 && n <= 4 && !IsVowel(base[n - 1]) && IsVowel(base[n - 2]) &&
      !IsVowel(base[n - 3]) && base[n - 1] != 'w' && base[n - 1] != 'x' &&
      base[n - 1] != 'y') {
    return base + base[n - 1] + "ed";
  }
  return base + "ed";
}

std::string MorphRules::ThirdPersonOf(const std::string& base) const {
  if (auto it = irregular_by_form_.find(base); it != irregular_by_form_.end()) {
    return AsciiLower(irregular_[it->second].third_person);
  }
  const std::size_t n = base.size();
  if (EndsWith(base, "s") || EndsWith(base, "x") || EndsWith(base, "z") ||
      EndsWith(base, "ch") || EndsWith(base, "sh") || EndsWith(base, "o")) {
    return base + "es";
  }
  if (n > 1 && base[n - 1] == 'y' && !IsVowel(base[n - 2])) {
    return base.substr(0, n - 1) + "ies";
  }
  return base + "s";
}

std::string MorphRules::InflectVerb(std::string_view token, Tense target) const {
  std::optional<std::string> base = VerbBase(token);
  if (!base) return std::string(token);
  std::optional<Tense> current = DetectTense(token);
  if (current == target) return std::string(token);
  if (target == Tense::kPast) return MatchCase(token, PastOf(*base));
  return MatchCase(token, ThirdPersonOf(*base));
}

const MorphRules& MorphRules::Default() {
  static const MorphRules* rules = new MorphRules(
      {
          {"do not", "don't"},       {"does not", "doesn't"},
          {"did not", "didn't"},     {"is not", "isn't"},
          {"are not", "aren't"},     {"was not", "wasn't"},
          {"were not", "weren't"},   {"have not", "haven't"},
          {"has not", "hasn't"},     {"had not", "hadn't"},
          {"will not", "won't"},     {"would not", "wouldn't"},
          {"can not", "can't"},      {"could not", "couldn't"},
          {"should not", "shouldn't"}, {"must not", "mustn't"},
          {"need not", "needn't"},   {"it is", "it's"},
          {"that is", "that's"},     {"there is", "there's"},
          {"what is", "what's"},     {"he is", "he's"},
          {"she is", "she's"},       {"who is", "who's"},
          {"here is", "here's"},     {"i am", "i'm"},
          {"you are", "you're"},     {"we are", "we're"},
          {"they are", "they're"},   {"i have", "i've"},
          {"you have", "you've"},    {"we have", "we've"},
          {"they have", "they've"},  {"i will", "i'll"},
          {"you will", "you'll"},    {"he will", "he'll"},
          {"she will", "she'll"},    {"we will", "we'll"},
          {"they will", "they'll"},  {"it will", "it'll"},
          {"i would", "i'd"},        {"you would", "you'd"},
          {"let us", "let's"},
      },
      {"really", "truly", "simply", "certainly", "clearly", "genuinely",
       "honestly", "definitely", "surely", "actually", "absolutely",
       "completely", "quite", "rather", "fairly", "deeply", "entirely",
       "mostly", "often", "usually", "finally", "easily", "largely"},
      {
          {"be", "was", "is"},          {"have", "had", "has"},
          {"do", "did", "does"},        {"go", "went", "goes"},
          {"make", "made", "makes"},    {"take", "took", "takes"},
          {"see", "saw", "sees"},       {"come", "came", "comes"},
          {"give", "gave", "gives"},    {"get", "got", "gets"},
          {"find", "found", "finds"},   {"think", "thought", "thinks"},
          {"tell", "told", "tells"},    {"become", "became", "becomes"},
          {"leave", "left", "leaves"},  {"feel", "felt", "feels"},
          {"bring", "brought", "brings"}, {"begin", "began", "begins"},
          {"keep", "kept", "keeps"},    {"hold", "held", "holds"},
          {"write", "wrote", "writes"}, {"stand", "stood", "stands"},
          {"hear", "heard", "hears"},   {"run", "ran", "runs"},
          {"meet", "met", "meets"},     {"pay", "paid", "pays"},
          {"sit", "sat", "sits"},       {"speak", "spoke", "speaks"},
          {"lose", "lost", "loses"},    {"grow", "grew", "grows"},
          {"fall", "fell", "falls"},    {"buy", "bought", "buys"},
          {"teach", "taught", "teaches"}, {"catch", "caught", "catches"},
          {"win", "won", "wins"},       {"sell", "sold", "sells"},
          {"send", "sent", "sends"},    {"build", "built", "builds"},
          {"spend", "spent", "spends"}, {"forget", "forgot", "forgets"},
          {"drive", "drove", "drives"}, {"break", "broke", "breaks"},
          {"sing", "sang", "sings"},    {"throw", "threw", "throws"},
          {"know", "knew", "knows"},    {"say", "said", "says"},
          {"understand", "understood", "understands"},
      },
      {"walk",     "love",      "like",      "enjoy",     "hate",
       "watch",    "want",      "need",      "play",      "try",
       "carry",    "stop",      "look",      "seem",      "laugh",
       "cry",      "deliver",   "create",    "direct",    "perform",
       "entertain", "bore",     "surprise",  "impress",   "disappoint",
       "move",     "touch",     "amaze",     "annoy",     "frustrate",
       "captivate", "charm",    "delight",   "fail",      "manage",
       "deserve",  "recommend", "expect",    "wait",      "happen",
       "help",     "remember",  "appreciate", "admire",   "adore",
       "dislike",  "despise",   "drag",      "stumble",   "succeed",
       "struggle", "miss",      "waste",     "offer",     "reward",
       "explore",  "capture",   "craft",     "ruin",      "invite",
       "insult",   "thrill",    "confuse",   "exhaust",   "please"});
  return *rules;
}

// --- Morph-rules file --------------------------------------------------------

MorphRules ReadMorphRules(std::istream& in, std::string_view source_name) {
  std::vector<ContractionPair> contractions;
  std::vector<std::string> adverbs;
  std::vector<IrregularVerb> irregular;
  std::vector<std::string> regular;
  std::string section;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& message) {
    throw ParseError(std::string(source_name), line_no, message);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (view.front() == '[') {
      if (view.back() != ']') fail("unterminated section header");
      section = std::string(view.substr(1, view.size() - 2));
      if (section != "CONTRACTIONS" && section != "ADVERBS" &&
          section != "IRREGULAR_VERBS" && section != "VERBS") {
        fail("unknown section '" + section + "'");
      }
      continue;
    }
    if (section.empty()) fail("entry outside of a section");
    std::vector<std::string> fields = SplitOn(view, '\t');
    if (section == "CONTRACTIONS") {
      if (fields.size() != 2) fail("expected 'expanded<TAB>contracted'");
      contractions.push_back({fields[0], fields[1]});
    } else if (section == "ADVERBS") {
      if (fields.size() != 1) fail("expected one adverb per line");
      adverbs.push_back(AsciiLower(fields[0]));
    } else if (section == "IRREGULAR_VERBS") {
      if (fields.size() != 3) fail("expected 'base<TAB>past<TAB>third'");
      irregular.push_back({AsciiLower(fields[0]), AsciiLower(fields[1]),
                           AsciiLower(fields[2])});
    } else {
      if (fields.size() != 1) fail("expected one verb per line");
      regular.push_back(AsciiLower(fields[0]));
    }
  }
  try {
    return MorphRules(std::move(contractions), std::move(adverbs),
                      std::move(irregular), std::move(regular));
  } catch (const ConfigError& e) {
    throw ParseError(std::string(source_name), 0, e.what());
  }
}

MorphRules LoadMorphRules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open morph rules '" + path.string() + "'");
  return ReadMorphRules(in, path.string());
}

void WriteMorphRules(std::ostream& out, const MorphRules& rules) {
  out << "[CONTRACTIONS]\n";
  for (const ContractionPair& pair : rules.contractions()) {
    out << pair.expanded << '\t' << pair.contracted << '\n';
  }
  out << "\n[ADVERBS]\n";
  for (const std::string& adverb : rules.adverbs()) out << adverb << '\n';
  out << "\n[IRREGULAR_VERBS]\n";
  for (const IrregularVerb& verb : rules.irregular_verbs()) {
    out << verb.base << '\t' << verb.past << '\t' << verb.third_person << '\n';
  }
  out << "\n[VERBS]\n";
  for (const std::string& verb : rules.regular_verbs()) out << verb << '\n';
}

}  // namespace textguard
