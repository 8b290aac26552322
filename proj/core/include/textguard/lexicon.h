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

// Linguistic resources: a ranked thesaurus and the morphology tables used by
// the perturbation and transformation code.

#ifndef TEXTGUARD_LEXICON_H_
#define TEXTGUARD_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace textguard {

// Lowercase headword -> synonyms, most similar first. Lists never contain the
// headword and never contain duplicates.
class Thesaurus {
 public:
  using Entries = std::map<std::string, std::vector<std::string>, std::less<>>;

  // Inserts or replaces an entry after lowercasing, removing the headword
  // and deduplicating. Returns true if an existing entry was replaced.
  bool Set(std::string_view headword, const std::vector<std::string>& synonyms);

  // First min(s, available) synonyms of `word` (case-insensitive lookup).
  std::vector<std::string> Synonyms(std::string_view word, std::size_t s) const;

  // Whole ranked list, or nullptr.
  const std::vector<std::string>* Find(std::string_view word) const;

  bool Contains(std::string_view word) const { return Find(word) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const Entries& entries() const { return entries_; }

 private:
  Entries entries_;
};

// Format: one `word<TAB>syn1,syn2,...` line per headword; lines starting with
// '#' are comments (the file header documents how the ranking was built).
// Duplicate headwords: the later line wins and a warning is appended.
Thesaurus LoadThesaurus(const std::filesystem::path& path,
                        std::vector<std::string>* warnings = nullptr);
Thesaurus ReadThesaurus(std::istream& in, std::string_view source_name,
                        std::vector<std::string>* warnings = nullptr);
void SaveThesaurus(const std::filesystem::path& path, const Thesaurus& thesaurus,
                   std::string_view header_comment = {});

enum class Tense { kPast, kPresent };

struct IrregularVerb {
  std::string base;
  std::string past;
  std::string third_person;  // present tense, third person singular
};

struct ContractionPair {
  std::string expanded;    // "do not"
  std::string contracted;  // "don't"
};

// Contraction table, adverb inventory and verb morphology.
class MorphRules {
 public:
  MorphRules() = default;
  MorphRules(std::vector<ContractionPair> contractions,
             std::vector<std::string> adverbs,
             std::vector<IrregularVerb> irregular_verbs,
             std::vector<std::string> regular_verbs);

  // Built-in English tables (43 contraction pairs).
  static const MorphRules& Default();

  const std::vector<ContractionPair>& contractions() const {
    return contractions_;
  }
  const std::vector<std::string>& adverbs() const { return adverbs_; }
  const std::vector<IrregularVerb>& irregular_verbs() const {
    return irregular_;
  }
  const std::vector<std::string>& regular_verbs() const { return regular_; }

  std::optional<std::string> Contract(std::string_view expanded) const;
  std::optional<std::string> Expand(std::string_view contracted) const;

  // Base form of a verb token, or nullopt for tokens not recognised as verbs.
  // Recognition uses the irregular table and the regular-verb list with
  // -s/-es/-ies/-ed/-ied suffix rules.
  std::optional<std::string> VerbBase(std::string_view token) const;
  bool IsVerbCandidate(std::string_view token) const {
    return VerbBase(token).has_value();
  }

  // Tense of a recognised verb token; base forms count as present.
  std::optional<Tense> DetectTense(std::string_view token) const;

  // Re-inflects a verb into `target` (past, or present third person
  // singular). Irregular entries take precedence over suffix rules; base
  // forms stay unchanged for kPresent. Non-verbs are returned unchanged.
  std::string InflectVerb(std::string_view token, Tense target) const;

 private:
  void Index();
  std::string PastOf(const std::string& base) const;
  std::string ThirdPersonOf(const std::string& base) const;

  std::vector<ContractionPair> contractions_;
  std::vector<std::string> adverbs_;
  std::vector<IrregularVerb> irregular_;
  std::vector<std::string> regular_;

  std::map<std::string, std::size_t, std::less<>> irregular_by_form_;
  std::map<std::string, std::string, std::less<>> contract_;
  std::map<std::string, std::string, std::less<>> expand_;
  std::map<std::string, bool, std::less<>> regular_set_;
};

// Keyed text file with [CONTRACTIONS] (expanded<TAB>contracted),
// [ADVERBS] (one per line), [IRREGULAR_VERBS] (base<TAB>past<TAB>third)
// and an optional [VERBS] section of regular base forms. '#' starts a
// comment line.
MorphRules LoadMorphRules(const std::filesystem::path& path);
MorphRules ReadMorphRules(std::istream& in, std::string_view source_name);
void WriteMorphRules(std::ostream& out, const MorphRules& rules);

}  // namespace textguard

#endif  // TEXTGUARD_LEXICON_H_
