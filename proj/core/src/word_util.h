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

#ifndef TEXTGUARD_SRC_WORD_UTIL_H_
#define TEXTGUARD_SRC_WORD_UTIL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textguard/corpus.h"
#include "textguard/lexicon.h"

namespace textguard::internal {

// Upper-cases the first letter of `word` when `original` starts upper-case.
inline std::string MatchLeadingCase(std::string_view original, std::string word) {
  if (!original.empty() && original[0] >= 'A' && original[0] <= 'Z' &&
      !word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

inline bool IsSingleWord(std::string_view candidate) {
  TokenizedText t = Tokenize(candidate);
  return t.size() == 1 && IsWordToken(t.tokens[0]) && t.spans[0].begin == 0 &&
         t.spans[0].end == candidate.size();
}

// Positions of modifiable word tokens.
inline std::vector<std::size_t> ContentPositions(const TokenizedText& tokens) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsModifiableWord(tokens.tokens[i])) positions.push_back(i);
  }
  return positions;
}

// Top-`pool` synonyms of `word` that are single word tokens.
inline std::vector<std::string> UsableSynonyms(const Thesaurus& thesaurus,
                                               std::string_view word,
                                               std::size_t pool) {
  std::vector<std::string> out;
  std::string lower = AsciiLower(word);
  for (std::string& syn : thesaurus.Synonyms(word, pool)) {
    if (syn != lower && IsSingleWord(syn)) out.push_back(std::move(syn));
  }
  return out;
}

}  // namespace textguard::internal

#endif  // TEXTGUARD_SRC_WORD_UTIL_H_
