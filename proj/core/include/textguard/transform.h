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

// The six input-rewriting functions used by the defense, each with a
// rule-based path that needs no backend.

#ifndef TEXTGUARD_TRANSFORM_H_
#define TEXTGUARD_TRANSFORM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/backend.h"
#include "textguard/errors.h"
#include "textguard/lexicon.h"

namespace textguard {

// Declaration order is the canonical order used when averaging.
enum class TransformId {
  kBackTranslation,
  kMlmSuggestion,
  kAdverbInsertion,
  kTenseChange,
  kSynonymSwap,
  kContraction,
};

inline constexpr std::array<TransformId, 6> kAllTransforms = {
    TransformId::kBackTranslation, TransformId::kMlmSuggestion,
    TransformId::kAdverbInsertion, TransformId::kTenseChange,
    TransformId::kSynonymSwap,     TransformId::kContraction,
};

std::string_view TransformName(TransformId id);  // e.g. "back_translation"
TransformId ParseTransform(std::string_view name);
bool RequiresBackend(TransformId id);

class TransformError : public Error {
 public:
  TransformError(TransformId id, const std::string& message)
      : Error(std::string(TransformName(id)) + ": " + message), id_(id) {}
  TransformId id() const { return id_; }

 private:
  TransformId id_;
};

struct TransformParams {
  double synonym_touch_rate = 0.2;
  double mlm_touch_rate = 0.2;
  int mlm_top_k = 5;
  std::string pivot_language = "de";
};

struct TransformResources {
  const Thesaurus* thesaurus = nullptr;
  const MorphRules* morph = nullptr;  // MorphRules::Default() when null
  // Backend for mlm_suggestion and back_translation. Without one they use
  // their rule-based fallback.
  const BackendEndpoint* endpoint = nullptr;
};

struct TransformReport {
  TransformId id = TransformId::kContraction;
  std::string input;
  std::string output;
  // Token indices of the input that were rewritten (for adverb insertion,
  // the index the adverb was inserted before).
  std::vector<std::size_t> positions;
  bool fallback_used = false;
};

// Rule semantics:
//   contraction       contract table phrases left to right; if none matched,
//                     expand contracted forms instead
//   synonym_swap      ceil(rate * n) of the n words with a rank-1 synonym
//   adverb_insertion  one adverb before the first verb (else first word)
//   tense_change      each recognised verb moves to the opposite tense
//   mlm_suggestion    backend fill-in; fallback is synonym_swap
//   back_translation  backend round trip; fallback is synonym_swap followed
//                     by contraction
// Backend failures throw TransformError under FallbackPolicy::kError.
TransformReport ApplyTransform(TransformId id, std::string_view text,
                               const TransformResources& resources,
                               std::uint64_t seed,
                               const TransformParams& params = {});

// k distinct ids drawn uniformly without replacement, in draw order.
// Throws ConfigError unless 1 <= k <= 6.
std::vector<TransformId> SampleTransforms(std::uint64_t seed, std::size_t k);

// Contraction/expansion passes on their own.
std::string ContractText(std::string_view text, const MorphRules& morph,
                         std::vector<std::size_t>* positions = nullptr);
std::string ExpandText(std::string_view text, const MorphRules& morph,
                       std::vector<std::size_t>* positions = nullptr);

}  // namespace textguard

#endif  // TEXTGUARD_TRANSFORM_H_
