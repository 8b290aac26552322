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

#include "textguard/features.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "textguard/corpus.h"
#include "textguard/errors.h"
#include "textguard/rng.h"

namespace textguard {

void FeatureSpec::Validate() const {
  if (hash_dim == 0) throw ConfigError("feature hash_dim must be positive");
  if (char_ngram_min == 0 || char_ngram_min > char_ngram_max) {
    throw ConfigError("char n-gram range must satisfy 1 <= min <= max");
  }
  if (static_cast<std::uint32_t>(norm) > 2) {
    throw ConfigError("unknown feature normalization");
  }
}

std::uint32_t HashFeature(const FeatureSpec& spec, char kind,
                          std::string_view feature) {
  std::uint64_t h = Fnv1a64(std::string_view(&kind, 1),
                            kFnvOffsetBasis ^ spec.hash_seed);
  h = Fnv1a64(feature, h);
  return static_cast<std::uint32_t>(h % spec.hash_dim);
}

SparseVector ExtractFeatures(const FeatureSpec& spec, std::string_view text) {
  TokenizedText tokenized = Tokenize(text);
  std::unordered_map<std::uint32_t, double> counts;
  counts.reserve(tokenized.size() * 12);
  std::vector<std::string> lowered;
  lowered.reserve(tokenized.size());
  for (const std::string& token : tokenized.tokens) {
    lowered.push_back(AsciiLower(token));
  }

  for (const std::string& word : lowered) {
    if (spec.word_unigrams) counts[HashFeature(spec, 'w', word)] += 1.0;
    if (spec.char_ngram_max == 0 || !IsWordToken(word)) continue;
    std::u32string marked = U"<" + DecodeUtf8(word) + U">";
    for (std::uint32_t n = spec.char_ngram_min; n <= spec.char_ngram_max; ++n) {
      if (marked.size() < n) break;
      for (std::size_t i = 0; i + n <= marked.size(); ++i) {
        std::string gram = EncodeUtf8(std::u32string_view(marked).substr(i, n));
        counts[HashFeature(spec, 'c', gram)] += 1.0;
      }
    }
  }
  if (spec.word_bigrams) {
    for (std::size_t i = 0; i + 1 < lowered.size(); ++i) {
      std::string bigram = lowered[i];
      bigram.push_back(' ');
      bigram += lowered[i + 1];
      counts[HashFeature(spec, 'b', bigram)] += 1.0;
    }
  }

  SparseVector features;
  features.reserve(counts.size());
  for (const auto& [index, value] : counts) features.push_back({index, value});
  std::sort(features.begin(), features.end(),
            [](const SparseFeature& a, const SparseFeature& b) {
              return a.index < b.index;
            });

  double norm = 0.0;
  switch (spec.norm) {
    case FeatureNorm::kNone:
      norm = 1.0;
      break;
    case FeatureNorm::kL1:
      for (const SparseFeature& f : features) norm += std::abs(f.value);
      break;
    case FeatureNorm::kL2:
      for (const SparseFeature& f : features) norm += f.value * f.value;
      norm = std::sqrt(norm);
      break;
  }
  if (norm > 0.0 && norm != 1.0) {
    for (SparseFeature& f : features) f.value /= norm;
  }
  return features;
}

}  // namespace textguard
