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

#ifndef TEXTGUARD_FEATURES_H_
#define TEXTGUARD_FEATURES_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace textguard {

enum class FeatureNorm : std::uint32_t { kNone = 0, kL1 = 1, kL2 = 2 };

// Hashed bag of character n-grams (per word, with '<' '>' boundary marks)
// and lowercased word unigrams/bigrams.
//
// Hash: 64-bit FNV-1a over "<kind byte><feature bytes>", starting from the
// FNV offset basis xor `hash_seed`, reduced modulo `hash_dim`. The function
// and the default seed are part of the model file contract and must not
// change.
struct FeatureSpec {
  std::uint32_t hash_dim = 1u << 18;
  std::uint32_t char_ngram_min = 3;
  std::uint32_t char_ngram_max = 5;
  bool word_unigrams = true;
  bool word_bigrams = true;
  std::uint64_t hash_seed = 0x7467756172640001ULL;
  FeatureNorm norm = FeatureNorm::kL2;

  void Validate() const;
  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

struct SparseFeature {
  std::uint32_t index;
  double value;
};

// Sorted by index, no duplicate indices.
using SparseVector = std::vector<SparseFeature>;

std::uint32_t HashFeature(const FeatureSpec& spec, char kind,
                          std::string_view feature);

SparseVector ExtractFeatures(const FeatureSpec& spec, std::string_view text);

}  // namespace textguard

#endif  // TEXTGUARD_FEATURES_H_
