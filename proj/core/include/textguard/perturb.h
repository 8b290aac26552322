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

// Attack-style artificial sample generators. Each applies one family's
// modification once and never queries a victim model.

#ifndef TEXTGUARD_PERTURB_H_
#define TEXTGUARD_PERTURB_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/backend.h"
#include "textguard/corpus.h"
#include "textguard/lexicon.h"
#include "textguard/rng.h"

namespace textguard {

enum class PerturbFamilyKind { kCharOps, kThesaurusSub, kMlmSub };

std::string_view FamilyName(PerturbFamilyKind kind);  // "char", "syn", "mlm"
PerturbFamilyKind ParseFamily(std::string_view name);

enum class CharOp { kSubstitute, kInsert, kDelete, kSwap };

struct CharOpMix {
  double substitute = 0.25;
  double insert = 0.25;
  double del = 0.25;
  double swap = 0.25;
};

struct PerturbFamily {
  PerturbFamilyKind kind = PerturbFamilyKind::kCharOps;
  // Fraction of eligible words touched; the count is rounded up.
  double rate = 0.15;
  CharOpMix mix;
  // Substitutes are drawn uniformly from this many top-ranked synonyms.
  std::size_t synonym_pool = 50;
  int mlm_top_k = 5;

  // Defaults: rate 0.15 for char_ops and mlm_sub, 0.3 for thesaurus_sub.
  static PerturbFamily Default(PerturbFamilyKind kind);
  void Validate() const;
};

struct PerturbResult {
  std::string text;
  std::size_t words_modified = 0;
  // No word could be modified; `text` equals the input.
  bool unmodifiable = false;
  bool fallback_used = false;
};

// ceil(rate * n) with a guard against representation error (0.3 * 10).
std::size_t CeilCount(double rate, std::size_t n);

// One character operation on `word`, keeping its first and last characters
// (insertion happens strictly inside the word). Returns nullopt when the op
// cannot change this word (e.g. swap on a 3-letter word).
std::optional<std::string> ApplyCharOp(std::string_view word, CharOp op, Rng& rng);

// Every distinct result of `op` on `word` under the same rules.
std::vector<std::string> EnumerateCharOp(std::string_view word, CharOp op);

PerturbResult CharPerturb(std::string_view text, double rate,
                          const CharOpMix& mix, std::uint64_t seed);

// Replaces ceil(rate * n_content) content words (capped by the number with
// single-token synonyms) by a synonym drawn uniformly from the top `pool`.
PerturbResult SynonymPerturb(std::string_view text, double rate,
                             const Thesaurus& thesaurus, std::uint64_t seed,
                             std::size_t pool = 50);

// Masks ceil(rate * n_content) words and takes the best backend suggestion
// that differs from the original. Without an mlm-capable endpoint, or when
// the backend fails under the rule-based policy, the result is exactly
// SynonymPerturb(text, rate, thesaurus, seed, pool) with fallback_used set.
PerturbResult MlmPerturb(std::string_view text, double rate,
                         const BackendEndpoint* endpoint,
                         const Thesaurus& thesaurus, std::uint64_t seed,
                         std::size_t pool = 50, int top_k = 5);

struct PerturbResources {
  const Thesaurus* thesaurus = nullptr;
  const BackendEndpoint* endpoint = nullptr;
};

PerturbResult ApplyFamily(std::string_view text, const PerturbFamily& family,
                          const PerturbResources& resources, std::uint64_t seed);

struct ArtificialDataset {
  Dataset data;
  // Originals whose artificial counterpart could not be produced.
  std::size_t dropped = 0;
};

// Every original (detector_label 0) followed by its artificial counterpart
// (detector_label 1, provenance artificial, source_id = original id). Each
// sample uses the seed DeriveSeed(seed, "perturb", sample.id).
ArtificialDataset MakeArtificialDataset(const Dataset& data,
                                        const PerturbFamily& family,
                                        const PerturbResources& resources,
                                        std::uint64_t seed);

}  // namespace textguard

#endif  // TEXTGUARD_PERTURB_H_
