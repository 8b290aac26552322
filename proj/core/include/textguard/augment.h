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

// Random synonym substitution and its detector-guided variant, which keeps
// drawing candidates until the detector calls one anomalous.

#ifndef TEXTGUARD_AUGMENT_H_
#define TEXTGUARD_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "textguard/corpus.h"
#include "textguard/detector.h"
#include "textguard/lexicon.h"

namespace textguard {

struct AugmentConfig {
  double p = 30.0;  // percent of eligible words substituted
  std::size_t s = 50;  // synonym rank cutoff
  std::size_t max_attempts = 25;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SubstitutionResult {
  std::string text;
  std::size_t substitutions = 0;
  std::size_t eligible = 0;   // content words with at least one synonym
  std::size_t required = 0;   // ceil(p% * eligible)
  bool shortfall = false;     // fewer substitutions than required, or none possible
};

// Substitutes ceil(p% * n) of the n eligible words (modifiable words with a
// thesaurus entry), each by a synonym drawn uniformly from its top s.
SubstitutionResult RandomSynonymSubstitute(std::string_view text,
                                           const AugmentConfig& config,
                                           const Thesaurus& thesaurus,
                                           std::uint64_t seed);

// C(n, m) * s^m with m = ceil(p% * n), as a double (exact below 2^53).
double CandidateSpaceSize(std::size_t n, double p, std::size_t s);

struct AugmentStats {
  std::size_t accepted = 0;
  std::size_t flagged = 0;
  std::size_t attempts = 0;
};

// Originals followed by one augmented variant each. Attempt a of sample x
// uses DeriveSeed(config.seed, "augment", x.id, a). The first candidate the
// detector calls anomalous is accepted; after max_attempts the highest-scoring
// candidate is kept with flagged = true.
Dataset DetectorGuidedAugment(const Dataset& train, const DetectorModel& detector,
                              const AugmentConfig& config,
                              const Thesaurus& thesaurus,
                              AugmentStats* stats = nullptr);

// Same layout with the first candidate always kept (no selection).
Dataset RandomAugment(const Dataset& train, const AugmentConfig& config,
                      const Thesaurus& thesaurus);

}  // namespace textguard

#endif  // TEXTGUARD_AUGMENT_H_
