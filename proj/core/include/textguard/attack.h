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

// Black-box attacks (greedy word substitution and character edits) against
// any TextClassifier, filtered by a composable constraint set.

#ifndef TEXTGUARD_ATTACK_H_
#define TEXTGUARD_ATTACK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/backend.h"
#include "textguard/classifier.h"
#include "textguard/corpus.h"
#include "textguard/detector.h"
#include "textguard/lexicon.h"

namespace textguard {

// Similarity in [0, 1]; may throw, which fails the similarity constraint.
using SimilarityFn = std::function<double(std::string_view, std::string_view)>;

// Cosine between lowercased word-token frequency vectors. Two texts without
// word tokens have similarity 1.
double BagOfWordsCosine(std::string_view a, std::string_view b);

struct ConstraintSet {
  std::optional<double> max_perturbation_rate;
  // Absolute bound on the codepoint edit distance to the original.
  std::optional<std::size_t> max_levenshtein;
  // Bound of factor * (number of modified tokens).
  std::optional<double> levenshtein_per_modified_word;
  std::optional<double> min_similarity;
  SimilarityFn similarity;  // BagOfWordsCosine when empty
  // Not owned. Candidates pass only if AnomalyScore < 0.5.
  const DetectorModel* anomaly_detector = nullptr;

  // max_perturbation_rate 0.4 and min_similarity 0.85.
  static ConstraintSet WordDefaults();
  // max_perturbation_rate 0.4 and an edit distance of at most two per
  // modified word.
  static ConstraintSet CharDefaults();

  bool empty() const;
  // Throws ConfigError when no constraint is set or a threshold is out of
  // range.
  void Validate() const;
};

struct ConstraintCheck {
  std::string name;  // perturbation_rate, levenshtein, similarity, anomaly
  bool passed = false;
  std::optional<double> value;
  double limit = 0.0;
  std::string reason;  // set when the value could not be computed
};

struct ConstraintAudit {
  std::vector<ConstraintCheck> checks;

  bool passed() const;
  const ConstraintCheck* Find(std::string_view name) const;
};

ConstraintAudit CheckConstraints(std::string_view original,
                                 std::string_view candidate,
                                 const ConstraintSet& constraints);

enum class AttackKind { kWord, kChar };
enum class CandidateSource { kThesaurus, kMlm };

AttackKind ParseAttackKind(std::string_view name);            // word | char
CandidateSource ParseCandidateSource(std::string_view name);  // thesaurus | mlm

struct AttackConfig {
  AttackKind kind = AttackKind::kWord;
  CandidateSource source = CandidateSource::kThesaurus;
  ConstraintSet constraints = ConstraintSet::WordDefaults();
  std::size_t budget = 2000;  // victim queries per sample
  std::size_t max_candidates = 50;
  // Char attack: edits sampled per operation and word.
  std::size_t char_candidates_per_op = 4;
  int mlm_top_k = 10;
  std::uint64_t seed = 0;
};

struct AttackResources {
  const Thesaurus* thesaurus = nullptr;
  const BackendEndpoint* endpoint = nullptr;
};

struct AttackOutcome {
  TextSample original;
  TextSample final_sample;
  bool success = false;
  std::size_t queries = 0;
  std::size_t words_modified = 0;
  int original_prediction = -1;
  int final_prediction = -1;
  bool fallback_used = false;
  ConstraintAudit audit;
};

// Token indices by descending drop in the probability of `target_class`
// when the token is deleted; ties in ascending index order. Each call costs
// size + 1 victim queries, added to `*queries` when given.
std::vector<std::size_t> WordImportance(const TextClassifier& victim,
                                        std::string_view text, int target_class,
                                        std::size_t* queries = nullptr);

// Substitutes words in importance order, keeping at each position the
// constraint-satisfying candidate that most lowers the probability of the
// originally predicted class, until the prediction flips or the budget runs
// out.
AttackOutcome GreedyWordAttack(const TextClassifier& victim,
                               const TextSample& sample,
                               const AttackConfig& config,
                               const AttackResources& resources);

// Same search with one character edit per word as candidates.
AttackOutcome CharAttack(const TextClassifier& victim, const TextSample& sample,
                         const AttackConfig& config);

AttackOutcome AttackSample(const TextClassifier& victim, const TextSample& sample,
                           const AttackConfig& config,
                           const AttackResources& resources);

struct AttackRun {
  std::vector<AttackOutcome> outcomes;
  // Samples the victim already misclassified; not attacked.
  std::size_t skipped = 0;
};

// Attacks every labeled sample the victim classifies correctly. Per-sample
// seeds are DeriveSeed(config.seed, "attack", sample.id).
AttackRun RunAttack(const TextClassifier& victim, const Dataset& data,
                    const AttackConfig& config, const AttackResources& resources);

// successes / outcomes; throws ConfigError for an empty list.
double AttackSuccessRate(const std::vector<AttackOutcome>& outcomes);

// Original (detector_label 0) followed by adversarial (detector_label 1) for
// every successful outcome.
Dataset AdversarialPairs(const std::vector<AttackOutcome>& outcomes,
                         int num_classes, Split split);

// One JSON object per outcome, without a trailing newline.
std::string OutcomeJson(const AttackOutcome& outcome);

}  // namespace textguard

#endif  // TEXTGUARD_ATTACK_H_
