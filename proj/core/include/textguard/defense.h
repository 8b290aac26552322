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

// Detect-then-transform defense: compliant inputs go straight to the
// classifier, anomalous ones are classified as the mean over k transformed
// variants.

#ifndef TEXTGUARD_DEFENSE_H_
#define TEXTGUARD_DEFENSE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/attack.h"
#include "textguard/classifier.h"
#include "textguard/corpus.h"
#include "textguard/detector.h"
#include "textguard/transform.h"

namespace textguard {

struct DefenseConfig {
  const DetectorModel* detector = nullptr;      // not owned
  const TextClassifier* classifier = nullptr;   // not owned
  std::vector<TransformId> transforms{kAllTransforms.begin(), kAllTransforms.end()};
  std::size_t k = 3;
  std::size_t draws_per_query = 1;
  std::uint64_t seed = 0;
  TransformResources resources;
  TransformParams params;

  void Validate() const;
};

enum class Route { kCompliant, kTransformed };
std::string_view RouteName(Route route);  // "compliant" | "transformed"

struct VariantPrediction {
  TransformId id;
  std::size_t draw = 0;
  std::string text;
  ProbDist probs = ProbDist::Uniform(2);
  bool fallback_used = false;
};

struct DefenseResult {
  ProbDist probs = ProbDist::Uniform(2);
  Route route = Route::kCompliant;
  double anomaly_score = 0.0;
  // Distinct ids of the first draw; empty on the compliant route.
  std::vector<TransformId> transforms;
  // Sorted by (transform id, draw), the order they are summed in.
  std::vector<VariantPrediction> variants;
};

// Routes on the detector score (<= threshold is compliant). On the
// transformed route, each draw samples k distinct transforms from
// config.transforms with DeriveSeed(seed, "draw", "", draw).
DefenseResult DefendPredict(const DefenseConfig& config, std::string_view text,
                            std::uint64_t seed);

// Seed used for a query when the caller has none: a function of the config
// seed and the text, so repeated queries give identical answers.
std::uint64_t QuerySeed(std::uint64_t root, std::string_view text);

// The defended pipeline as a classifier, e.g. as the victim of an adaptive
// attack.
class DefendedClassifier : public TextClassifier {
 public:
  explicit DefendedClassifier(DefenseConfig config);
  ProbDist Predict(std::string_view text) const override;
  int num_classes() const override { return config_.classifier->num_classes(); }
  const DefenseConfig& config() const { return config_; }

 private:
  DefenseConfig config_;
};

struct TransformAugmentation {
  Dataset data;
  std::size_t failed = 0;  // variants skipped after a transform error
};

// Each original followed by one variant per transform (provenance
// transformed, label copied).
TransformAugmentation AugmentTrainingWithTransforms(
    const Dataset& train, const std::vector<TransformId>& transforms,
    const TransformResources& resources, std::uint64_t seed,
    const TransformParams& params = {});

struct RobustnessReport {
  double original_accuracy = 0.0;
  double adversarial_accuracy = 0.0;
  std::size_t samples = 0;
  std::size_t attacked = 0;
  std::size_t successes = 0;
};

// Accuracy of `victim` on `test`, then after attacking it. Samples the victim
// misclassifies count as wrong in both. With `attack` null, adversarial
// accuracy equals original accuracy.
RobustnessReport EvaluateRobustness(const TextClassifier& victim,
                                    const Dataset& test,
                                    const AttackConfig* attack,
                                    const AttackResources& resources);

// EvaluateRobustness with the defended pipeline as the (adaptive) victim.
RobustnessReport EvaluateDefense(const DefenseConfig& config, const Dataset& test,
                                 const AttackConfig* attack,
                                 const AttackResources& resources);

// POST /v1/classify handler: {"text": "..."} ->
// {"probs": [...], "route": "...", "transforms": [...]}. Sets *status to 200
// or 400 and returns the response body.
std::string HandleClassifyRequest(const DefenseConfig& config,
                                  std::string_view body, int* status);

}  // namespace textguard

#endif  // TEXTGUARD_DEFENSE_H_
