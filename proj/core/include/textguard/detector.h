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

// Anomaly detector: a two-class softmax head over hashed text features that
// scores how likely a text is non-natural (perturbed or adversarial).

#ifndef TEXTGUARD_DETECTOR_H_
#define TEXTGUARD_DETECTOR_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "textguard/corpus.h"
#include "textguard/features.h"
#include "textguard/linear_model.h"
#include "textguard/perturb.h"

namespace textguard {

inline constexpr double kAnomalyThreshold = 0.5;

struct DetectorProvenance {
  std::string stage1_family;  // e.g. "char"
  std::string stage2_attack;  // e.g. "word-thesaurus", empty if skipped
  std::string dataset_id;

  friend bool operator==(const DetectorProvenance&,
                         const DetectorProvenance&) = default;
};

class DetectorModel {
 public:
  DetectorModel() = default;
  explicit DetectorModel(LinearModel model,
                         double threshold = kAnomalyThreshold,
                         DetectorProvenance provenance = {});

  // Probability of the non-natural class, in [0, 1].
  double AnomalyScore(std::string_view text) const;

  // AnomalyScore(text) > threshold (strict; a score equal to the threshold
  // is compliant).
  bool IsAnomalous(std::string_view text) const {
    return AnomalyScore(text) > threshold_;
  }

  double threshold() const { return threshold_; }
  void set_threshold(double threshold);
  const DetectorProvenance& provenance() const { return provenance_; }
  void set_provenance(DetectorProvenance provenance) {
    provenance_ = std::move(provenance);
  }
  const LinearModel& linear() const { return model_; }
  LinearModel& mutable_linear() { return model_; }

  void Save(const std::filesystem::path& path) const;
  static DetectorModel Load(const std::filesystem::path& path);

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;

 private:
  LinearModel model_;
  double threshold_ = kAnomalyThreshold;
  DetectorProvenance provenance_;
};

// Zero-weight detector (scores every text 0.5).
DetectorModel UntrainedDetector(const FeatureSpec& spec = {});

inline constexpr double kBceEpsilon = 1e-7;

// Binary cross-entropy with y_hat clamped to [eps, 1 - eps].
double BceLoss(int y, double y_hat);

struct DetectorTrainConfig {
  FeatureSpec features;
  SgdConfig sgd;  // seed and optimiser settings shared by both stages
  int stage1_epochs = 5;
  int stage2_epochs = 5;
  std::string dataset_id;
};

struct DetectorTrainInfo {
  std::size_t stage1_examples = 0;
  std::size_t stage2_examples = 0;
  std::size_t artificial_dropped = 0;
  // Stage 2 had no data; the model is the stage-1 model.
  bool stage2_skipped = false;
  TrainingTrace stage1_trace;
  TrainingTrace stage2_trace;
};

// Runs the two stages on ready-made data: stage 1 on `stage1` (originals 0,
// artificial 1), then continues from those weights on `stage2` (originals 0,
// adversarial 1). Samples must carry detector_label.
DetectorModel TrainDetectorStages(const Dataset& stage1, const Dataset& stage2,
                                  const DetectorTrainConfig& config,
                                  DetectorTrainInfo* info = nullptr);

// Builds the stage-1 set with MakeArtificialDataset(train, family, ...) and
// then calls TrainDetectorStages.
DetectorModel TrainTwoStage(const Dataset& train, const PerturbFamily& family,
                            const PerturbResources& resources,
                            const Dataset& adversarial_pairs,
                            const DetectorTrainConfig& config,
                            DetectorTrainInfo* info = nullptr);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// Rates are nullopt when their denominator is zero.
struct DetectorEvalReport {
  ConfusionCounts counts;
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> precision;
  std::optional<double> f1;
};

DetectorEvalReport ReportFromCounts(const ConfusionCounts& counts);

// Confusion counts at the detector threshold. Every sample must carry
// detector_label.
DetectorEvalReport EvaluateDetector(const DetectorModel& model,
                                    const Dataset& labeled);

// {"tpr","fpr","f1","tp","fp","tn","fn"}; undefined rates are null.
std::string DetectorReportJson(const DetectorEvalReport& report);

}  // namespace textguard

#endif  // TEXTGUARD_DETECTOR_H_
