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

// Experiment configuration, the per-seed pipelines behind `textguard run`,
// and the JSON report they produce.

#ifndef TEXTGUARD_EXPERIMENT_H_
#define TEXTGUARD_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textguard/attack.h"
#include "textguard/augment.h"
#include "textguard/classifier.h"
#include "textguard/corpus.h"
#include "textguard/defense.h"
#include "textguard/desk_corpus.h"
#include "textguard/detector.h"
#include "textguard/lexicon.h"
#include "textguard/perturb.h"

namespace textguard {

std::string_view ToolkitVersion();

// matches / total. Throws ConfigError on empty or unequal-length input.
double Accuracy(const std::vector<int>& predictions, const std::vector<int>& golds);

std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::filesystem::path& path);

enum class ExperimentTask { kDetectorEval, kAttack, kDefense, kAugment, kAll };
std::string_view TaskName(ExperimentTask task);
ExperimentTask ParseTask(std::string_view name);

struct ExperimentConfig {
  ExperimentTask task = ExperimentTask::kAll;
  std::vector<std::uint64_t> seeds{1, 2, 3};

  // Empty train/test paths select the generated desk corpus.
  std::filesystem::path train_path;
  std::filesystem::path test_path;
  std::filesystem::path thesaurus_path;  // required with file datasets
  std::filesystem::path morph_path;      // built-in tables when empty
  DatasetFormat format = DatasetFormat::kJsonl;
  DeskCorpusConfig desk;

  // Both optimisers default to learning rate 1.0 here (library default 0.1).
  ClassifierConfig classifier;
  FeatureSpec detector_features;
  SgdConfig detector_sgd;
  int stage1_epochs = 5;
  int stage2_epochs = 5;
  std::vector<PerturbFamilyKind> detector_families{PerturbFamilyKind::kCharOps,
                                                   PerturbFamilyKind::kThesaurusSub};
  // Train samples attacked to build stage-2 pairs (0 = all).
  std::size_t stage2_samples = 1000;
  // Test samples used by the attack, defense and held-out detector
  // evaluations (0 = all).
  std::size_t eval_samples = 0;

  AttackConfig word_attack;
  AttackConfig char_attack;
  std::size_t defense_k = 3;
  AugmentConfig augment;

  // Keyed settings as read, for the report's config echo.
  std::vector<std::pair<std::string, std::string>> echo;

  ExperimentConfig();
  void Validate() const;
};

// INI-style file: [section] headers and key = value lines. Unknown keys are
// rejected.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
ExperimentConfig ReadExperimentConfig(std::istream& in, std::string_view source_name);

struct ExperimentData {
  Dataset train;
  Dataset test;
  Thesaurus thesaurus;
  MorphRules morph;
  // name -> SHA-256 of the dataset/thesaurus contents used.
  std::vector<std::pair<std::string, std::string>> checksums;
};

ExperimentData LoadExperimentData(const ExperimentConfig& config);

// First `limit` samples (all when limit is 0).
Dataset Head(const Dataset& data, std::size_t limit);

ClassifierModel TrainVictim(const ExperimentConfig& config, const Dataset& train,
                            std::uint64_t seed);

// Word attack for thesaurus/mlm families, char attack for char_ops.
const AttackConfig& AttackForFamily(const ExperimentConfig& config,
                                    PerturbFamilyKind family);

struct DetectorPipelineResult {
  DetectorModel detector;
  DetectorTrainInfo info;
  // Held-out pairs: test originals and the successful adversarial samples
  // of the family's attack against the victim.
  Dataset heldout;
  DetectorEvalReport report;
};

DetectorPipelineResult RunDetectorPipeline(const ExperimentConfig& config,
                                           const ExperimentData& data,
                                           const TextClassifier& victim,
                                           PerturbFamilyKind family,
                                           std::uint64_t seed);

struct AttackComparison {
  double unconstrained_rate = 0.0;
  double constrained_rate = 0.0;
  std::size_t attacked = 0;
  // Constrained successes whose text re-scores >= 0.5.
  std::size_t constrained_violations = 0;
};

AttackComparison CompareAnomalyConstraint(const ExperimentConfig& config,
                                          const ExperimentData& data,
                                          const TextClassifier& victim,
                                          const DetectorModel& detector,
                                          std::uint64_t seed);

struct DefenseComparison {
  RobustnessReport without_defense;
  RobustnessReport with_defense;
};

// Trains the classifier on transform-augmented data, a thesaurus-family
// detector against it, and evaluates both arms under the word attack.
DefenseComparison RunDefensePipeline(const ExperimentConfig& config,
                                     const ExperimentData& data,
                                     std::uint64_t seed);

struct AugmentComparison {
  double accuracy_with_selection = 0.0;
  double accuracy_without_selection = 0.0;
  AugmentStats stats;
  // Accepted samples whose text re-scores <= 0.5.
  std::size_t accepted_violations = 0;
};

AugmentComparison RunAugmentPipeline(const ExperimentConfig& config,
                                     const ExperimentData& data,
                                     const DetectorModel& detector,
                                     std::uint64_t seed);

using Metrics = std::vector<std::pair<std::string, double>>;

struct RunReport {
  std::uint64_t seed = 0;
  Metrics metrics;
  std::vector<std::pair<std::string, std::string>> checksums;
};

struct Report {
  std::string task;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> checksums;
  std::vector<RunReport> runs;
  Metrics mean;

  // Stable key order: toolkit, version, task, config, checksums, runs, mean.
  std::string ToJson() const;
};

Report RunExperiment(const ExperimentConfig& config);

}  // namespace textguard

#endif  // TEXTGUARD_EXPERIMENT_H_
