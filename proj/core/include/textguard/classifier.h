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

#ifndef TEXTGUARD_CLASSIFIER_H_
#define TEXTGUARD_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/corpus.h"
#include "textguard/features.h"
#include "textguard/linear_model.h"

namespace textguard {

// A probability distribution over class labels.
class ProbDist {
 public:
  static constexpr double kTolerance = 1e-6;

  // Validates every entry in [0, 1] and the sum within `tolerance` of 1.
  // Throws ProtocolError otherwise. Values are stored as given.
  static ProbDist FromProbs(std::vector<double> probs,
                            double tolerance = kTolerance);
  static ProbDist Uniform(int num_classes);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  // Lowest index among the maxima.
  int Argmax() const;

  friend bool operator==(const ProbDist&, const ProbDist&) = default;

 private:
  explicit ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// Anything that maps text to a class distribution: the built-in model, a
// remote backend, or the defended pipeline. Implementations must be safe to
// call concurrently.
class TextClassifier {
 public:
  virtual ~TextClassifier() = default;
  virtual ProbDist Predict(std::string_view text) const = 0;
  virtual std::vector<ProbDist> PredictBatch(
      std::span<const std::string> texts) const;
  virtual int num_classes() const = 0;
};

struct ClassifierConfig {
  FeatureSpec features;
  SgdConfig sgd;
};

// Built-in hashed n-gram softmax classifier.
class ClassifierModel : public TextClassifier {
 public:
  ClassifierModel() = default;
  explicit ClassifierModel(LinearModel model) : model_(std::move(model)) {}

  ProbDist Predict(std::string_view text) const override;
  int num_classes() const override { return model_.num_classes(); }

  const LinearModel& linear() const { return model_; }
  LinearModel& mutable_linear() { return model_; }

  void Save(const std::filesystem::path& path) const;
  static ClassifierModel Load(const std::filesystem::path& path);

  friend bool operator==(const ClassifierModel& a, const ClassifierModel& b) {
    return a.model_ == b.model_;
  }

 private:
  LinearModel model_;
};

// Trains on every labelled sample of `train`. Throws TrainingError unless
// at least two classes have a sample.
ClassifierModel TrainClassifier(const Dataset& train,
                                const ClassifierConfig& config,
                                TrainingTrace* trace = nullptr);

// Fraction of labelled samples whose argmax matches the label.
double EvaluateAccuracy(const TextClassifier& classifier, const Dataset& data);

}  // namespace textguard

#endif  // TEXTGUARD_CLASSIFIER_H_
