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

// Multinomial logistic regression over hashed sparse features. Shared by the
// built-in classifier and the anomaly detector.

#ifndef TEXTGUARD_LINEAR_MODEL_H_
#define TEXTGUARD_LINEAR_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "textguard/features.h"

namespace textguard {

struct SgdConfig {
  double learning_rate = 0.1;
  int epochs = 5;
  int batch_size = 16;
  std::uint64_t seed = 0;
  // Inverted dropout on input features during training only.
  double dropout = 0.0;

  void Validate() const;
};

struct TrainingExample {
  SparseVector features;
  int label = 0;
};

// Mean softmax cross-entropy on the training set after each epoch.
struct TrainingTrace {
  std::vector<double> epoch_loss;
};

class LinearModel {
 public:
  LinearModel() = default;
  // Zero-initialised weights.
  LinearModel(FeatureSpec spec, int num_classes);

  const FeatureSpec& spec() const { return spec_; }
  int num_classes() const { return num_classes_; }

  std::vector<double> Logits(const SparseVector& features) const;
  std::vector<double> Probabilities(const SparseVector& features) const;

  double weight(std::uint32_t feature, int cls) const {
    return weights_[static_cast<std::size_t>(feature) * num_classes_ + cls];
  }
  double& weight(std::uint32_t feature, int cls) {
    return weights_[static_cast<std::size_t>(feature) * num_classes_ + cls];
  }
  double bias(int cls) const { return bias_[cls]; }
  double& bias(int cls) { return bias_[cls]; }

  bool AllFinite() const;

  // Mini-batch SGD on mean softmax cross-entropy, continuing from the current
  // weights. Sample order is reshuffled each epoch from `config.seed`.
  TrainingTrace Train(std::span<const TrainingExample> examples,
                      const SgdConfig& config);

  double MeanCrossEntropy(std::span<const TrainingExample> examples) const;

  // Feature-spec block followed by the weight block (see docs/model_format.md).
  void Write(std::ostream& out) const;
  static LinearModel Read(std::istream& in);

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  FeatureSpec spec_;
  int num_classes_ = 0;
  std::vector<double> weights_;  // hash_dim x num_classes, row-major
  std::vector<double> bias_;
};

// Numerically stable softmax.
std::vector<double> Softmax(const std::vector<double>& logits);

}  // namespace textguard

#endif  // TEXTGUARD_LINEAR_MODEL_H_
