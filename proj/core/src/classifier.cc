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

#include "textguard/classifier.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "model_file.h"
#include "textguard/errors.h"

namespace textguard {

ProbDist ProbDist::FromProbs(std::vector<double> probs, double tolerance) {
  if (probs.empty()) throw ProtocolError("probability vector is empty");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ProtocolError("probability outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw ProtocolError("probabilities sum to " + std::to_string(total) +
                        ", not 1");
  }
  return ProbDist(std::move(probs));
}

ProbDist ProbDist::Uniform(int num_classes) {
  if (num_classes < 1) throw ConfigError("uniform distribution needs classes");
  return ProbDist(std::vector<double>(num_classes, 1.0 / num_classes));
}

int ProbDist::Argmax() const {
  return static_cast<int>(std::max_element(probs_.begin(), probs_.end()) -
                          probs_.begin());
}

std::vector<ProbDist> TextClassifier::PredictBatch(
    std::span<const std::string> texts) const {
  std::vector<ProbDist> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(Predict(text));
  return out;
}

ProbDist ClassifierModel::Predict(std::string_view text) const {
  return ProbDist::FromProbs(
      model_.Probabilities(ExtractFeatures(model_.spec(), text)));
}

void ClassifierModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model '" + path.string() + "'");
  internal::WriteModelHeader(out, internal::ModelKind::kClassifier);
  model_.Write(out);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

ClassifierModel ClassifierModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model '" + path.string() + "'");
  internal::ReadModelHeader(in, internal::ModelKind::kClassifier, path.string());
  return ClassifierModel(LinearModel::Read(in));
}

ClassifierModel TrainClassifier(const Dataset& train,
                                const ClassifierConfig& config,
                                TrainingTrace* trace) {
  std::vector<TrainingExample> examples;
  std::set<int> classes;
  examples.reserve(train.size());
  for (const TextSample& sample : train.samples) {
    if (!sample.label) continue;
    if (*sample.label < 0 || *sample.label >= train.num_classes) {
      throw TrainingError("label " + std::to_string(*sample.label) +
                          " outside [0, num_classes)");
    }
    classes.insert(*sample.label);
    examples.push_back({ExtractFeatures(config.features, sample.text), *sample.label});
  }
  if (classes.size() < 2) {
    throw TrainingError("training data must contain at least two classes");
  }
  LinearModel model(config.features, std::max(2, train.num_classes));
  TrainingTrace t = model.Train(examples, config.sgd);
  if (trace != nullptr) *trace = std::move(t);
  return ClassifierModel(std::move(model));
}

double EvaluateAccuracy(const TextClassifier& classifier, const Dataset& data) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const TextSample& sample : data.samples) {
    if (!sample.label) continue;
    ++total;
    if (classifier.Predict(sample.text).Argmax() == *sample.label) ++correct;
  }
  if (total == 0) throw ConfigError("accuracy needs labelled samples");
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace textguard
