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

#include "textguard/linear_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "binary_io.h"
#include "textguard/errors.h"
#include "textguard/rng.h"

namespace textguard {

void SgdConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (epochs < 0) throw ConfigError("epochs must be non-negative");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("dropout must be in [0, 1)");
  }
}

std::vector<double> Softmax(const std::vector<double>& logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  double max_logit = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max_logit);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

LinearModel::LinearModel(FeatureSpec spec, int num_classes)
    : spec_(spec), num_classes_(num_classes) {
  spec_.Validate();
  if (num_classes < 2) throw ConfigError("a model needs at least 2 classes");
  weights_.assign(static_cast<std::size_t>(spec_.hash_dim) * num_classes, 0.0);
  bias_.assign(num_classes, 0.0);
}

std::vector<double> LinearModel::Logits(const SparseVector& features) const {
  std::vector<double> logits(bias_);
  for (const SparseFeature& f : features) {
    const double* row = &weights_[static_cast<std::size_t>(f.index) * num_classes_];
    for (int c = 0; c < num_classes_; ++c) logits[c] += row[c] * f.value;
  }
  return logits;
}

std::vector<double> LinearModel::Probabilities(const SparseVector& features) const {
  return Softmax(Logits(features));
}

bool LinearModel::AllFinite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(weights_.begin(), weights_.end(), finite) &&
         std::all_of(bias_.begin(), bias_.end(), finite);
}

double LinearModel::MeanCrossEntropy(
    std::span<const TrainingExample> examples) const {
  if (examples.empty()) return 0.0;
  double total = 0.0;
  for (const TrainingExample& ex : examples) {
    std::vector<double> logits = Logits(ex.features);
    double max_logit = *std::max_element(logits.begin(), logits.end());
    double log_sum = 0.0;
    for (double l : logits) log_sum += std::exp(l - max_logit);
    total += max_logit + std::log(log_sum) - logits[ex.label];
  }
  return total / static_cast<double>(examples.size());
}

TrainingTrace LinearModel::Train(std::span<const TrainingExample> examples,
                                 const SgdConfig& config) {
  config.Validate();
  for (const TrainingExample& ex : examples) {
    if (ex.label < 0 || ex.label >= num_classes_) {
      throw TrainingError("training label out of range");
    }
  }
  TrainingTrace trace;
  if (examples.empty()) return trace;
  Rng rng(config.seed);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double keep_scale =
      config.dropout > 0.0 ? 1.0 / (1.0 - config.dropout) : 1.0;

  std::vector<SparseVector> dropped;
  std::vector<const SparseVector*> batch_features;
  std::vector<std::vector<double>> batch_probs;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(order);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch_features.clear();
      batch_probs.clear();
      dropped.clear();
      dropped.reserve(end - start);
      for (std::size_t k = start; k < end; ++k) {
        const TrainingExample& ex = examples[order[k]];
        if (config.dropout > 0.0) {
          SparseVector kept;
          kept.reserve(ex.features.size());
          for (const SparseFeature& f : ex.features) {
            if (!rng.Bernoulli(config.dropout)) {
              kept.push_back({f.index, f.value * keep_scale});
            }
          }
          dropped.push_back(std::move(kept));
          batch_features.push_back(&dropped.back());
        } else {
          batch_features.push_back(&ex.features);
        }
        batch_probs.push_back(Probabilities(*batch_features.back()));
      }
      const double step =
          config.learning_rate / static_cast<double>(end - start);
      for (std::size_t k = start; k < end; ++k) {
        const int label = examples[order[k]].label;
        const std::vector<double>& probs = batch_probs[k - start];
        for (int c = 0; c < num_classes_; ++c) {
          const double grad = probs[c] - (c == label ? 1.0 : 0.0);
          if (grad == 0.0) continue;
          bias_[c] -= step * grad;
          for (const SparseFeature& f : *batch_features[k - start]) {
            weights_[static_cast<std::size_t>(f.index) * num_classes_ + c] -=
                step * grad * f.value;
          }
        }
      }
    }
    trace.epoch_loss.push_back(MeanCrossEntropy(examples));
  }
  if (!AllFinite()) throw TrainingError("training diverged (non-finite weights)");
  return trace;
}

void LinearModel::Write(std::ostream& out) const {
  using namespace internal;
  // Feature-spec block.
  WriteU32(out, spec_.hash_dim);
  WriteU32(out, spec_.char_ngram_min);
  WriteU32(out, spec_.char_ngram_max);
  WriteU32(out, (spec_.word_unigrams ? 1u : 0u) | (spec_.word_bigrams ? 2u : 0u));
  WriteU32(out, static_cast<std::uint32_t>(spec_.norm));
  WriteU64(out, spec_.hash_seed);
  // Weight block: bias, then only rows with a non-zero entry.
  WriteU32(out, static_cast<std::uint32_t>(num_classes_));
  for (double b : bias_) WriteF64(out, b);
  std::uint64_t rows = 0;
  for (std::uint32_t f = 0; f < spec_.hash_dim; ++f) {
    for (int c = 0; c < num_classes_; ++c) {
      if (weight(f, c) != 0.0) {
        ++rows;
        break;
      }
    }
  }
  WriteU64(out, rows);
  for (std::uint32_t f = 0; f < spec_.hash_dim; ++f) {
    bool nonzero = false;
    for (int c = 0; c < num_classes_; ++c) nonzero |= weight(f, c) != 0.0;
    if (!nonzero) continue;
    WriteU32(out, f);
    for (int c = 0; c < num_classes_; ++c) WriteF64(out, weight(f, c));
  }
}

LinearModel LinearModel::Read(std::istream& in) {
  using namespace internal;
  FeatureSpec spec;
  spec.hash_dim = ReadU32(in);
  spec.char_ngram_min = ReadU32(in);
  spec.char_ngram_max = ReadU32(in);
  std::uint32_t flags = ReadU32(in);
  spec.word_unigrams = (flags & 1u) != 0;
  spec.word_bigrams = (flags & 2u) != 0;
  spec.norm = static_cast<FeatureNorm>(ReadU32(in));
  spec.hash_seed = ReadU64(in);
  if (spec.hash_dim > (1u << 26)) throw ParseError("model file", 0, "hash_dim too large");
  try {
    spec.Validate();
  } catch (const ConfigError& e) {
    throw ParseError("model file", 0, std::string("invalid feature spec: ") + e.what());
  }
  std::uint32_t num_classes = ReadU32(in);
  if (num_classes < 2 || num_classes > 1024) {
    throw ParseError("model file", 0, "invalid class count");
  }
  LinearModel model(spec, static_cast<int>(num_classes));
  for (std::uint32_t c = 0; c < num_classes; ++c) model.bias_[c] = ReadF64(in);
  std::uint64_t rows = ReadU64(in);
  if (rows > spec.hash_dim) throw ParseError("model file", 0, "too many weight rows");
  for (std::uint64_t r = 0; r < rows; ++r) {
    std::uint32_t f = ReadU32(in);
    if (f >= spec.hash_dim) throw ParseError("model file", 0, "weight row out of range");
    for (std::uint32_t c = 0; c < num_classes; ++c) {
      model.weight(f, static_cast<int>(c)) = ReadF64(in);
    }
  }
  return model;
}

}  // namespace textguard
