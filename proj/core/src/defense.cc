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

#include "textguard/defense.h"

#include <algorithm>
#include <tuple>

#include "json.hpp"
#include "textguard/errors.h"
#include "textguard/rng.h"

namespace textguard {

void DefenseConfig::Validate() const {
  if (detector == nullptr) throw ConfigError("defense needs a detector");
  if (classifier == nullptr) throw ConfigError("defense needs a classifier");
  if (transforms.empty()) throw ConfigError("defense transform set is empty");
  std::vector<TransformId> sorted = transforms;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("defense transform set has duplicates");
  }
  if (k < 1 || k > transforms.size()) {
    throw ConfigError("defense k must be in [1, " +
                      std::to_string(transforms.size()) + "]");
  }
  if (draws_per_query < 1) throw ConfigError("draws_per_query must be >= 1");
}

std::string_view RouteName(Route route) {
  return route == Route::kCompliant ? "compliant" : "transformed";
}

DefenseResult DefendPredict(const DefenseConfig& config, std::string_view text,
                            std::uint64_t seed) {
  config.Validate();
  DefenseResult result;
  result.anomaly_score = config.detector->AnomalyScore(text);
  if (result.anomaly_score <= config.detector->threshold()) {
    result.route = Route::kCompliant;
    result.probs = config.classifier->Predict(text);
    return result;
  }

  result.route = Route::kTransformed;
  for (std::size_t draw = 0; draw < config.draws_per_query; ++draw) {
    Rng rng(DeriveSeed(seed, "draw", "", draw));
    for (std::size_t i : rng.SampleIndices(config.transforms.size(), config.k)) {
      const TransformId id = config.transforms[i];
      if (draw == 0) result.transforms.push_back(id);
      TransformReport report = ApplyTransform(
          id, text, config.resources,
          DeriveSeed(seed, "transform", TransformName(id), draw), config.params);
      VariantPrediction variant{id, draw, std::move(report.output),
                                ProbDist::Uniform(2), report.fallback_used};
      variant.probs = config.classifier->Predict(variant.text);
      result.variants.push_back(std::move(variant));
    }
  }
  std::sort(result.variants.begin(), result.variants.end(),
            [](const VariantPrediction& a, const VariantPrediction& b) {
              return std::tie(a.id, a.draw) < std::tie(b.id, b.draw);
            });
  const std::size_t classes = result.variants.front().probs.size();
  std::vector<double> mean(classes, 0.0);
  for (const VariantPrediction& v : result.variants) {
    if (v.probs.size() != classes) {
      throw ProtocolError("variant predictions disagree on the class count");
    }
    for (std::size_t c = 0; c < classes; ++c) mean[c] += v.probs[c];
  }
  for (double& m : mean) m /= static_cast<double>(result.variants.size());
  result.probs = ProbDist::FromProbs(std::move(mean));
  return result;
}

std::uint64_t QuerySeed(std::uint64_t root, std::string_view text) {
  return DeriveSeed(root, "defend", text);
}

DefendedClassifier::DefendedClassifier(DefenseConfig config)
    : config_(std::move(config)) {
  config_.Validate();
}

ProbDist DefendedClassifier::Predict(std::string_view text) const {
  return DefendPredict(config_, text, QuerySeed(config_.seed, text)).probs;
}

TransformAugmentation AugmentTrainingWithTransforms(
    const Dataset& train, const std::vector<TransformId>& transforms,
    const TransformResources& resources, std::uint64_t seed,
    const TransformParams& params) {
  TransformAugmentation out;
  out.data.num_classes = train.num_classes;
  out.data.split = train.split;
  out.data.samples.reserve(train.size() * (transforms.size() + 1));
  for (const TextSample& sample : train.samples) {
    out.data.samples.push_back(sample);
    for (TransformId id : transforms) {
      try {
        TransformReport report = ApplyTransform(
            id, sample.text, resources,
            DeriveSeed(seed, "train-transform", sample.id, static_cast<std::uint64_t>(id)),
            params);
        TextSample variant;
        variant.id = sample.id + "/" + std::string(TransformName(id));
        variant.text = std::move(report.output);
        variant.label = sample.label;
        variant.provenance = Provenance::kTransformed;
        variant.source_id = sample.id;
        out.data.samples.push_back(std::move(variant));
      } catch (const Error&) {
        ++out.failed;
      }
    }
  }
  return out;
}

RobustnessReport EvaluateRobustness(const TextClassifier& victim,
                                    const Dataset& test,
                                    const AttackConfig* attack,
                                    const AttackResources& resources) {
  RobustnessReport report;
  std::size_t correct = 0;
  std::size_t robust = 0;
  for (const TextSample& sample : test.samples) {
    if (!sample.label) continue;
    ++report.samples;
    if (victim.Predict(sample.text).Argmax() != *sample.label) continue;
    ++correct;
    if (attack == nullptr) {
      ++robust;
      continue;
    }
    AttackConfig per_sample = *attack;
    per_sample.seed = DeriveSeed(attack->seed, "attack", sample.id);
    AttackOutcome outcome = AttackSample(victim, sample, per_sample, resources);
    ++report.attacked;
    if (outcome.success) {
      ++report.successes;
    } else if (outcome.final_prediction == *sample.label) {
      ++robust;
    }
  }
  if (report.samples == 0) throw ConfigError("robustness evaluation needs labeled samples");
  const double n = static_cast<double>(report.samples);
  report.original_accuracy = static_cast<double>(correct) / n;
  report.adversarial_accuracy = static_cast<double>(robust) / n;
  return report;
}

RobustnessReport EvaluateDefense(const DefenseConfig& config, const Dataset& test,
                                 const AttackConfig* attack,
                                 const AttackResources& resources) {
  DefendedClassifier defended(config);
  return EvaluateRobustness(defended, test, attack, resources);
}

std::string HandleClassifyRequest(const DefenseConfig& config,
                                  std::string_view body, int* status) {
  nlohmann::json request = nlohmann::json::parse(body, nullptr, false);
  auto bad_request = [&](const std::string& reason) {
    *status = 400;
    nlohmann::ordered_json error;
    error["error"] = reason;
    return error.dump();
  };
  if (request.is_discarded() || !request.is_object()) {
    return bad_request("body is not a JSON object");
  }
  auto text = request.find("text");
  if (text == request.end() || !text->is_string() ||
      text->get<std::string>().empty()) {
    return bad_request("field 'text' must be a non-empty string");
  }
  const std::string input = text->get<std::string>();
  DefenseResult result = DefendPredict(config, input, QuerySeed(config.seed, input));
  nlohmann::ordered_json response;
  response["probs"] = result.probs.probs();
  response["route"] = std::string(RouteName(result.route));
  nlohmann::ordered_json ids = nlohmann::ordered_json::array();
  for (TransformId id : result.transforms) ids.push_back(std::string(TransformName(id)));
  response["transforms"] = std::move(ids);
  *status = 200;
  return response.dump();
}

}  // namespace textguard
