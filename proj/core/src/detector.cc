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

#include "textguard/detector.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "binary_io.h"
#include "json.hpp"
#include "model_file.h"
#include "textguard/errors.h"

namespace textguard {

DetectorModel::DetectorModel(LinearModel model, double threshold,
                             DetectorProvenance provenance)
    : model_(std::move(model)), provenance_(std::move(provenance)) {
  if (model_.num_classes() != 2) {
    throw ConfigError("a detector is a two-class model");
  }
  set_threshold(threshold);
}

void DetectorModel::set_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("detector threshold must be in (0, 1)");
  }
  threshold_ = threshold;
}

double DetectorModel::AnomalyScore(std::string_view text) const {
  return model_.Probabilities(ExtractFeatures(model_.spec(), text))[1];
}

void DetectorModel::Save(const std::filesystem::path& path) const {
  using namespace internal;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write detector '" + path.string() + "'");
  WriteModelHeader(out, ModelKind::kDetector);
  WriteF64(out, threshold_);
  WriteString(out, provenance_.stage1_family);
  WriteString(out, provenance_.stage2_attack);
  WriteString(out, provenance_.dataset_id);
  model_.Write(out);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

DetectorModel DetectorModel::Load(const std::filesystem::path& path) {
  using namespace internal;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open detector '" + path.string() + "'");
  ReadModelHeader(in, ModelKind::kDetector, path.string());
  double threshold = ReadF64(in);
  DetectorProvenance provenance;
  provenance.stage1_family = ReadString(in);
  provenance.stage2_attack = ReadString(in);
  provenance.dataset_id = ReadString(in);
  return DetectorModel(LinearModel::Read(in), threshold, std::move(provenance));
}

DetectorModel UntrainedDetector(const FeatureSpec& spec) {
  return DetectorModel(LinearModel(spec, 2));
}

double BceLoss(int y, double y_hat) {
  if (y != 0 && y != 1) throw ConfigError("BCE target must be 0 or 1");
  double p = std::clamp(y_hat, kBceEpsilon, 1.0 - kBceEpsilon);
  return -static_cast<double>(y) * std::log(p) -
         static_cast<double>(1 - y) * std::log(1.0 - p);
}

namespace {

std::vector<TrainingExample> DetectorExamples(const Dataset& data,
                                              const FeatureSpec& spec) {
  std::vector<TrainingExample> examples;
  examples.reserve(data.size());
  for (const TextSample& sample : data.samples) {
    if (!sample.detector_label) {
      throw TrainingError("detector training sample '" + sample.id +
                          "' has no detector_label");
    }
    examples.push_back({ExtractFeatures(spec, sample.text), *sample.detector_label});
  }
  return examples;
}

}  // namespace

DetectorModel TrainDetectorStages(const Dataset& stage1, const Dataset& stage2,
                                  const DetectorTrainConfig& config,
                                  DetectorTrainInfo* info) {
  DetectorTrainInfo local;
  LinearModel model(config.features, 2);

  std::vector<TrainingExample> first = DetectorExamples(stage1, config.features);
  SgdConfig sgd = config.sgd;
  sgd.epochs = config.stage1_epochs;
  sgd.seed = DeriveSeed(config.sgd.seed, "detector-stage1");
  local.stage1_examples = first.size();
  local.stage1_trace = model.Train(first, sgd);

  std::vector<TrainingExample> second = DetectorExamples(stage2, config.features);
  local.stage2_examples = second.size();
  if (second.empty()) {
    local.stage2_skipped = true;
  } else {
    sgd.epochs = config.stage2_epochs;
    sgd.seed = DeriveSeed(config.sgd.seed, "detector-stage2");
    local.stage2_trace = model.Train(second, sgd);
  }
  if (info != nullptr) {
    local.artificial_dropped = info->artificial_dropped;
    *info = std::move(local);
  }
  DetectorProvenance provenance;
  provenance.dataset_id = config.dataset_id;
  return DetectorModel(std::move(model), kAnomalyThreshold, std::move(provenance));
}

DetectorModel TrainTwoStage(const Dataset& train, const PerturbFamily& family,
                            const PerturbResources& resources,
                            const Dataset& adversarial_pairs,
                            const DetectorTrainConfig& config,
                            DetectorTrainInfo* info) {
  ArtificialDataset artificial = MakeArtificialDataset(
      train, family, resources, DeriveSeed(config.sgd.seed, "artificial"));
  DetectorTrainInfo local;
  local.artificial_dropped = artificial.dropped;
  DetectorModel model =
      TrainDetectorStages(artificial.data, adversarial_pairs, config, &local);
  DetectorProvenance provenance = model.provenance();
  provenance.stage1_family = std::string(FamilyName(family.kind));
  if (!local.stage2_skipped) provenance.stage2_attack = "adversarial-pairs";
  model.set_provenance(std::move(provenance));
  if (info != nullptr) *info = std::move(local);
  return model;
}

DetectorEvalReport ReportFromCounts(const ConfusionCounts& counts) {
  DetectorEvalReport report;
  report.counts = counts;
  const double tp = static_cast<double>(counts.tp);
  const double fp = static_cast<double>(counts.fp);
  const double tn = static_cast<double>(counts.tn);
  const double fn = static_cast<double>(counts.fn);
  if (counts.tp + counts.fn > 0) report.tpr = tp / (tp + fn);
  if (counts.fp + counts.tn > 0) report.fpr = fp / (fp + tn);
  if (counts.tp + counts.fp > 0) report.precision = tp / (tp + fp);
  if (report.precision && report.tpr && (*report.precision + *report.tpr) > 0.0) {
    report.f1 = 2.0 * tp / (2.0 * tp + fp + fn);
  } else if (counts.tp + counts.fn > 0 && counts.tp + counts.fp > 0) {
    report.f1 = 0.0;
  }
  return report;
}

DetectorEvalReport EvaluateDetector(const DetectorModel& model,
                                    const Dataset& labeled) {
  ConfusionCounts counts;
  for (const TextSample& sample : labeled.samples) {
    if (!sample.detector_label) {
      throw ConfigError("evaluation sample '" + sample.id +
                        "' has no detector_label");
    }
    const bool predicted = model.IsAnomalous(sample.text);
    const bool actual = *sample.detector_label == 1;
    if (predicted && actual) {
      ++counts.tp;
    } else if (predicted) {
      ++counts.fp;
    } else if (actual) {
      ++counts.fn;
    } else {
      ++counts.tn;
    }
  }
  return ReportFromCounts(counts);
}

std::string DetectorReportJson(const DetectorEvalReport& report) {
  nlohmann::ordered_json doc;
  auto rate = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  doc["tpr"] = rate(report.tpr);
  doc["fpr"] = rate(report.fpr);
  doc["f1"] = rate(report.f1);
  doc["tp"] = report.counts.tp;
  doc["fp"] = report.counts.fp;
  doc["tn"] = report.counts.tn;
  doc["fn"] = report.counts.fn;
  return doc.dump(2);
}

}  // namespace textguard
