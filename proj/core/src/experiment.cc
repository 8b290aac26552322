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

#include "textguard/experiment.h"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "textguard/errors.h"
#include "textguard/rng.h"

#ifndef TEXTGUARD_VERSION_STRING
#define TEXTGUARD_VERSION_STRING "0.0.0"
#endif

namespace textguard {

std::string_view ToolkitVersion() { return TEXTGUARD_VERSION_STRING; }

double Accuracy(const std::vector<int>& predictions, const std::vector<int>& golds) {
  if (predictions.size() != golds.size()) {
    throw ConfigError("accuracy: prediction and gold lists differ in length");
  }
  if (predictions.empty()) throw ConfigError("accuracy of an empty list");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    matches += predictions[i] == golds[i] ? 1 : 0;
  }
  return static_cast<double>(matches) / static_cast<double>(predictions.size());
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for checksumming");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Sha256Hex(buffer.str());
}

std::string_view TaskName(ExperimentTask task) {
  switch (task) {
    case ExperimentTask::kDetectorEval:
      return "detector-eval";
    case ExperimentTask::kAttack:
      return "attack";
    case ExperimentTask::kDefense:
      return "defense";
    case ExperimentTask::kAugment:
      return "augment";
    case ExperimentTask::kAll:
      return "all";
  }
  return "all";
}

ExperimentTask ParseTask(std::string_view name) {
  for (ExperimentTask task :
       {ExperimentTask::kDetectorEval, ExperimentTask::kAttack,
        ExperimentTask::kDefense, ExperimentTask::kAugment, ExperimentTask::kAll}) {
    if (TaskName(task) == name) return task;
  }
  throw ConfigError("unknown experiment task '" + std::string(name) + "'");
}

ExperimentConfig::ExperimentConfig() {
  // The desk corpus is small enough that the library default step size
  // leaves both models under-fitted after five epochs.
  classifier.sgd.learning_rate = 1.0;
  detector_sgd.learning_rate = 1.0;
  word_attack.kind = AttackKind::kWord;
  word_attack.constraints = ConstraintSet::WordDefaults();
  char_attack.kind = AttackKind::kChar;
  char_attack.constraints = ConstraintSet::CharDefaults();
}

void ExperimentConfig::Validate() const {
  if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
  if (train_path.empty() != test_path.empty()) {
    throw ConfigError("set both train and test paths, or neither");
  }
  for (const auto& path : {train_path, test_path, thesaurus_path, morph_path}) {
    if (!path.empty() && !std::filesystem::exists(path)) {
      throw ConfigError("path does not exist: " + path.string());
    }
  }
  if (!train_path.empty() && thesaurus_path.empty()) {
    throw ConfigError("file datasets need a thesaurus path");
  }
  if (detector_families.empty()) throw ConfigError("no detector family configured");
  classifier.features.Validate();
  classifier.sgd.Validate();
  detector_features.Validate();
  detector_sgd.Validate();
  word_attack.constraints.Validate();
  char_attack.constraints.Validate();
  augment.Validate();
  if (defense_k < 1 || defense_k > kAllTransforms.size()) {
    throw ConfigError("defense k must be in [1, 6]");
  }
}

namespace {

FeatureNorm ParseNorm(std::string_view name) {
  if (name == "none") return FeatureNorm::kNone;
  if (name == "l1") return FeatureNorm::kL1;
  if (name == "l2") return FeatureNorm::kL2;
  throw ConfigError("unknown feature norm '" + std::string(name) + "'");
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
T Number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) {
    throw ConfigError("setting '" + key + "' is not a number: '" + value + "'");
  }
  return out;
}

using Setter = void (*)(ExperimentConfig&, const std::string& key, const std::string& v);

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"experiment.task", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.task = ParseTask(v);
       }},
      {"experiment.seeds", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.seeds.clear();
         for (const std::string& s : SplitList(v)) c.seeds.push_back(Number<std::uint64_t>(k, s));
         if (c.seeds.empty()) throw ConfigError(k + ": at least one seed is required");
       }},
      {"data.train", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.train_path = v; }},
      {"data.test", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.test_path = v; }},
      {"data.thesaurus", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.thesaurus_path = v; }},
      {"data.morph", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.morph_path = v; }},
      {"data.format", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.format = ParseDatasetFormat(v);
       }},
      {"desk.train_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.desk.train_size = Number<std::size_t>(k, v);
       }},
      {"desk.test_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.desk.test_size = Number<std::size_t>(k, v);
       }},
      {"desk.seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.desk.seed = Number<std::uint64_t>(k, v);
       }},
      {"desk.rare_rate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.desk.rare_rate = Number<double>(k, v);
       }},
      {"desk.mixed_rate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.desk.mixed_rate = Number<double>(k, v);
       }},
      {"desk.label_noise", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.desk.label_noise = Number<double>(k, v);
       }},
      {"classifier.learning_rate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.classifier.sgd.learning_rate = Number<double>(k, v);
       }},
      {"classifier.epochs", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.classifier.sgd.epochs = Number<int>(k, v);
       }},
      {"classifier.batch_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.classifier.sgd.batch_size = Number<int>(k, v);
       }},
      {"classifier.dropout", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.classifier.sgd.dropout = Number<double>(k, v);
       }},
      {"classifier.norm", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.classifier.features.norm = ParseNorm(v);
       }},
      {"detector.learning_rate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.detector_sgd.learning_rate = Number<double>(k, v);
       }},
      {"detector.batch_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.detector_sgd.batch_size = Number<int>(k, v);
       }},
      {"detector.dropout", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.detector_sgd.dropout = Number<double>(k, v);
       }},
      {"detector.norm", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.detector_features.norm = ParseNorm(v);
       }},
      {"detector.stage1_epochs", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.stage1_epochs = Number<int>(k, v);
       }},
      {"detector.stage2_epochs", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.stage2_epochs = Number<int>(k, v);
       }},
      {"detector.families", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.detector_families.clear();
         for (const std::string& f : SplitList(v)) c.detector_families.push_back(ParseFamily(f));
       }},
      {"detector.stage2_samples", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.stage2_samples = Number<std::size_t>(k, v);
       }},
      {"attack.budget", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.word_attack.budget = c.char_attack.budget = Number<std::size_t>(k, v);
       }},
      {"attack.max_candidates", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.word_attack.max_candidates = Number<std::size_t>(k, v);
       }},
      {"attack.source", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.word_attack.source = ParseCandidateSource(v);
       }},
      {"attack.max_perturbation_rate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.word_attack.constraints.max_perturbation_rate = Number<double>(k, v);
       }},
      {"attack.min_similarity", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.word_attack.constraints.min_similarity = Number<double>(k, v);
       }},
      {"attack.char_max_perturbation_rate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.char_attack.constraints.max_perturbation_rate = Number<double>(k, v);
       }},
      {"attack.char_levenshtein_per_word", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.char_attack.constraints.levenshtein_per_modified_word = Number<double>(k, v);
       }},
      {"attack.char_candidates_per_op", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.char_attack.char_candidates_per_op = Number<std::size_t>(k, v);
       }},
      {"attack.eval_samples", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.eval_samples = Number<std::size_t>(k, v);
       }},
      {"defense.k", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.defense_k = Number<std::size_t>(k, v);
       }},
      {"augment.p", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.augment.p = Number<double>(k, v);
       }},
      {"augment.s", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.augment.s = Number<std::size_t>(k, v);
       }},
      {"augment.max_attempts", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.augment.max_attempts = Number<std::size_t>(k, v);
       }},
  };
  return *setters;
}

std::string Unquote(std::string value) {
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
      value.back() == value.front()) {
    return value.substr(1, value.size() - 2);
  }
  return value;
}

}  // namespace

ExperimentConfig ReadExperimentConfig(std::istream& in, std::string_view source_name) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(std::string(source_name), e.line(), e.message());
  }
  ExperimentConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(std::string(source_name) + ": setting '" + section +
                        "' is outside a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = Setters().find(full);
      if (it == Setters().end()) {
        throw ConfigError(std::string(source_name) + ": unknown setting '" + full + "'");
      }
      std::string text = Unquote(value.get_value<std::string>());
      it->second(config, full, text);
      config.echo.emplace_back(full, text);
    }
  }
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  ExperimentConfig config = ReadExperimentConfig(in, path.string());
  // Relative paths are resolved against the config file's directory.
  const std::filesystem::path base = path.parent_path();
  for (std::filesystem::path* p : {&config.train_path, &config.test_path,
                                   &config.thesaurus_path, &config.morph_path}) {
    if (!p->empty() && p->is_relative()) *p = base / *p;
  }
  return config;
}

namespace {

std::string DatasetDigest(const Dataset& data) {
  std::ostringstream out;
  WriteDataset(out, data);
  return Sha256Hex(out.str());
}

std::string ThesaurusDigest(const Thesaurus& thesaurus) {
  std::string canonical;
  for (const auto& [word, synonyms] : thesaurus.entries()) {
    canonical += word;
    canonical += '\t';
    for (std::size_t i = 0; i < synonyms.size(); ++i) {
      if (i > 0) canonical += ',';
      canonical += synonyms[i];
    }
    canonical += '\n';
  }
  return Sha256Hex(canonical);
}

std::string ModelDigest(const LinearModel& model) {
  std::ostringstream out;
  model.Write(out);
  return Sha256Hex(out.str());
}

}  // namespace

ExperimentData LoadExperimentData(const ExperimentConfig& config) {
  ExperimentData data;
  if (config.train_path.empty()) {
    DeskCorpus desk = GenerateDeskCorpus(config.desk);
    data.train = std::move(desk.train);
    data.test = std::move(desk.test);
    data.thesaurus = std::move(desk.thesaurus);
    data.checksums.emplace_back("train", DatasetDigest(data.train));
    data.checksums.emplace_back("test", DatasetDigest(data.test));
    data.checksums.emplace_back("thesaurus", ThesaurusDigest(data.thesaurus));
  } else {
    data.train = LoadDataset(config.train_path, config.format, std::nullopt, Split::kTrain);
    data.test = LoadDataset(config.test_path, config.format, data.train.num_classes,
                            Split::kTest);
    data.thesaurus = LoadThesaurus(config.thesaurus_path);
    data.checksums.emplace_back("train", Sha256File(config.train_path));
    data.checksums.emplace_back("test", Sha256File(config.test_path));
    data.checksums.emplace_back("thesaurus", Sha256File(config.thesaurus_path));
  }
  if (config.morph_path.empty()) {
    data.morph = MorphRules::Default();
  } else {
    data.morph = LoadMorphRules(config.morph_path);
    data.checksums.emplace_back("morph", Sha256File(config.morph_path));
  }
  return data;
}

Dataset Head(const Dataset& data, std::size_t limit) {
  Dataset out = data;
  if (limit > 0 && out.samples.size() > limit) out.samples.resize(limit);
  return out;
}

ClassifierModel TrainVictim(const ExperimentConfig& config, const Dataset& train,
                            std::uint64_t seed) {
  ClassifierConfig classifier = config.classifier;
  classifier.sgd.seed = DeriveSeed(seed, "classifier");
  return TrainClassifier(train, classifier);
}

const AttackConfig& AttackForFamily(const ExperimentConfig& config,
                                    PerturbFamilyKind family) {
  return family == PerturbFamilyKind::kCharOps ? config.char_attack : config.word_attack;
}

namespace {

DetectorTrainConfig DetectorConfig(const ExperimentConfig& config, std::uint64_t seed,
                                   std::string dataset_id) {
  DetectorTrainConfig out;
  out.features = config.detector_features;
  out.sgd = config.detector_sgd;
  out.sgd.seed = DeriveSeed(seed, "detector");
  out.stage1_epochs = config.stage1_epochs;
  out.stage2_epochs = config.stage2_epochs;
  out.dataset_id = std::move(dataset_id);
  return out;
}

AttackConfig Seeded(const AttackConfig& attack, std::uint64_t seed, std::string_view scope) {
  AttackConfig out = attack;
  out.seed = DeriveSeed(seed, scope);
  return out;
}

DetectorModel TrainFamilyDetector(const ExperimentConfig& config,
                                  const ExperimentData& data,
                                  const TextClassifier& victim,
                                  PerturbFamilyKind family, std::uint64_t seed,
                                  DetectorTrainInfo* info) {
  const AttackResources resources{&data.thesaurus, nullptr};
  AttackConfig attack = Seeded(AttackForFamily(config, family), seed, "stage2-attack");
  AttackRun stage2 =
      RunAttack(victim, Head(data.train, config.stage2_samples), attack, resources);
  Dataset pairs = AdversarialPairs(stage2.outcomes, data.train.num_classes, Split::kTrain);
  PerturbFamily perturb = PerturbFamily::Default(family);
  DetectorModel detector = TrainTwoStage(
      data.train, perturb, PerturbResources{&data.thesaurus, nullptr}, pairs,
      DetectorConfig(config, seed, "desk"), info);
  DetectorProvenance provenance = detector.provenance();
  provenance.stage2_attack = attack.kind == AttackKind::kChar ? "char" : "word";
  detector.set_provenance(std::move(provenance));
  return detector;
}

}  // namespace

DetectorPipelineResult RunDetectorPipeline(const ExperimentConfig& config,
                                           const ExperimentData& data,
                                           const TextClassifier& victim,
                                           PerturbFamilyKind family,
                                           std::uint64_t seed) {
  DetectorPipelineResult result;
  result.detector = TrainFamilyDetector(config, data, victim, family, seed, &result.info);
  const AttackResources resources{&data.thesaurus, nullptr};
  AttackRun heldout =
      RunAttack(victim, Head(data.test, config.eval_samples),
                Seeded(AttackForFamily(config, family), seed, "heldout-attack"), resources);
  result.heldout = AdversarialPairs(heldout.outcomes, data.test.num_classes, Split::kTest);
  result.report = EvaluateDetector(result.detector, result.heldout);
  return result;
}

AttackComparison CompareAnomalyConstraint(const ExperimentConfig& config,
                                          const ExperimentData& data,
                                          const TextClassifier& victim,
                                          const DetectorModel& detector,
                                          std::uint64_t seed) {
  const AttackResources resources{&data.thesaurus, nullptr};
  const Dataset test = Head(data.test, config.eval_samples);
  AttackConfig unconstrained = Seeded(config.word_attack, seed, "compare-attack");
  AttackConfig constrained = unconstrained;
  constrained.constraints.anomaly_detector = &detector;
  AttackRun a = RunAttack(victim, test, unconstrained, resources);
  AttackRun b = RunAttack(victim, test, constrained, resources);
  AttackComparison out;
  out.attacked = a.outcomes.size();
  out.unconstrained_rate = AttackSuccessRate(a.outcomes);
  out.constrained_rate = AttackSuccessRate(b.outcomes);
  for (const AttackOutcome& o : b.outcomes) {
    if (o.success && detector.AnomalyScore(o.final_sample.text) >= kAnomalyThreshold) {
      ++out.constrained_violations;
    }
  }
  return out;
}

DefenseComparison RunDefensePipeline(const ExperimentConfig& config,
                                     const ExperimentData& data, std::uint64_t seed) {
  const TransformResources transform_resources{&data.thesaurus, &data.morph, nullptr};
  TransformAugmentation augmented = AugmentTrainingWithTransforms(
      data.train, {kAllTransforms.begin(), kAllTransforms.end()}, transform_resources,
      DeriveSeed(seed, "defense-augment"));
  ClassifierModel classifier = TrainVictim(config, augmented.data, seed);
  DetectorModel detector = TrainFamilyDetector(
      config, data, classifier, PerturbFamilyKind::kThesaurusSub, seed, nullptr);

  DefenseConfig defense;
  defense.detector = &detector;
  defense.classifier = &classifier;
  defense.k = config.defense_k;
  defense.seed = DeriveSeed(seed, "defend");
  defense.resources = transform_resources;

  const AttackResources resources{&data.thesaurus, nullptr};
  const Dataset test = Head(data.test, config.eval_samples);
  AttackConfig attack = Seeded(config.word_attack, seed, "adaptive-attack");
  DefenseComparison out;
  out.without_defense = EvaluateRobustness(classifier, test, &attack, resources);
  out.with_defense = EvaluateDefense(defense, test, &attack, resources);
  return out;
}

AugmentComparison RunAugmentPipeline(const ExperimentConfig& config,
                                     const ExperimentData& data,
                                     const DetectorModel& detector, std::uint64_t seed) {
  AugmentConfig augment = config.augment;
  augment.seed = DeriveSeed(seed, "augment");
  AugmentComparison out;
  Dataset guided = DetectorGuidedAugment(data.train, detector, augment, data.thesaurus,
                                         &out.stats);
  Dataset random = RandomAugment(data.train, augment, data.thesaurus);
  for (const TextSample& s : guided.samples) {
    if (s.provenance == Provenance::kAugmented && !s.flagged &&
        detector.AnomalyScore(s.text) <= kAnomalyThreshold) {
      ++out.accepted_violations;
    }
  }
  out.accuracy_with_selection =
      EvaluateAccuracy(TrainVictim(config, guided, seed), data.test);
  out.accuracy_without_selection =
      EvaluateAccuracy(TrainVictim(config, random, seed), data.test);
  return out;
}

namespace {

void AddReport(Metrics& metrics, const std::string& prefix, const DetectorEvalReport& r) {
  auto rate = [&](const char* name, const std::optional<double>& v) {
    metrics.emplace_back(prefix + name, v ? *v : std::nan(""));
  };
  rate("tpr", r.tpr);
  rate("fpr", r.fpr);
  rate("f1", r.f1);
  metrics.emplace_back(prefix + "tp", static_cast<double>(r.counts.tp));
  metrics.emplace_back(prefix + "fp", static_cast<double>(r.counts.fp));
  metrics.emplace_back(prefix + "tn", static_cast<double>(r.counts.tn));
  metrics.emplace_back(prefix + "fn", static_cast<double>(r.counts.fn));
}

bool Wants(ExperimentTask task, ExperimentTask stage) {
  return task == ExperimentTask::kAll || task == stage;
}

nlohmann::ordered_json MetricValue(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json PairsObject(const std::vector<std::pair<std::string, std::string>>& pairs) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [k, v] : pairs) out[k] = v;
  return out;
}

}  // namespace

Report RunExperiment(const ExperimentConfig& config) {
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("stage 'validate-config' failed: ") + e.what());
  }
  Report report;
  report.task = std::string(TaskName(config.task));
  report.config = config.echo;
  if (report.config.empty()) report.config.emplace_back("experiment.task", report.task);
  ExperimentData data;
  try {
    data = LoadExperimentData(config);
  } catch (const Error& e) {
    throw Error(std::string("stage 'load-data' failed: ") + e.what());
  }
  report.checksums = data.checksums;

  for (std::uint64_t seed : config.seeds) {
    RunReport run;
    run.seed = seed;
    auto stage = [&](const char* name, auto&& body) {
      try {
        body();
      } catch (const Error& e) {
        throw Error(std::string("seed ") + std::to_string(seed) + ": stage '" + name +
                    "' failed: " + e.what());
      }
    };
    ClassifierModel victim;
    stage("train-classifier", [&] {
      victim = TrainVictim(config, data.train, seed);
      run.metrics.emplace_back("classifier.accuracy", EvaluateAccuracy(victim, data.test));
      run.checksums.emplace_back("classifier", ModelDigest(victim.linear()));
    });

    std::optional<DetectorModel> syn_detector;
    const bool need_detectors = config.task != ExperimentTask::kDefense;
    if (need_detectors) {
      for (PerturbFamilyKind family : config.detector_families) {
        const std::string name(FamilyName(family));
        stage(("detector-" + name).c_str(), [&] {
          DetectorPipelineResult result =
              RunDetectorPipeline(config, data, victim, family, seed);
          if (Wants(config.task, ExperimentTask::kDetectorEval)) {
            AddReport(run.metrics, "detector." + name + ".", result.report);
          }
          run.checksums.emplace_back("detector." + name,
                                     ModelDigest(result.detector.linear()));
          if (family == PerturbFamilyKind::kThesaurusSub) {
            syn_detector = std::move(result.detector);
          }
        });
      }
    }
    if (Wants(config.task, ExperimentTask::kAttack) ||
        Wants(config.task, ExperimentTask::kAugment)) {
      if (!syn_detector) {
        stage("detector-syn", [&] {
          syn_detector = TrainFamilyDetector(config, data, victim,
                                             PerturbFamilyKind::kThesaurusSub, seed, nullptr);
        });
      }
    }
    if (Wants(config.task, ExperimentTask::kAttack)) {
      stage("attack", [&] {
        AttackComparison cmp = CompareAnomalyConstraint(config, data, victim, *syn_detector, seed);
        run.metrics.emplace_back("attack.attacked", static_cast<double>(cmp.attacked));
        run.metrics.emplace_back("attack.success_rate_unconstrained", cmp.unconstrained_rate);
        run.metrics.emplace_back("attack.success_rate_constrained", cmp.constrained_rate);
        run.metrics.emplace_back("attack.constrained_violations",
                                 static_cast<double>(cmp.constrained_violations));
      });
    }
    if (Wants(config.task, ExperimentTask::kDefense)) {
      stage("defense", [&] {
        DefenseComparison cmp = RunDefensePipeline(config, data, seed);
        run.metrics.emplace_back("defense.original_accuracy_no_defense",
                                 cmp.without_defense.original_accuracy);
        run.metrics.emplace_back("defense.original_accuracy_defense",
                                 cmp.with_defense.original_accuracy);
        run.metrics.emplace_back("defense.adversarial_accuracy_no_defense",
                                 cmp.without_defense.adversarial_accuracy);
        run.metrics.emplace_back("defense.adversarial_accuracy_defense",
                                 cmp.with_defense.adversarial_accuracy);
      });
    }
    if (Wants(config.task, ExperimentTask::kAugment)) {
      stage("augment", [&] {
        AugmentComparison cmp = RunAugmentPipeline(config, data, *syn_detector, seed);
        run.metrics.emplace_back("augment.accuracy_with_selection", cmp.accuracy_with_selection);
        run.metrics.emplace_back("augment.accuracy_without_selection",
                                 cmp.accuracy_without_selection);
        run.metrics.emplace_back("augment.accepted", static_cast<double>(cmp.stats.accepted));
        run.metrics.emplace_back("augment.flagged", static_cast<double>(cmp.stats.flagged));
        run.metrics.emplace_back("augment.accepted_violations",
                                 static_cast<double>(cmp.accepted_violations));
      });
    }
    report.runs.push_back(std::move(run));
  }

  // Mean over runs of every metric, skipping undefined values.
  for (std::size_t m = 0; m < report.runs.front().metrics.size(); ++m) {
    const std::string& name = report.runs.front().metrics[m].first;
    double sum = 0.0;
    std::size_t count = 0;
    for (const RunReport& run : report.runs) {
      double v = run.metrics[m].second;
      if (std::isfinite(v)) {
        sum += v;
        ++count;
      }
    }
    report.mean.emplace_back(name, count > 0 ? sum / static_cast<double>(count) : std::nan(""));
  }
  return report;
}

std::string Report::ToJson() const {
  nlohmann::ordered_json doc;
  doc["toolkit"] = "textguard";
  doc["version"] = std::string(ToolkitVersion());
  doc["task"] = task;
  doc["config"] = PairsObject(config);
  doc["checksums"] = PairsObject(checksums);
  nlohmann::ordered_json runs_json = nlohmann::ordered_json::array();
  for (const RunReport& run : runs) {
    nlohmann::ordered_json r;
    r["seed"] = run.seed;
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    for (const auto& [k, v] : run.metrics) metrics[k] = MetricValue(v);
    r["metrics"] = std::move(metrics);
    r["checksums"] = PairsObject(run.checksums);
    runs_json.push_back(std::move(r));
  }
  doc["runs"] = std::move(runs_json);
  nlohmann::ordered_json mean_json = nlohmann::ordered_json::object();
  for (const auto& [k, v] : mean) mean_json[k] = MetricValue(v);
  doc["mean"] = std::move(mean_json);
  return doc.dump(2) + "\n";
}

}  // namespace textguard
