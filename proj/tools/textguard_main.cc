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

// textguard: command-line front end for the toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "textguard/attack.h"
#include "textguard/augment.h"
#include "textguard/backend.h"
#include "textguard/classifier.h"
#include "textguard/corpus.h"
#include "textguard/defense.h"
#include "textguard/desk_corpus.h"
#include "textguard/detector.h"
#include "textguard/experiment.h"
#include "textguard/lexicon.h"
#include "textguard/perturb.h"
#include "textguard/transform.h"

namespace fs = std::filesystem;
using namespace textguard;

namespace {

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

// Endpoint from --endpoint, else TEXTGUARD_BACKEND_URL, else none.
std::optional<BackendEndpoint> ResolveEndpoint(const std::string& url,
                                               const std::string& fallback) {
  std::string base = url;
  if (base.empty()) {
    if (const char* env = std::getenv("TEXTGUARD_BACKEND_URL")) base = env;
  }
  if (base.empty()) return std::nullopt;
  return MakeEndpoint(base, ParseFallbackPolicy(fallback));
}

Thesaurus LoadOptionalThesaurus(const std::string& path) {
  if (path.empty()) return {};
  std::vector<std::string> warnings;
  Thesaurus thesaurus = LoadThesaurus(path, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return thesaurus;
}

MorphRules LoadOptionalMorph(const std::string& path) {
  return path.empty() ? MorphRules::Default() : LoadMorphRules(path);
}

struct DataOptions {
  std::string path;
  std::string format = "jsonl";

  void Add(CLI::App* app, const std::string& flag, const std::string& help) {
    app->add_option(flag, path, help)->required();
    app->add_option("--format", format, "Dataset format: jsonl or tsv")
        ->check(CLI::IsMember({"jsonl", "tsv"}));
  }
  Dataset Load(Split split = Split::kTrain) const {
    return LoadDataset(path, ParseDatasetFormat(format), std::nullopt, split);
  }
};

// --- gen-corpus ------------------------------------------------------------

void AddGenCorpus(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen-corpus", "Write the built-in desk corpus and thesaurus");
  auto config = std::make_shared<DeskCorpusConfig>();
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--out-dir", *out_dir, "Output directory")->required();
  cmd->add_option("--train-size", config->train_size, "Training samples");
  cmd->add_option("--test-size", config->test_size, "Test samples");
  cmd->add_option("--seed", config->seed, "Generator seed");
  cmd->callback([=] {
    DeskCorpus corpus = GenerateDeskCorpus(*config);
    fs::create_directories(*out_dir);
    SaveDataset(fs::path(*out_dir) / "train.jsonl", corpus.train);
    SaveDataset(fs::path(*out_dir) / "test.jsonl", corpus.test);
    SaveThesaurus(fs::path(*out_dir) / "thesaurus.tsv", corpus.thesaurus,
                  "desk corpus thesaurus, ranked common-first");
  });
}

// --- train-classifier ------------------------------------------------------

void AddTrainClassifier(CLI::App& app) {
  auto* cmd = app.add_subcommand("train-classifier", "Train the built-in hashed n-gram classifier");
  auto data = std::make_shared<DataOptions>();
  auto config = std::make_shared<ClassifierConfig>();
  auto out = std::make_shared<std::string>();
  auto norm = std::make_shared<std::string>("l2");
  data->Add(cmd, "--data", "Training dataset");
  cmd->add_option("--out", *out, "Model output path")->required();
  cmd->add_option("--lr", config->sgd.learning_rate, "Learning rate");
  cmd->add_option("--epochs", config->sgd.epochs, "Epochs");
  cmd->add_option("--batch-size", config->sgd.batch_size, "Mini-batch size");
  cmd->add_option("--dropout", config->sgd.dropout, "Input dropout rate");
  cmd->add_option("--seed", config->sgd.seed, "Shuffle seed");
  cmd->add_option("--hash-bits", config->features.hash_dim, "Hash dimension")
      ->transform([](std::string v) { return std::to_string(1u << std::stoul(v)); });
  cmd->add_option("--norm", *norm, "Feature norm: none, l1, l2")
      ->check(CLI::IsMember({"none", "l1", "l2"}));
  cmd->callback([=] {
    ClassifierConfig c = *config;
    c.features.norm = *norm == "none" ? FeatureNorm::kNone
                      : *norm == "l1" ? FeatureNorm::kL1
                                      : FeatureNorm::kL2;
    TrainingTrace trace;
    ClassifierModel model = TrainClassifier(data->Load(), c, &trace);
    model.Save(*out);
    for (std::size_t e = 0; e < trace.epoch_loss.size(); ++e) {
      std::cerr << "epoch " << e + 1 << " loss " << trace.epoch_loss[e] << "\n";
    }
  });
}

// --- gen-artificial --------------------------------------------------------

void AddGenArtificial(CLI::App& app) {
  auto* cmd = app.add_subcommand("gen-artificial", "Build stage-1 detector data");
  auto data = std::make_shared<DataOptions>();
  auto family = std::make_shared<std::string>("char");
  auto rate = std::make_shared<double>(0.0);
  auto thesaurus = std::make_shared<std::string>();
  auto endpoint = std::make_shared<std::string>();
  auto fallback = std::make_shared<std::string>("rule");
  auto seed = std::make_shared<std::uint64_t>(0);
  auto out = std::make_shared<std::string>();
  data->Add(cmd, "--in,--data", "Source dataset (train split)");
  cmd->add_option("--family", *family, "char, syn or mlm")
      ->check(CLI::IsMember({"char", "syn", "mlm"}));
  cmd->add_option("--rate", *rate, "Perturbation rate (family default when 0)");
  cmd->add_option("--thesaurus", *thesaurus, "Thesaurus TSV");
  cmd->add_option("--endpoint", *endpoint, "Backend URL for mlm");
  cmd->add_option("--fallback", *fallback, "rule or error");
  cmd->add_option("--seed", *seed, "Seed");
  cmd->add_option("--out", *out, "Output JSONL")->required();
  cmd->callback([=] {
    PerturbFamily f = PerturbFamily::Default(ParseFamily(*family));
    if (*rate > 0.0) f.rate = *rate;
    Thesaurus thes = LoadOptionalThesaurus(*thesaurus);
    std::optional<BackendEndpoint> ep = ResolveEndpoint(*endpoint, *fallback);
    PerturbResources resources{&thes, ep ? &*ep : nullptr};
    ArtificialDataset art = MakeArtificialDataset(data->Load(), f, resources, *seed);
    SaveDataset(*out, art.data);
    std::cerr << "artificial samples dropped: " << art.dropped << "\n";
  });
}

// --- train-detector / eval-detector ----------------------------------------

void AddTrainDetector(CLI::App& app) {
  auto* cmd = app.add_subcommand("train-detector", "Two-stage anomaly detector training");
  auto stage1 = std::make_shared<std::string>();
  auto stage2 = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto config = std::make_shared<DetectorTrainConfig>();
  auto family = std::make_shared<std::string>();
  auto attack = std::make_shared<std::string>();
  cmd->add_option("--stage1", *stage1, "Stage-1 JSONL with detector_label")->required();
  cmd->add_option("--stage2", *stage2, "Stage-2 adversarial pairs JSONL");
  cmd->add_option("--out", *out, "Detector output path")->required();
  cmd->add_option("--lr", config->sgd.learning_rate, "Learning rate");
  cmd->add_option("--batch-size", config->sgd.batch_size, "Mini-batch size");
  cmd->add_option("--dropout", config->sgd.dropout, "Input dropout rate");
  cmd->add_option("--seed", config->sgd.seed, "Seed");
  cmd->add_option("--stage1-epochs", config->stage1_epochs, "Stage-1 epochs");
  cmd->add_option("--stage2-epochs", config->stage2_epochs, "Stage-2 epochs");
  cmd->add_option("--dataset-id", config->dataset_id, "Dataset id recorded in the model");
  cmd->add_option("--family", *family, "Stage-1 family recorded in the model");
  cmd->add_option("--attack", *attack, "Stage-2 attack id recorded in the model");
  cmd->callback([=] {
    Dataset first = LoadDataset(*stage1, DatasetFormat::kJsonl);
    Dataset second;
    if (!stage2->empty()) second = LoadDataset(*stage2, DatasetFormat::kJsonl);
    DetectorTrainInfo info;
    DetectorModel model = TrainDetectorStages(first, second, *config, &info);
    DetectorProvenance provenance = model.provenance();
    provenance.stage1_family = *family;
    provenance.stage2_attack = info.stage2_skipped ? "" : *attack;
    model.set_provenance(provenance);
    model.Save(*out);
    if (info.stage2_skipped) {
      std::cerr << "warning: stage-2 data is empty; model is the stage-1 model\n";
    }
  });
}

void AddEvalDetector(CLI::App& app) {
  auto* cmd = app.add_subcommand("eval-detector", "Confusion metrics at the detector threshold");
  auto model = std::make_shared<std::string>();
  auto data = std::make_shared<std::string>();
  auto report = std::make_shared<std::string>();
  cmd->add_option("--model", *model, "Detector model")->required();
  cmd->add_option("--data", *data, "JSONL with detector_label")->required();
  cmd->add_option("--report", *report, "Report JSON path (stdout when omitted)");
  cmd->callback([=] {
    DetectorModel detector = DetectorModel::Load(*model);
    std::string json =
        DetectorReportJson(EvaluateDetector(detector, LoadDataset(*data, DatasetFormat::kJsonl))) + "\n";
    if (report->empty()) {
      std::cout << json;
    } else {
      WriteText(*report, json);
    }
  });
}

// --- attack ----------------------------------------------------------------

void AddAttack(CLI::App& app) {
  auto* cmd = app.add_subcommand("attack", "Attack a victim classifier");
  auto kind = std::make_shared<std::string>("word");
  auto source = std::make_shared<std::string>("thesaurus");
  auto victim = std::make_shared<std::string>();
  auto detector = std::make_shared<std::string>("none");
  auto data = std::make_shared<DataOptions>();
  auto thesaurus = std::make_shared<std::string>();
  auto endpoint = std::make_shared<std::string>();
  auto fallback = std::make_shared<std::string>("rule");
  auto out = std::make_shared<std::string>();
  auto pairs = std::make_shared<std::string>();
  auto config = std::make_shared<AttackConfig>();
  cmd->add_option("--kind", *kind, "word or char")->check(CLI::IsMember({"word", "char"}));
  cmd->add_option("--source", *source, "thesaurus or mlm")
      ->check(CLI::IsMember({"thesaurus", "mlm"}));
  cmd->add_option("--victim", *victim, "Classifier model")->required();
  cmd->add_option("--detector", *detector, "Detector model for the anomaly constraint, or none");
  data->Add(cmd, "--data", "Dataset to attack");
  cmd->add_option("--thesaurus", *thesaurus, "Thesaurus TSV");
  cmd->add_option("--endpoint", *endpoint, "Backend URL for mlm candidates");
  cmd->add_option("--fallback", *fallback, "rule or error");
  cmd->add_option("--seed", config->seed, "Seed");
  cmd->add_option("--budget", config->budget, "Victim queries per sample");
  cmd->add_option("--max-candidates", config->max_candidates, "Candidates per word");
  cmd->add_option("--out", *out, "Outcome JSONL")->required();
  cmd->add_option("--pairs", *pairs, "Also write adversarial pairs JSONL (stage-2 data)");
  cmd->callback([=] {
    AttackConfig c = *config;
    c.kind = ParseAttackKind(*kind);
    c.source = ParseCandidateSource(*source);
    c.constraints = c.kind == AttackKind::kChar ? ConstraintSet::CharDefaults()
                                                : ConstraintSet::WordDefaults();
    std::optional<DetectorModel> det;
    if (*detector != "none") {
      det = DetectorModel::Load(*detector);
      c.constraints.anomaly_detector = &*det;
    }
    ClassifierModel model = ClassifierModel::Load(*victim);
    Thesaurus thes = LoadOptionalThesaurus(*thesaurus);
    std::optional<BackendEndpoint> ep = ResolveEndpoint(*endpoint, *fallback);
    Dataset dataset = data->Load(Split::kTest);
    AttackRun run = RunAttack(model, dataset, c, AttackResources{&thes, ep ? &*ep : nullptr});
    std::string lines;
    for (const AttackOutcome& o : run.outcomes) lines += OutcomeJson(o) + "\n";
    WriteText(*out, lines);
    if (!pairs->empty()) {
      SaveDataset(*pairs, AdversarialPairs(run.outcomes, dataset.num_classes, dataset.split));
    }
    std::cerr << "attacked " << run.outcomes.size() << ", skipped " << run.skipped;
    if (!run.outcomes.empty()) std::cerr << ", success rate " << AttackSuccessRate(run.outcomes);
    std::cerr << "\n";
  });
}

// --- transform -------------------------------------------------------------

void AddTransform(CLI::App& app) {
  auto* cmd = app.add_subcommand("transform", "Apply one transformation function to a dataset");
  auto fn = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(0);
  auto in = std::make_shared<DataOptions>();
  auto out = std::make_shared<std::string>();
  auto thesaurus = std::make_shared<std::string>();
  auto morph = std::make_shared<std::string>();
  auto endpoint = std::make_shared<std::string>();
  auto fallback = std::make_shared<std::string>("rule");
  cmd->add_option("--fn", *fn, "Transform id")->required();
  cmd->add_option("--seed", *seed, "Seed");
  in->Add(cmd, "--in", "Input dataset");
  cmd->add_option("--out", *out, "Output JSONL")->required();
  cmd->add_option("--thesaurus", *thesaurus, "Thesaurus TSV");
  cmd->add_option("--morph-rules,--morph", *morph, "Morphology rules file");
  cmd->add_option("--endpoint", *endpoint, "Backend URL");
  cmd->add_option("--fallback", *fallback, "rule or error");
  cmd->callback([=] {
    const TransformId id = ParseTransform(*fn);
    Thesaurus thes = LoadOptionalThesaurus(*thesaurus);
    MorphRules rules = LoadOptionalMorph(*morph);
    std::optional<BackendEndpoint> ep = ResolveEndpoint(*endpoint, *fallback);
    TransformResources resources{&thes, &rules, ep ? &*ep : nullptr};
    Dataset input = in->Load();
    Dataset output;
    output.num_classes = input.num_classes;
    output.split = input.split;
    std::size_t fallbacks = 0;
    for (const TextSample& sample : input.samples) {
      TransformReport report =
          ApplyTransform(id, sample.text, resources, DeriveSeed(*seed, "transform", sample.id));
      fallbacks += report.fallback_used ? 1 : 0;
      TextSample t = sample;
      t.id = sample.id + "/" + std::string(TransformName(id));
      t.text = report.output;
      t.provenance = Provenance::kTransformed;
      t.source_id = sample.id;
      t.detector_label.reset();
      output.samples.push_back(std::move(t));
    }
    SaveDataset(*out, output);
    std::cerr << "transformed " << output.size() << " samples, fallback used on "
              << fallbacks << "\n";
  });
}

// --- defend ----------------------------------------------------------------

struct DefenseSetup {
  ClassifierModel classifier;
  DetectorModel detector;
  Thesaurus thesaurus;
  MorphRules morph;
  std::optional<BackendEndpoint> endpoint;
  DefenseConfig config;
};

// [defense] classifier, detector, thesaurus, morph, k, seed, endpoint,
// fallback. Relative paths resolve against the config file's directory.
std::unique_ptr<DefenseSetup> LoadDefenseSetup(const fs::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(path.string(), e.line(), e.message());
  }
  static const std::set<std::string> kKeys = {"classifier", "detector", "thesaurus", "morph",
                                              "k", "seed", "endpoint", "fallback"};
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      if (section != "defense" || kKeys.count(key) == 0) {
        throw ConfigError(path.string() + ": unknown setting '" + section + "." + key + "'");
      }
    }
  }
  auto get = [&](const std::string& key, const std::string& fallback) {
    std::string v = tree.get<std::string>("defense." + key, fallback);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    return v;
  };
  auto resolve = [&](const std::string& p) {
    fs::path f(p);
    return f.is_relative() ? path.parent_path() / f : f;
  };
  auto setup = std::make_unique<DefenseSetup>();
  const std::string classifier = get("classifier", "");
  const std::string detector = get("detector", "");
  if (classifier.empty() || detector.empty()) {
    throw ConfigError(path.string() + ": defense.classifier and defense.detector are required");
  }
  setup->classifier = ClassifierModel::Load(resolve(classifier));
  setup->detector = DetectorModel::Load(resolve(detector));
  const std::string thesaurus = get("thesaurus", "");
  if (!thesaurus.empty()) setup->thesaurus = LoadThesaurus(resolve(thesaurus));
  const std::string morph = get("morph", "");
  setup->morph = morph.empty() ? MorphRules::Default() : LoadMorphRules(resolve(morph));
  setup->endpoint = ResolveEndpoint(get("endpoint", ""), get("fallback", "rule"));
  DefenseConfig& c = setup->config;
  c.classifier = &setup->classifier;
  c.detector = &setup->detector;
  c.k = std::stoul(get("k", "3"));
  c.seed = std::stoull(get("seed", "0"));
  c.resources = TransformResources{&setup->thesaurus, &setup->morph,
                                   setup->endpoint ? &*setup->endpoint : nullptr};
  c.Validate();
  return setup;
}

void AddDefend(CLI::App& app) {
  auto* cmd = app.add_subcommand("defend", "Evaluate or serve the detect-and-transform defense");
  auto config = std::make_shared<std::string>();
  auto data = std::make_shared<DataOptions>();
  auto attack = std::make_shared<std::string>("none");
  auto out = std::make_shared<std::string>();
  auto serve = std::make_shared<bool>(false);
  auto block = std::make_shared<bool>(false);
  auto host = std::make_shared<std::string>("127.0.0.1");
  auto port = std::make_shared<int>(8600);
  auto attack_seed = std::make_shared<std::uint64_t>(0);
  auto budget = std::make_shared<std::size_t>(2000);
  cmd->add_option("--config", *config, "Defense config file")->required();
  cmd->add_option("--data", data->path, "Test dataset");
  cmd->add_option("--format", data->format, "jsonl or tsv");
  cmd->add_option("--attack", *attack, "word, char or none")
      ->check(CLI::IsMember({"word", "char", "none"}));
  cmd->add_option("--attack-seed", *attack_seed, "Attack seed");
  cmd->add_option("--budget", *budget, "Adaptive attack query budget per sample");
  cmd->add_option("--out", *out, "Evaluation JSON");
  cmd->add_flag("--block", *block, "Also report detect-and-reject decisions");
  cmd->add_flag("--serve", *serve, "Serve POST /v1/classify instead of evaluating");
  cmd->add_option("--host", *host, "Serve address");
  cmd->add_option("--port", *port, "Serve port");
  cmd->callback([=] {
    std::unique_ptr<DefenseSetup> setup = LoadDefenseSetup(*config);
    if (*serve) {
      httplib::Server server;
      server.Post("/v1/classify", [&](const httplib::Request& req, httplib::Response& res) {
        int status = 500;
        std::string body;
        try {
          body = HandleClassifyRequest(setup->config, req.body, &status);
        } catch (const std::exception& e) {
          status = 500;
          body = nlohmann::json{{"error", e.what()}}.dump();
        }
        res.status = status;
        res.set_content(body, "application/json");
      });
      std::cerr << "serving on " << *host << ":" << *port << "\n";
      if (!server.listen(*host, *port)) throw Error("cannot listen on port " + std::to_string(*port));
      return;
    }
    if (data->path.empty() || out->empty()) {
      throw ConfigError("defend needs --data and --out unless --serve is given");
    }
    Dataset test = data->Load(Split::kTest);
    std::optional<AttackConfig> attack_config;
    if (*attack != "none") {
      attack_config.emplace();
      attack_config->kind = ParseAttackKind(*attack);
      attack_config->constraints = attack_config->kind == AttackKind::kChar
                                       ? ConstraintSet::CharDefaults()
                                       : ConstraintSet::WordDefaults();
      attack_config->seed = *attack_seed;
      attack_config->budget = *budget;
    }
    const AttackResources resources{&setup->thesaurus, setup->endpoint ? &*setup->endpoint : nullptr};
    const AttackConfig* attack_ptr = attack_config ? &*attack_config : nullptr;
    RobustnessReport without = EvaluateRobustness(setup->classifier, test, attack_ptr, resources);
    RobustnessReport with = EvaluateDefense(setup->config, test, attack_ptr, resources);
    std::size_t compliant = 0, transformed = 0, blocked = 0;
    for (const TextSample& s : test.samples) {
      DefenseResult r = DefendPredict(setup->config, s.text, QuerySeed(setup->config.seed, s.text));
      (r.route == Route::kCompliant ? compliant : transformed) += 1;
      blocked += setup->detector.IsAnomalous(s.text) ? 1 : 0;
    }
    nlohmann::ordered_json doc;
    doc["attack"] = *attack;
    doc["samples"] = with.samples;
    doc["original_accuracy"] = with.original_accuracy;
    doc["adversarial_accuracy"] = with.adversarial_accuracy;
    doc["no_defense"] = {{"original_accuracy", without.original_accuracy},
                         {"adversarial_accuracy", without.adversarial_accuracy}};
    doc["routes"] = {{"compliant", compliant}, {"transformed", transformed}};
    if (*block) doc["blocked"] = blocked;
    WriteText(*out, doc.dump(2) + "\n");
  });
}

// --- augment ---------------------------------------------------------------

void AddAugment(CLI::App& app) {
  auto* cmd = app.add_subcommand("augment", "Detector-guided synonym augmentation");
  auto detector = std::make_shared<std::string>();
  auto config = std::make_shared<AugmentConfig>();
  auto in = std::make_shared<DataOptions>();
  auto out = std::make_shared<std::string>();
  auto thesaurus = std::make_shared<std::string>();
  auto no_selection = std::make_shared<bool>(false);
  cmd->add_option("--detector", *detector, "Detector model");
  cmd->add_option("--p", config->p, "Percent of eligible words substituted");
  cmd->add_option("--s", config->s, "Synonym rank cutoff");
  cmd->add_option("--max-attempts", config->max_attempts, "Candidates per sample");
  cmd->add_option("--seed", config->seed, "Seed");
  in->Add(cmd, "--in", "Training dataset");
  cmd->add_option("--out", *out, "Output JSONL")->required();
  cmd->add_option("--thesaurus", *thesaurus, "Thesaurus TSV")->required();
  cmd->add_flag("--no-selection", *no_selection, "Keep the first candidate (no detector)");
  cmd->callback([=] {
    Thesaurus thes = LoadOptionalThesaurus(*thesaurus);
    Dataset train = in->Load();
    if (*no_selection) {
      SaveDataset(*out, RandomAugment(train, *config, thes));
      return;
    }
    if (detector->empty()) throw ConfigError("augment needs --detector or --no-selection");
    AugmentStats stats;
    Dataset result = DetectorGuidedAugment(train, DetectorModel::Load(*detector), *config, thes, &stats);
    SaveDataset(*out, result);
    std::cerr << "accepted " << stats.accepted << ", flagged " << stats.flagged << ", attempts "
              << stats.attempts << " (n counts thesaurus-covered words of length >= 3)\n";
  });
}

// --- run -------------------------------------------------------------------

void AddRun(CLI::App& app) {
  auto* cmd = app.add_subcommand("run", "Run an experiment from a config file");
  auto config = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--config", *config, "Experiment config file")->required();
  cmd->add_option("--out", *out, "Report JSON (stdout when omitted)");
  cmd->callback([=] {
    std::string json = RunExperiment(LoadExperimentConfig(*config)).ToJson();
    if (out->empty()) {
      std::cout << json;
    } else {
      WriteText(*out, json);
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"textguard: anomaly detection for non-natural text"};
  app.require_subcommand(1);
  app.add_subcommand("version", "Print the toolkit version")->callback([] {
    std::cout << "textguard " << ToolkitVersion() << "\n";
  });
  AddGenCorpus(app);
  AddTrainClassifier(app);
  AddGenArtificial(app);
  AddTrainDetector(app);
  AddEvalDetector(app);
  AddAttack(app);
  AddTransform(app);
  AddDefend(app);
  AddAugment(app);
  AddRun(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "textguard: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
