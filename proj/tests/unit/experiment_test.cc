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

#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.h"
#include "textguard/desk_corpus.h"
#include "textguard/errors.h"

namespace textguard {
namespace {

TEST(AccuracyTest, Examples) {
  EXPECT_DOUBLE_EQ(Accuracy({0, 1, 1}, {0, 1, 1}), 1.0);
  std::vector<int> preds(50, 1), golds(50, 1);
  for (int i = 0; i < 7; ++i) preds[i] = 0;
  EXPECT_DOUBLE_EQ(Accuracy(preds, golds), 0.86);
  EXPECT_THROW(Accuracy({}, {}), Error);
  EXPECT_THROW(Accuracy({1}, {1, 0}), Error);
}

TEST(Sha256Test, KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(TaskTest, NamesRoundTrip) {
  for (const char* name : {"detector-eval", "attack", "defense", "augment", "all"}) {
    EXPECT_EQ(TaskName(ParseTask(name)), name);
  }
  EXPECT_THROW(ParseTask("plot"), ConfigError);
}

ExperimentConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadExperimentConfig(in, "mem.ini");
}

TEST(ExperimentConfigTest, ParsesSections) {
  ExperimentConfig c = Parse(
      "[experiment]\ntask = attack\nseeds = 4, 5\n"
      "[desk]\ntrain_size = 300\n"
      "[classifier]\nepochs = 7\n"
      "[attack]\nbudget = 100\n"
      "[augment]\np = 20\n");
  EXPECT_EQ(c.task, ExperimentTask::kAttack);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_EQ(c.desk.train_size, 300u);
  EXPECT_EQ(c.classifier.sgd.epochs, 7);
  EXPECT_EQ(c.word_attack.budget, 100u);
  EXPECT_EQ(c.char_attack.budget, 100u);
  EXPECT_DOUBLE_EQ(c.augment.p, 20.0);
  EXPECT_FALSE(c.echo.empty());
}

TEST(ExperimentConfigTest, DefaultsUseThreeSeeds) {
  ExperimentConfig c = Parse("");
  EXPECT_EQ(c.seeds.size(), 3u);
  EXPECT_EQ(c.defense_k, 3u);
}

TEST(ExperimentConfigTest, RejectsUnknownKeyAndEmptySeeds) {
  EXPECT_THROW(Parse("[attack]\nbudgett = 5\n"), ConfigError);
  EXPECT_THROW(Parse("[experiment]\nseeds =\n"), ConfigError);
}

TEST(ExperimentConfigTest, MissingDatasetPathFailsAtRunStart) {
  ExperimentConfig c = Parse("[data]\ntrain = /nonexistent/train.jsonl\n"
                             "test = /nonexistent/test.jsonl\nthesaurus = /nonexistent/t.tsv\n");
  EXPECT_THROW(LoadExperimentData(c), Error);
}

TEST(ReportTest, KeyOrderAndMean) {
  Report report;
  report.task = "attack";
  report.config = {{"experiment.task", "attack"}};
  report.runs.push_back({1, {{"m", 0.2}}, {}});
  report.runs.push_back({2, {{"m", 0.4}}, {}});
  report.mean = {{"m", 0.30000000000000004}};
  const std::string json = report.ToJson();
  std::size_t pos = 0;
  for (const char* key : {"\"toolkit\"", "\"version\"", "\"task\"", "\"config\"",
                          "\"checksums\"", "\"runs\"", "\"mean\""}) {
    const std::size_t at = json.find(key);
    ASSERT_NE(at, std::string::npos) << key;
    EXPECT_GE(at, pos) << key;
    pos = at;
  }
}

ExperimentConfig SmallDetectorRun() {
  return Parse(
      "[experiment]\ntask = detector-eval\nseeds = 1, 2, 3\n"
      "[desk]\ntrain_size = 240\ntest_size = 60\n"
      "[detector]\nfamilies = char\nstage2_samples = 80\n"
      "[attack]\nbudget = 200\n");
}

TEST(RunExperimentTest, ThreeSeedsGiveThreeRunsAndArithmeticMean) {
  Report report = RunExperiment(SmallDetectorRun());
  ASSERT_EQ(report.runs.size(), 3u);
  auto doc = nlohmann::json::parse(report.ToJson());
  ASSERT_EQ(doc["runs"].size(), 3u);
  for (const auto& [key, value] : doc["mean"].items()) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& run : doc["runs"]) {
      if (run["metrics"].contains(key) && run["metrics"][key].is_number()) {
        sum += run["metrics"][key].get<double>();
        ++n;
      }
    }
    if (value.is_number()) EXPECT_NEAR(value.get<double>(), sum / n, 1e-12) << key;
  }
  EXPECT_TRUE(doc["runs"][0]["metrics"].contains("detector.char.f1"));
  EXPECT_TRUE(doc["runs"][0]["metrics"].contains("detector.char.tpr"));
  EXPECT_TRUE(doc["runs"][0]["metrics"].contains("detector.char.fpr"));
  EXPECT_FALSE(doc["checksums"].empty());
}

TEST(RunExperimentTest, ReportIsReproducible) {
  ExperimentConfig config = SmallDetectorRun();
  config.seeds = {5};
  EXPECT_EQ(RunExperiment(config).ToJson(), RunExperiment(config).ToJson());
}

TEST(RunExperimentTest, FailureNamesStage) {
  ExperimentConfig config = SmallDetectorRun();
  config.seeds = {1};
  config.thesaurus_path = "/nonexistent/thesaurus.tsv";
  config.train_path = "/nonexistent/train.jsonl";
  config.test_path = "/nonexistent/test.jsonl";
  try {
    RunExperiment(config);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("stage '"), std::string::npos) << e.what();
  }
}

TEST(DeskCorpusTest, ShapeAndDeterminism) {
  DeskCorpusConfig config;
  config.train_size = 200;
  config.test_size = 50;
  DeskCorpus a = GenerateDeskCorpus(config);
  DeskCorpus b = GenerateDeskCorpus(config);
  ASSERT_EQ(a.train.size(), 200u);
  ASSERT_EQ(a.test.size(), 50u);
  EXPECT_EQ(a.train.num_classes, 2);
  EXPECT_EQ(a.test.split, Split::kTest);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train.samples[i].text, b.train.samples[i].text);
    positives += *a.train.samples[i].label;
  }
  EXPECT_GT(positives, 80u);
  EXPECT_LT(positives, 120u);
  EXPECT_GT(a.thesaurus.size(), 50u);
}

}  // namespace
}  // namespace textguard
