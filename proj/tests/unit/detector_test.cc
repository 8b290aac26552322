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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.h"
#include "textguard/errors.h"
#include "textguard/rng.h"

namespace textguard {
namespace {

// Detector whose score is sigmoid-like in one hashed word feature: texts
// containing `word` score `high`, others score `low`.
DetectorModel WordDetector(const std::string& word, double low, double high) {
  FeatureSpec spec;
  spec.word_bigrams = false;
  spec.norm = FeatureNorm::kNone;
  LinearModel model(spec, 2);
  model.bias(1) = std::log(low / (1 - low));
  model.weight(HashFeature(spec, 'w', word), 1) =
      std::log(high / (1 - high)) - std::log(low / (1 - low));
  return DetectorModel(model);
}

// Confusion counts straight from the definitions.
ConfusionCounts CountOracle(const std::vector<int>& gold, const std::vector<int>& pred) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == 1 && pred[i] == 1) ++c.tp;
    if (gold[i] == 0 && pred[i] == 1) ++c.fp;
    if (gold[i] == 0 && pred[i] == 0) ++c.tn;
    if (gold[i] == 1 && pred[i] == 0) ++c.fn;
  }
  return c;
}

TEST(DetectorTest, ZeroWeightScoresHalfAndIsCompliant) {
  DetectorModel d = UntrainedDetector();
  EXPECT_DOUBLE_EQ(d.AnomalyScore("whatever text"), 0.5);
  EXPECT_FALSE(d.IsAnomalous("whatever text"));
}

TEST(DetectorTest, StrictThreshold) {
  DetectorModel d = WordDetector("odd", 0.4, 0.6);
  EXPECT_NEAR(d.AnomalyScore("an odd one"), 0.6, 1e-12);
  EXPECT_TRUE(d.IsAnomalous("an odd one"));
  EXPECT_NEAR(d.AnomalyScore("a plain one"), 0.4, 1e-12);
  EXPECT_FALSE(d.IsAnomalous("a plain one"));
}

TEST(DetectorTest, ScoreInUnitInterval) {
  DetectorModel d = WordDetector("odd", 1e-9, 1 - 1e-9);
  for (const char* t : {"odd", "odd odd odd odd", "", "fine"}) {
    const double s = d.AnomalyScore(t);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(DetectorTest, RequiresTwoClasses) {
  EXPECT_THROW(DetectorModel(LinearModel(FeatureSpec{}, 3)), Error);
}

TEST(DetectorTest, ThresholdRange) {
  DetectorModel d = UntrainedDetector();
  EXPECT_DOUBLE_EQ(d.threshold(), 0.5);
  EXPECT_THROW(d.set_threshold(1.0), ConfigError);
  EXPECT_THROW(d.set_threshold(0.0), ConfigError);
}

TEST(BceLossTest, ClosedForm) {
  EXPECT_NEAR(BceLoss(1, 0.5), std::log(2.0), 1e-12);
  EXPECT_NEAR(BceLoss(0, 0.5), std::log(2.0), 1e-12);
  EXPECT_NEAR(BceLoss(1, 1 - kBceEpsilon), 0.0, 1e-6);
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const double p = 0.001 + 0.998 * rng.UniformDouble();
    const int y = static_cast<int>(rng.Uniform(2));
    const double expected = -y * std::log(p) - (1 - y) * std::log(1 - p);
    EXPECT_NEAR(BceLoss(y, p), expected, 1e-9);
  }
}

TEST(BceLossTest, ClampsAndStaysNonNegative) {
  EXPECT_TRUE(std::isfinite(BceLoss(1, 0.0)));
  EXPECT_NEAR(BceLoss(1, 0.0), -std::log(kBceEpsilon), 1e-9);
  EXPECT_NEAR(BceLoss(0, 1.0), -std::log(kBceEpsilon), 1e-9);
  for (double p : {0.0, 1e-9, 0.3, 0.7, 1.0}) {
    EXPECT_GE(BceLoss(0, p), 0.0);
    EXPECT_GE(BceLoss(1, p), 0.0);
  }
}

TEST(ReportTest, ConfusionExample) {
  DetectorEvalReport r = ReportFromCounts({8, 2, 8, 2});
  EXPECT_DOUBLE_EQ(*r.precision, 0.8);
  EXPECT_DOUBLE_EQ(*r.tpr, 0.8);
  EXPECT_DOUBLE_EQ(*r.f1, 0.8);
  EXPECT_DOUBLE_EQ(*r.fpr, 0.2);
}

TEST(ReportTest, PerfectAndAllPositive) {
  DetectorEvalReport perfect = ReportFromCounts({10, 0, 10, 0});
  EXPECT_DOUBLE_EQ(*perfect.tpr, 1.0);
  EXPECT_DOUBLE_EQ(*perfect.fpr, 0.0);
  EXPECT_DOUBLE_EQ(*perfect.f1, 1.0);
  DetectorEvalReport all = ReportFromCounts({10, 10, 0, 0});
  EXPECT_DOUBLE_EQ(*all.tpr, 1.0);
  EXPECT_DOUBLE_EQ(*all.fpr, 1.0);
}

TEST(ReportTest, MissingClassGivesUndefinedMarkers) {
  DetectorEvalReport r = ReportFromCounts({0, 1, 3, 0});
  EXPECT_FALSE(r.tpr.has_value());
  EXPECT_TRUE(r.fpr.has_value());
  auto doc = nlohmann::json::parse(DetectorReportJson(r));
  EXPECT_TRUE(doc["tpr"].is_null());
  EXPECT_EQ(doc["fp"], 1);
}

TEST(ReportTest, JsonKeyOrder) {
  std::string json = DetectorReportJson(ReportFromCounts({8, 2, 8, 2}));
  std::vector<std::string> keys = {"\"tpr\"", "\"fpr\"", "\"f1\"", "\"tp\"",
                                   "\"fp\"",  "\"tn\"",  "\"fn\""};
  std::size_t pos = 0;
  for (const std::string& k : keys) {
    std::size_t at = json.find(k);
    ASSERT_NE(at, std::string::npos) << k;
    EXPECT_GE(at, pos);
    pos = at;
  }
}

Dataset LabeledSet(const std::vector<std::string>& texts, const std::vector<int>& labels) {
  Dataset d;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    TextSample s;
    s.id = "e" + std::to_string(i);
    s.text = texts[i];
    s.detector_label = labels[i];
    d.samples.push_back(s);
  }
  return d;
}

TEST(EvaluateDetectorTest, MatchesOracle) {
  DetectorModel d = WordDetector("odd", 0.2, 0.9);
  Rng rng(23);
  std::vector<std::string> texts;
  std::vector<int> gold, pred;
  for (int i = 0; i < 200; ++i) {
    const bool odd = rng.Bernoulli(0.5);
    texts.push_back(odd ? "an odd sentence" : "a normal sentence");
    gold.push_back(static_cast<int>(rng.Uniform(2)));
    pred.push_back(odd ? 1 : 0);
  }
  DetectorEvalReport r = EvaluateDetector(d, LabeledSet(texts, gold));
  ConfusionCounts c = CountOracle(gold, pred);
  EXPECT_EQ(r.counts.tp, c.tp);
  EXPECT_EQ(r.counts.fp, c.fp);
  EXPECT_EQ(r.counts.tn, c.tn);
  EXPECT_EQ(r.counts.fn, c.fn);
  const double precision = double(c.tp) / (c.tp + c.fp);
  const double recall = double(c.tp) / (c.tp + c.fn);
  EXPECT_EQ(*r.f1, 2.0 * c.tp / (2.0 * c.tp + c.fp + c.fn));
  EXPECT_NEAR(*r.f1, 2 * precision * recall / (precision + recall), 1e-12);
  EXPECT_EQ(*r.tpr, recall);
  EXPECT_EQ(*r.fpr, double(c.fp) / (c.fp + c.tn));
}

TEST(EvaluateDetectorTest, MissingDetectorLabelIsError) {
  Dataset d = LabeledSet({"x"}, {1});
  d.samples[0].detector_label.reset();
  EXPECT_THROW(EvaluateDetector(UntrainedDetector(), d), Error);
}

Dataset StageSet(int offset) {
  // Natural texts vs texts with a doubled-letter artifact.
  std::vector<std::string> texts;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    const std::string base = "review number " + std::to_string(i + offset) + " was pleasant";
    texts.push_back(base);
    labels.push_back(0);
    texts.push_back("review number " + std::to_string(i + offset) + " was pleaasant");
    labels.push_back(1);
  }
  return LabeledSet(texts, labels);
}

DetectorTrainConfig SmallConfig() {
  DetectorTrainConfig config;
  config.features.hash_dim = 1u << 14;
  config.sgd.learning_rate = 0.5;
  config.sgd.seed = 3;
  return config;
}

TEST(TrainDetectorTest, EmptyStageTwoEqualsStageOneOnly) {
  DetectorTrainInfo info;
  DetectorModel a = TrainDetectorStages(StageSet(0), Dataset{}, SmallConfig(), &info);
  EXPECT_TRUE(info.stage2_skipped);
  DetectorTrainConfig only_one = SmallConfig();
  DetectorModel b = TrainDetectorStages(StageSet(0), Dataset{}, only_one);
  EXPECT_TRUE(a.linear() == b.linear());
  DetectorModel c = TrainDetectorStages(StageSet(0), StageSet(100), SmallConfig());
  EXPECT_FALSE(a.linear() == c.linear());
}

TEST(TrainDetectorTest, SeparatesArtifactAndIsDeterministic) {
  DetectorModel a = TrainDetectorStages(StageSet(0), StageSet(100), SmallConfig());
  DetectorModel b = TrainDetectorStages(StageSet(0), StageSet(100), SmallConfig());
  EXPECT_TRUE(a == b);
  DetectorEvalReport r = EvaluateDetector(a, StageSet(500));
  EXPECT_GE(*r.f1, 0.9);
  testing::TempDir dir;
  a.Save(dir / "a.det");
  b.Save(dir / "b.det");
  EXPECT_EQ(testing::ReadFile(dir / "a.det"), testing::ReadFile(dir / "b.det"));
}

TEST(TrainDetectorTest, ArtificialScoresAboveOriginals) {
  Dataset train = testing::MarkerCorpus();
  for (int i = 0; i < 3; ++i) {
    Dataset more = testing::MarkerCorpus();
    for (TextSample& s : more.samples) s.id += "-" + std::to_string(i);
    train.samples.insert(train.samples.end(), more.samples.begin(), more.samples.end());
  }
  PerturbFamily family = PerturbFamily::Default(PerturbFamilyKind::kCharOps);
  family.rate = 0.5;
  DetectorModel d = TrainTwoStage(train, family, {}, Dataset{}, SmallConfig());
  ArtificialDataset heldout = MakeArtificialDataset(testing::MarkerCorpus(), family, {}, 999);
  double art = 0, orig = 0;
  std::size_t n_art = 0, n_orig = 0;
  for (const TextSample& s : heldout.data.samples) {
    (*s.detector_label ? art : orig) += d.AnomalyScore(s.text);
    (*s.detector_label ? n_art : n_orig) += 1;
  }
  EXPECT_GT(art / n_art, orig / n_orig);
}

TEST(TrainDetectorTest, MissingDetectorLabelIsTrainingError) {
  Dataset bad = StageSet(0);
  bad.samples[3].detector_label.reset();
  EXPECT_THROW(TrainDetectorStages(bad, Dataset{}, SmallConfig()), TrainingError);
}

TEST(DetectorFileTest, RoundTripKeepsThresholdAndProvenance) {
  DetectorModel d = WordDetector("odd", 0.3, 0.7);
  d.set_threshold(0.6);
  d.set_provenance({"char", "char-attack", "desk"});
  testing::TempDir dir;
  d.Save(dir / "d.det");
  DetectorModel back = DetectorModel::Load(dir / "d.det");
  EXPECT_TRUE(back == d);
  EXPECT_EQ(back.provenance().stage2_attack, "char-attack");
}

TEST(DetectorFileTest, ClassifierFileIsRejected) {
  testing::TempDir dir;
  testing::TrainMarkerModel().Save(dir / "c.bin");
  EXPECT_THROW(DetectorModel::Load(dir / "c.bin"), ParseError);
}

}  // namespace
}  // namespace textguard
