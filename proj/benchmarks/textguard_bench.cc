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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "textguard/attack.h"
#include "textguard/classifier.h"
#include "textguard/corpus.h"
#include "textguard/defense.h"
#include "textguard/desk_corpus.h"
#include "textguard/detector.h"
#include "textguard/features.h"
#include "textguard/perturb.h"
#include "textguard/transform.h"

namespace textguard {
namespace {

const std::string kText =
    "To be fair , the soundtrack was really wonderful and the actors were quite "
    "moving , but the script felt clumsy and the ending was awful .";

struct Fixture {
  DeskCorpus corpus;
  ClassifierModel classifier;
  DetectorModel detector;

  Fixture() {
    DeskCorpusConfig desk;
    desk.train_size = 1000;
    desk.test_size = 100;
    corpus = GenerateDeskCorpus(desk);
    ClassifierConfig config;
    config.sgd.learning_rate = 1.0;
    classifier = TrainClassifier(corpus.train, config);
    DetectorTrainConfig det;
    det.sgd.learning_rate = 1.0;
    detector = TrainTwoStage(corpus.train, PerturbFamily::Default(PerturbFamilyKind::kThesaurusSub),
                             {&corpus.thesaurus, nullptr}, Dataset{}, det);
  }
};

const Fixture& GetFixture() {
  static const Fixture fixture;
  return fixture;
}

void BM_Tokenize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Tokenize(kText));
}
BENCHMARK(BM_Tokenize);

void BM_Levenshtein(benchmark::State& state) {
  const std::string a(static_cast<std::size_t>(state.range(0)), 'a');
  std::string b = a;
  for (std::size_t i = 0; i < b.size(); i += 3) b[i] = 'b';
  for (auto _ : state) benchmark::DoNotOptimize(Levenshtein(a, b));
}
BENCHMARK(BM_Levenshtein)->Arg(12)->Arg(128)->Arg(1024);

void BM_ExtractFeatures(benchmark::State& state) {
  FeatureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(ExtractFeatures(spec, kText));
}
BENCHMARK(BM_ExtractFeatures);

void BM_ClassifierPredict(benchmark::State& state) {
  const Fixture& f = GetFixture();
  for (auto _ : state) benchmark::DoNotOptimize(f.classifier.Predict(kText));
}
BENCHMARK(BM_ClassifierPredict);

void BM_AnomalyScore(benchmark::State& state) {
  const Fixture& f = GetFixture();
  for (auto _ : state) benchmark::DoNotOptimize(f.detector.AnomalyScore(kText));
}
BENCHMARK(BM_AnomalyScore);

void BM_ApplyTransform(benchmark::State& state) {
  const Fixture& f = GetFixture();
  const TransformId id = kAllTransforms[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(TransformName(id)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ApplyTransform(id, kText, {&f.corpus.thesaurus, nullptr, nullptr}, ++seed));
  }
}
BENCHMARK(BM_ApplyTransform)->DenseRange(0, 5);

void BM_DefendPredict(benchmark::State& state) {
  const Fixture& f = GetFixture();
  DefenseConfig config;
  config.detector = &f.detector;
  config.classifier = &f.classifier;
  config.resources.thesaurus = &f.corpus.thesaurus;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(DefendPredict(config, kText, ++seed));
}
BENCHMARK(BM_DefendPredict);

void BM_GreedyWordAttack(benchmark::State& state) {
  const Fixture& f = GetFixture();
  AttackConfig config;
  const TextSample& sample = f.corpus.test.samples.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        GreedyWordAttack(f.classifier, sample, config, {&f.corpus.thesaurus, nullptr}));
  }
}
BENCHMARK(BM_GreedyWordAttack)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace textguard

BENCHMARK_MAIN();
