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

#include "textguard/augment.h"

#include <algorithm>
#include <cmath>

#include "textguard/errors.h"
#include "textguard/perturb.h"
#include "textguard/rng.h"
#include "word_util.h"

namespace textguard {

void AugmentConfig::Validate() const {
  if (!(p > 0.0 && p <= 100.0)) throw ConfigError("augment p must be in (0, 100]");
  if (s < 1) throw ConfigError("augment s must be >= 1");
  if (max_attempts < 1) throw ConfigError("augment max_attempts must be >= 1");
}

SubstitutionResult RandomSynonymSubstitute(std::string_view text,
                                           const AugmentConfig& config,
                                           const Thesaurus& thesaurus,
                                           std::uint64_t seed) {
  SubstitutionResult result;
  TokenizedText tokens = Tokenize(text);
  std::vector<std::size_t> eligible;
  std::vector<std::vector<std::string>> options;
  for (std::size_t pos : internal::ContentPositions(tokens)) {
    std::vector<std::string> syn =
        internal::UsableSynonyms(thesaurus, tokens.tokens[pos], config.s);
    if (syn.empty()) continue;
    eligible.push_back(pos);
    options.push_back(std::move(syn));
  }
  result.eligible = eligible.size();
  result.required = CeilCount(config.p / 100.0, eligible.size());
  const std::size_t count = std::min(result.required, eligible.size());
  result.shortfall = count < result.required || result.eligible == 0;
  if (count == 0) {
    result.text = std::string(text);
    return result;
  }
  Rng rng(seed);
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t c : rng.SampleIndices(eligible.size(), count)) {
    const std::vector<std::string>& syn = options[c];
    const std::string& pick = syn[static_cast<std::size_t>(rng.Uniform(syn.size()))];
    replacement[eligible[c]] = internal::MatchLeadingCase(tokens.tokens[eligible[c]], pick);
    ++result.substitutions;
  }
  result.text = ReplaceTokens(text, tokens, replacement);
  return result;
}

double CandidateSpaceSize(std::size_t n, double p, std::size_t s) {
  const std::size_t m = std::min(n, CeilCount(p / 100.0, n));
  double combinations = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    combinations = combinations * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return std::round(combinations) * std::pow(static_cast<double>(s), static_cast<double>(m));
}

namespace {

TextSample AugmentedSample(const TextSample& source, std::string text) {
  TextSample out;
  out.id = source.id + "/aug";
  out.text = std::move(text);
  out.label = source.label;
  out.provenance = Provenance::kAugmented;
  out.source_id = source.id;
  return out;
}

Dataset EmptyLike(const Dataset& train) {
  Dataset out;
  out.num_classes = train.num_classes;
  out.split = train.split;
  out.samples.reserve(train.size() * 2);
  return out;
}

}  // namespace

Dataset DetectorGuidedAugment(const Dataset& train, const DetectorModel& detector,
                              const AugmentConfig& config,
                              const Thesaurus& thesaurus, AugmentStats* stats) {
  config.Validate();
  AugmentStats local;
  Dataset out = EmptyLike(train);
  for (const TextSample& sample : train.samples) out.samples.push_back(sample);
  for (const TextSample& sample : train.samples) {
    std::string best;
    double best_score = -1.0;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < config.max_attempts; ++attempt) {
      ++local.attempts;
      SubstitutionResult candidate = RandomSynonymSubstitute(
          sample.text, config, thesaurus,
          DeriveSeed(config.seed, "augment", sample.id, attempt));
      const double score = detector.AnomalyScore(candidate.text);
      if (score > best_score) {
        best_score = score;
        best = candidate.text;
      }
      if (score > detector.threshold()) {
        accepted = true;
        best = std::move(candidate.text);
        break;
      }
    }
    TextSample augmented = AugmentedSample(sample, std::move(best));
    augmented.flagged = !accepted;
    ++(accepted ? local.accepted : local.flagged);
    out.samples.push_back(std::move(augmented));
  }
  if (stats != nullptr) *stats = local;
  return out;
}

Dataset RandomAugment(const Dataset& train, const AugmentConfig& config,
                      const Thesaurus& thesaurus) {
  config.Validate();
  Dataset out = EmptyLike(train);
  for (const TextSample& sample : train.samples) out.samples.push_back(sample);
  for (const TextSample& sample : train.samples) {
    SubstitutionResult candidate = RandomSynonymSubstitute(
        sample.text, config, thesaurus, DeriveSeed(config.seed, "augment", sample.id, 0));
    out.samples.push_back(AugmentedSample(sample, std::move(candidate.text)));
  }
  return out;
}

}  // namespace textguard
