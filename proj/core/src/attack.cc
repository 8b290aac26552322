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

#include "textguard/attack.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "json.hpp"
#include "textguard/errors.h"
#include "textguard/perturb.h"
#include "textguard/rng.h"
#include "word_util.h"

namespace textguard {

double BagOfWordsCosine(std::string_view a, std::string_view b) {
  auto bag = [](std::string_view text) {
    std::map<std::string, double> counts;
    for (const std::string& token : Tokenize(text).tokens) {
      if (IsWordToken(token)) counts[AsciiLower(token)] += 1.0;
    }
    return counts;
  };
  std::map<std::string, double> x = bag(a);
  std::map<std::string, double> y = bag(b);
  if (x.empty() && y.empty()) return 1.0;
  if (x.empty() || y.empty()) return 0.0;
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (const auto& [word, c] : x) {
    nx += c * c;
    auto it = y.find(word);
    if (it != y.end()) dot += c * it->second;
  }
  for (const auto& [word, c] : y) ny += c * c;
  return std::min(1.0, dot / (std::sqrt(nx) * std::sqrt(ny)));
}

ConstraintSet ConstraintSet::WordDefaults() {
  ConstraintSet set;
  set.max_perturbation_rate = 0.4;
  set.min_similarity = 0.85;
  return set;
}

ConstraintSet ConstraintSet::CharDefaults() {
  ConstraintSet set;
  set.max_perturbation_rate = 0.4;
  set.levenshtein_per_modified_word = 2.0;
  return set;
}

bool ConstraintSet::empty() const {
  return !max_perturbation_rate && !max_levenshtein &&
         !levenshtein_per_modified_word && !min_similarity &&
         anomaly_detector == nullptr;
}

void ConstraintSet::Validate() const {
  if (empty()) throw ConfigError("constraint set is empty");
  if (max_perturbation_rate &&
      !(*max_perturbation_rate >= 0.0 && *max_perturbation_rate <= 1.0)) {
    throw ConfigError("max_perturbation_rate must be in [0, 1]");
  }
  if (levenshtein_per_modified_word && !(*levenshtein_per_modified_word >= 0.0)) {
    throw ConfigError("levenshtein_per_modified_word must be >= 0");
  }
  if (min_similarity && !(*min_similarity >= 0.0 && *min_similarity <= 1.0)) {
    throw ConfigError("min_similarity must be in [0, 1]");
  }
}

bool ConstraintAudit::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConstraintCheck& c) { return c.passed; });
}

const ConstraintCheck* ConstraintAudit::Find(std::string_view name) const {
  for (const ConstraintCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ConstraintAudit CheckConstraints(std::string_view original,
                                 std::string_view candidate,
                                 const ConstraintSet& constraints) {
  ConstraintAudit audit;
  TokenizedText a = Tokenize(original);
  TokenizedText b = Tokenize(candidate);
  const bool aligned = a.size() == b.size();
  std::size_t modified = 0;
  if (aligned) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.tokens[i] != b.tokens[i]) ++modified;
    }
  }

  if (constraints.max_perturbation_rate) {
    ConstraintCheck check{"perturbation_rate", false, std::nullopt,
                          *constraints.max_perturbation_rate, {}};
    if (aligned) {
      check.value = PerturbationRate(a, b);
      check.passed = *check.value <= check.limit;
    } else {
      check.reason = "token counts differ";
    }
    audit.checks.push_back(std::move(check));
  }
  if (constraints.max_levenshtein || constraints.levenshtein_per_modified_word) {
    ConstraintCheck check{"levenshtein", false, std::nullopt, 0.0, {}};
    double limit = std::numeric_limits<double>::infinity();
    if (constraints.max_levenshtein) {
      limit = static_cast<double>(*constraints.max_levenshtein);
    }
    if (constraints.levenshtein_per_modified_word) {
      if (aligned) {
        limit = std::min(limit, *constraints.levenshtein_per_modified_word *
                                    static_cast<double>(modified));
      } else {
        check.reason = "token counts differ";
        limit = -1.0;
      }
    }
    check.limit = limit;
    check.value = static_cast<double>(Levenshtein(original, candidate));
    check.passed = limit >= 0.0 && *check.value <= limit;
    audit.checks.push_back(std::move(check));
  }
  if (constraints.min_similarity) {
    ConstraintCheck check{"similarity", false, std::nullopt,
                          *constraints.min_similarity, {}};
    try {
      check.value = constraints.similarity
                        ? constraints.similarity(original, candidate)
                        : BagOfWordsCosine(original, candidate);
      check.passed = *check.value >= check.limit;
    } catch (const std::exception& e) {
      check.reason = e.what();
    }
    audit.checks.push_back(std::move(check));
  }
  if (constraints.anomaly_detector != nullptr) {
    ConstraintCheck check{"anomaly", false, std::nullopt, kAnomalyThreshold, {}};
    check.value = constraints.anomaly_detector->AnomalyScore(candidate);
    check.passed = *check.value < kAnomalyThreshold;
    audit.checks.push_back(std::move(check));
  }
  return audit;
}

AttackKind ParseAttackKind(std::string_view name) {
  if (name == "word") return AttackKind::kWord;
  if (name == "char") return AttackKind::kChar;
  throw ConfigError("unknown attack kind '" + std::string(name) + "'");
}

CandidateSource ParseCandidateSource(std::string_view name) {
  if (name == "thesaurus") return CandidateSource::kThesaurus;
  if (name == "mlm") return CandidateSource::kMlm;
  throw ConfigError("unknown candidate source '" + std::string(name) + "'");
}

std::vector<std::size_t> WordImportance(const TextClassifier& victim,
                                        std::string_view text, int target_class,
                                        std::size_t* queries) {
  TokenizedText tokens = Tokenize(text);
  const double base = victim.Predict(text)[static_cast<std::size_t>(target_class)];
  std::vector<double> importance(tokens.size());
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    replacement[i].clear();
    std::string deleted = ReplaceTokens(text, tokens, replacement);
    importance[i] = base - victim.Predict(deleted)[static_cast<std::size_t>(target_class)];
    replacement[i] = tokens.tokens[i];
  }
  if (queries != nullptr) *queries += tokens.size() + 1;
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance[a] > importance[b];
  });
  return order;
}

namespace {

// Produces substitution candidates for token `pos` of the current text.
using CandidateFn = std::function<std::vector<std::string>(
    const std::string& current_text, const TokenizedText& tokens, std::size_t pos)>;

AttackOutcome SearchAttack(const TextClassifier& victim, const TextSample& sample,
                           const AttackConfig& config, const CandidateFn& candidates) {
  config.constraints.Validate();
  if (config.budget == 0) throw ConfigError("attack budget must be >= 1");

  AttackOutcome outcome;
  outcome.original = sample;
  outcome.final_sample = sample;
  outcome.final_sample.id = sample.id + "/adv";
  outcome.final_sample.provenance = Provenance::kAdversarial;
  outcome.final_sample.source_id = sample.id;

  const std::string& text = sample.text;
  TokenizedText tokens = Tokenize(text);
  auto finish = [&](const std::string& final_text, int prediction) {
    outcome.final_sample.text = final_text;
    outcome.final_prediction = prediction;
    outcome.audit = CheckConstraints(text, final_text, config.constraints);
    outcome.success = prediction != outcome.original_prediction &&
                      outcome.audit.passed();
    return outcome;
  };

  ProbDist original = victim.Predict(text);
  outcome.queries = 1;
  outcome.original_prediction = original.Argmax();
  const std::size_t target = static_cast<std::size_t>(outcome.original_prediction);
  if (tokens.empty() || outcome.queries + tokens.size() + 1 > config.budget) {
    return finish(text, outcome.original_prediction);
  }

  std::vector<std::size_t> order =
      WordImportance(victim, text, outcome.original_prediction, &outcome.queries);
  std::vector<std::string> current = tokens.tokens;
  std::string current_text = text;
  double current_prob = original[target];
  int current_prediction = outcome.original_prediction;

  for (std::size_t pos : order) {
    if (!IsModifiableWord(tokens.tokens[pos])) continue;
    if (outcome.queries >= config.budget) break;
    TokenizedText current_tokens = Tokenize(current_text);
    if (current_tokens.size() != tokens.size()) break;
    std::vector<std::string> options = candidates(current_text, current_tokens, pos);

    std::optional<std::string> best_text;
    double best_prob = current_prob;
    int best_prediction = current_prediction;
    std::string best_word;
    for (const std::string& option : options) {
      if (option == current[pos]) continue;
      std::vector<std::string> trial = current;
      trial[pos] = option;
      std::string trial_text = ReplaceTokens(text, tokens, trial);
      if (!CheckConstraints(text, trial_text, config.constraints).passed()) continue;
      if (outcome.queries >= config.budget) break;
      ProbDist probs = victim.Predict(trial_text);
      ++outcome.queries;
      if (probs[target] < best_prob) {
        best_prob = probs[target];
        best_prediction = probs.Argmax();
        best_text = std::move(trial_text);
        best_word = option;
      }
    }
    if (best_text) {
      if (current[pos] == tokens.tokens[pos]) ++outcome.words_modified;
      current[pos] = best_word;
      current_text = std::move(*best_text);
      current_prob = best_prob;
      current_prediction = best_prediction;
      if (current_prediction != outcome.original_prediction) break;
    }
  }
  return finish(current_text, current_prediction);
}

}  // namespace

AttackOutcome GreedyWordAttack(const TextClassifier& victim,
                               const TextSample& sample,
                               const AttackConfig& config,
                               const AttackResources& resources) {
  static const Thesaurus kEmpty;
  const Thesaurus& thesaurus =
      resources.thesaurus != nullptr ? *resources.thesaurus : kEmpty;
  bool fallback_used = false;
  bool use_mlm = config.source == CandidateSource::kMlm;
  if (use_mlm && (resources.endpoint == nullptr ||
                  !resources.endpoint->Supports(Capability::kMlm))) {
    if (resources.endpoint != nullptr &&
        resources.endpoint->fallback == FallbackPolicy::kError) {
      throw ConfigError("mlm attack needs an endpoint declaring 'mlm'");
    }
    use_mlm = false;
    fallback_used = true;
  }
  if (!use_mlm && resources.thesaurus == nullptr) {
    throw ConfigError("thesaurus word attack needs a thesaurus");
  }

  CandidateFn candidates = [&](const std::string& current_text,
                               const TokenizedText& tokens, std::size_t pos) {
    const std::string& word = tokens.tokens[pos];
    std::vector<std::string> raw;
    if (use_mlm) {
      const std::size_t masks[] = {pos};
      try {
        raw = RemoteMlm(*resources.endpoint, current_text, masks,
                        config.mlm_top_k)[0];
      } catch (const Error&) {
        if (resources.endpoint->fallback == FallbackPolicy::kError) throw;
        fallback_used = true;
        raw = internal::UsableSynonyms(thesaurus, word, config.max_candidates);
      }
    } else {
      raw = internal::UsableSynonyms(thesaurus, word, config.max_candidates);
    }
    std::vector<std::string> out;
    for (const std::string& r : raw) {
      if (!internal::IsSingleWord(r) || AsciiLower(r) == AsciiLower(word)) continue;
      out.push_back(internal::MatchLeadingCase(word, r));
      if (out.size() >= config.max_candidates) break;
    }
    return out;
  };
  AttackOutcome outcome = SearchAttack(victim, sample, config, candidates);
  outcome.fallback_used = fallback_used;
  return outcome;
}

AttackOutcome CharAttack(const TextClassifier& victim, const TextSample& sample,
                         const AttackConfig& config) {
  constexpr CharOp kOps[] = {CharOp::kSubstitute, CharOp::kInsert,
                             CharOp::kDelete, CharOp::kSwap};
  CandidateFn candidates = [&](const std::string&, const TokenizedText& tokens,
                               std::size_t pos) {
    const std::string& word = tokens.tokens[pos];
    Rng rng(DeriveSeed(config.seed, "char-attack", sample.id, pos));
    std::vector<std::string> out;
    for (CharOp op : kOps) {
      std::vector<std::string> all = EnumerateCharOp(word, op);
      std::size_t take = std::min(all.size(), config.char_candidates_per_op);
      for (std::size_t i : rng.SampleIndices(all.size(), take)) {
        out.push_back(all[i]);
      }
    }
    return out;
  };
  return SearchAttack(victim, sample, config, candidates);
}

AttackOutcome AttackSample(const TextClassifier& victim, const TextSample& sample,
                           const AttackConfig& config,
                           const AttackResources& resources) {
  return config.kind == AttackKind::kChar
             ? CharAttack(victim, sample, config)
             : GreedyWordAttack(victim, sample, config, resources);
}

AttackRun RunAttack(const TextClassifier& victim, const Dataset& data,
                    const AttackConfig& config, const AttackResources& resources) {
  AttackRun run;
  for (const TextSample& sample : data.samples) {
    if (!sample.label) continue;
    if (victim.Predict(sample.text).Argmax() != *sample.label) {
      ++run.skipped;
      continue;
    }
    AttackConfig per_sample = config;
    per_sample.seed = DeriveSeed(config.seed, "attack", sample.id);
    run.outcomes.push_back(AttackSample(victim, sample, per_sample, resources));
  }
  return run;
}

double AttackSuccessRate(const std::vector<AttackOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw ConfigError("attack success rate of an empty outcome list");
  }
  std::size_t successes = 0;
  for (const AttackOutcome& o : outcomes) successes += o.success ? 1 : 0;
  return static_cast<double>(successes) / static_cast<double>(outcomes.size());
}

Dataset AdversarialPairs(const std::vector<AttackOutcome>& outcomes,
                         int num_classes, Split split) {
  Dataset pairs;
  pairs.num_classes = num_classes;
  pairs.split = split;
  for (const AttackOutcome& o : outcomes) {
    if (!o.success) continue;
    TextSample original = o.original;
    original.detector_label = 0;
    pairs.samples.push_back(std::move(original));
    TextSample adversarial = o.final_sample;
    adversarial.detector_label = 1;
    pairs.samples.push_back(std::move(adversarial));
  }
  return pairs;
}

std::string OutcomeJson(const AttackOutcome& outcome) {
  nlohmann::ordered_json doc;
  doc["id"] = outcome.original.id;
  doc["original"] = outcome.original.text;
  doc["final"] = outcome.final_sample.text;
  doc["label"] = outcome.original.label ? nlohmann::json(*outcome.original.label)
                                        : nlohmann::json(nullptr);
  doc["success"] = outcome.success;
  doc["queries"] = outcome.queries;
  doc["words_modified"] = outcome.words_modified;
  doc["original_prediction"] = outcome.original_prediction;
  doc["final_prediction"] = outcome.final_prediction;
  doc["fallback_used"] = outcome.fallback_used;
  nlohmann::ordered_json audit = nlohmann::ordered_json::array();
  for (const ConstraintCheck& c : outcome.audit.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["value"] = c.value ? nlohmann::json(*c.value) : nlohmann::json(nullptr);
    entry["limit"] = std::isfinite(c.limit) ? nlohmann::json(c.limit)
                                            : nlohmann::json(nullptr);
    if (!c.reason.empty()) entry["reason"] = c.reason;
    audit.push_back(std::move(entry));
  }
  doc["audit"] = std::move(audit);
  return doc.dump();
}

}  // namespace textguard
