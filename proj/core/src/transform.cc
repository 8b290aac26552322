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

#include "textguard/transform.h"

#include <algorithm>

#include "textguard/corpus.h"
#include "textguard/perturb.h"
#include "textguard/rng.h"
#include "word_util.h"

namespace textguard {

std::string_view TransformName(TransformId id) {
  switch (id) {
    case TransformId::kBackTranslation:
      return "back_translation";
    case TransformId::kMlmSuggestion:
      return "mlm_suggestion";
    case TransformId::kAdverbInsertion:
      return "adverb_insertion";
    case TransformId::kTenseChange:
      return "tense_change";
    case TransformId::kSynonymSwap:
      return "synonym_swap";
    case TransformId::kContraction:
      return "contraction";
  }
  return "contraction";
}

TransformId ParseTransform(std::string_view name) {
  for (TransformId id : kAllTransforms) {
    if (TransformName(id) == name) return id;
  }
  throw ConfigError("unknown transform '" + std::string(name) + "'");
}

bool RequiresBackend(TransformId id) {
  return id == TransformId::kBackTranslation || id == TransformId::kMlmSuggestion;
}

namespace {

// Lowercased token with typographic apostrophes folded to ASCII.
std::string Fold(std::string_view token) {
  if (token == "’" || token == "‘") return "'";
  return AsciiLower(token);
}

struct PhraseRule {
  std::vector<std::string> from;  // folded tokens
  std::string to;
};

// Replaces matches of `rules` scanning left to right; at each position the
// longest matching rule wins, then table order. With `contiguous`, matched
// tokens must touch (no whitespace between them).
std::string RewritePhrases(std::string_view text, const std::vector<PhraseRule>& rules,
                           bool contiguous, std::vector<std::size_t>* positions) {
  TokenizedText tokens = Tokenize(text);
  std::string out;
  std::size_t cursor = 0;  // byte offset into text already copied
  std::size_t i = 0;
  while (i < tokens.size()) {
    const PhraseRule* match = nullptr;
    for (const PhraseRule& rule : rules) {
      const std::size_t m = rule.from.size();
      if (m == 0 || i + m > tokens.size()) continue;
      if (match != nullptr && m <= match->from.size()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j) {
        ok = Fold(tokens.tokens[i + j]) == rule.from[j];
        if (ok && j > 0 && contiguous) {
          ok = tokens.spans[i + j - 1].end == tokens.spans[i + j].begin;
        }
      }
      if (ok && !contiguous && m > 1) {
        // Expanded phrases must be whole words, not parts of a contraction.
        for (std::size_t j = 1; j < m && ok; ++j) {
          ok = tokens.spans[i + j - 1].end != tokens.spans[i + j].begin;
        }
      }
      if (ok) match = &rule;
    }
    if (match == nullptr) {
      ++i;
      continue;
    }
    const std::size_t m = match->from.size();
    const Span first = tokens.spans[i];
    const Span last = tokens.spans[i + m - 1];
    out.append(text.substr(cursor, first.begin - cursor));
    out.append(internal::MatchLeadingCase(tokens.tokens[i], match->to));
    cursor = last.end;
    if (positions != nullptr) {
      for (std::size_t j = 0; j < m; ++j) positions->push_back(i + j);
    }
    i += m;
  }
  out.append(text.substr(cursor));
  return out;
}

std::vector<std::string> FoldedTokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (const std::string& t : Tokenize(phrase).tokens) out.push_back(Fold(t));
  return out;
}

bool IsPluralSubject(std::string_view token) {
  std::string lower = AsciiLower(token);
  return lower == "i" || lower == "you" || lower == "we" || lower == "they";
}

std::string SynonymSwap(std::string_view text, const Thesaurus& thesaurus,
                        double rate, std::uint64_t seed,
                        std::vector<std::size_t>* positions) {
  TokenizedText tokens = Tokenize(text);
  std::vector<std::size_t> eligible;
  std::vector<std::string> rank1;
  for (std::size_t pos : internal::ContentPositions(tokens)) {
    std::vector<std::string> syn = internal::UsableSynonyms(thesaurus, tokens.tokens[pos], 1);
    if (syn.empty()) continue;
    eligible.push_back(pos);
    rank1.push_back(std::move(syn[0]));
  }
  const std::size_t count = std::min(eligible.size(), CeilCount(rate, eligible.size()));
  if (count == 0) return std::string(text);
  Rng rng(seed);
  std::vector<std::size_t> chosen = rng.SampleIndices(eligible.size(), count);
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t c : chosen) {
    const std::size_t pos = eligible[c];
    replacement[pos] = internal::MatchLeadingCase(tokens.tokens[pos], rank1[c]);
    if (positions != nullptr) positions->push_back(pos);
  }
  return ReplaceTokens(text, tokens, replacement);
}

// Forms of "be" need the subject to pick am/is/are.
std::optional<std::string> FlipBe(const std::string& lower,
                                  const std::string& previous) {
  if (lower == "am" || lower == "is") return "was";
  if (lower == "are") return "were";
  if (lower == "were") return "are";
  if (lower == "was") {
    if (previous == "i") return "am";
    if (IsPluralSubject(previous)) return "are";
    return "is";
  }
  return std::nullopt;
}

std::string TenseChange(std::string_view text, const MorphRules& morph,
                        std::vector<std::size_t>* positions) {
  TokenizedText tokens = Tokenize(text);
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens.tokens[i];
    if (!IsWordToken(token)) continue;
    const std::string previous = i > 0 ? AsciiLower(tokens.tokens[i - 1]) : "";
    if (std::optional<std::string> be = FlipBe(AsciiLower(token), previous)) {
      replacement[i] = internal::MatchLeadingCase(token, *be);
      if (positions != nullptr) positions->push_back(i);
      continue;
    }
    std::optional<std::string> base = morph.VerbBase(token);
    if (!base) continue;
    const bool after_plural_subject = i > 0 && IsPluralSubject(tokens.tokens[i - 1]);
    const bool is_base = AsciiLower(token) == *base;
    std::optional<Tense> tense = morph.DetectTense(token);
    if (!tense) continue;
    std::string changed;
    if (*tense == Tense::kPast) {
      changed = after_plural_subject ? internal::MatchLeadingCase(token, *base)
                                     : morph.InflectVerb(token, Tense::kPresent);
    } else {
      // Bare base forms are only treated as verbs right after a subject
      // pronoun; elsewhere they are too often nouns.
      if (is_base && !after_plural_subject) continue;
      changed = morph.InflectVerb(token, Tense::kPast);
    }
    if (changed != token) {
      replacement[i] = std::move(changed);
      if (positions != nullptr) positions->push_back(i);
    }
  }
  return ReplaceTokens(text, tokens, replacement);
}

std::string AdverbInsertion(std::string_view text, const MorphRules& morph,
                            std::uint64_t seed, std::vector<std::size_t>* positions) {
  if (morph.adverbs().empty()) return std::string(text);
  Rng rng(seed);
  const std::string& adverb =
      morph.adverbs()[static_cast<std::size_t>(rng.Uniform(morph.adverbs().size()))];
  TokenizedText tokens = Tokenize(text);
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < tokens.size() && !at; ++i) {
    if (IsWordToken(tokens.tokens[i]) && morph.IsVerbCandidate(tokens.tokens[i])) at = i;
  }
  for (std::size_t i = 0; i < tokens.size() && !at; ++i) {
    if (IsWordToken(tokens.tokens[i])) at = i;
  }
  if (!at) return std::string(text) + " " + adverb;
  if (positions != nullptr) positions->push_back(*at);
  if (*at == 0) {
    // Sentence-initial insertion takes over the capital letter.
    std::string first = tokens.tokens[0];
    std::string word = internal::MatchLeadingCase(first, adverb);
    std::string rest(text);
    if (word != adverb && first != "I" && first.size() > 1 &&
        !(first[1] >= 'A' && first[1] <= 'Z')) {
      rest[tokens.spans[0].begin] = static_cast<char>(
          rest[tokens.spans[0].begin] - 'A' + 'a');
    }
    return InsertBeforeToken(rest, tokens, 0, word);
  }
  return InsertBeforeToken(text, tokens, *at, adverb);
}

std::string MlmSuggestion(std::string_view text, const BackendEndpoint& endpoint,
                          const TransformParams& params, std::uint64_t seed,
                          std::vector<std::size_t>* positions) {
  TokenizedText tokens = Tokenize(text);
  std::vector<std::size_t> content = internal::ContentPositions(tokens);
  const std::size_t count =
      std::min(content.size(), CeilCount(params.mlm_touch_rate, content.size()));
  if (count == 0) return std::string(text);
  Rng rng(seed);
  std::vector<std::size_t> masks;
  for (std::size_t c : rng.SampleIndices(content.size(), count)) {
    masks.push_back(content[c]);
  }
  std::sort(masks.begin(), masks.end());
  std::vector<std::vector<std::string>> suggestions =
      RemoteMlm(endpoint, text, masks, params.mlm_top_k);
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const std::string& original = tokens.tokens[masks[m]];
    for (const std::string& s : suggestions[m]) {
      if (AsciiLower(s) != AsciiLower(original) && internal::IsSingleWord(s)) {
        replacement[masks[m]] = internal::MatchLeadingCase(original, s);
        if (positions != nullptr) positions->push_back(masks[m]);
        break;
      }
    }
  }
  return ReplaceTokens(text, tokens, replacement);
}

const Thesaurus& ThesaurusOrEmpty(const TransformResources& resources) {
  static const Thesaurus kEmpty;
  return resources.thesaurus != nullptr ? *resources.thesaurus : kEmpty;
}

}  // namespace

std::string ContractText(std::string_view text, const MorphRules& morph,
                         std::vector<std::size_t>* positions) {
  std::vector<PhraseRule> rules;
  for (const ContractionPair& pair : morph.contractions()) {
    rules.push_back({FoldedTokens(pair.expanded), pair.contracted});
  }
  return RewritePhrases(text, rules, /*contiguous=*/false, positions);
}

std::string ExpandText(std::string_view text, const MorphRules& morph,
                       std::vector<std::size_t>* positions) {
  std::vector<PhraseRule> rules;
  for (const ContractionPair& pair : morph.contractions()) {
    rules.push_back({FoldedTokens(pair.contracted), pair.expanded});
  }
  return RewritePhrases(text, rules, /*contiguous=*/true, positions);
}

TransformReport ApplyTransform(TransformId id, std::string_view text,
                               const TransformResources& resources,
                               std::uint64_t seed, const TransformParams& params) {
  const MorphRules& morph =
      resources.morph != nullptr ? *resources.morph : MorphRules::Default();
  TransformReport report;
  report.id = id;
  report.input = std::string(text);
  std::vector<std::size_t>* positions = &report.positions;

  auto synonym_fallback = [&]() {
    return SynonymSwap(text, ThesaurusOrEmpty(resources), params.synonym_touch_rate,
                       seed, positions);
  };
  auto back_translation_fallback = [&]() {
    std::string swapped = synonym_fallback();
    // Positions from the contraction pass refer to the swapped text; only the
    // synonym positions are reported.
    return ContractText(swapped, morph, nullptr);
  };
  // Runs `remote` when the endpoint supports `capability`, otherwise (or on
  // failure under the rule-based policy) `fallback`.
  auto with_backend = [&](Capability capability, auto remote, auto fallback) {
    const BackendEndpoint* endpoint = resources.endpoint;
    if (endpoint == nullptr || !endpoint->Supports(capability)) {
      if (endpoint != nullptr && endpoint->fallback == FallbackPolicy::kError) {
        throw TransformError(id, "endpoint does not declare '" +
                                     std::string(CapabilityName(capability)) + "'");
      }
      report.fallback_used = true;
      return fallback();
    }
    try {
      return remote(*endpoint);
    } catch (const Error& e) {
      if (endpoint->fallback == FallbackPolicy::kError) {
        throw TransformError(id, e.what());
      }
      positions->clear();
      report.fallback_used = true;
      return fallback();
    }
  };

  switch (id) {
    case TransformId::kContraction:
      report.output = ContractText(text, morph, positions);
      if (report.positions.empty()) report.output = ExpandText(text, morph, positions);
      break;
    case TransformId::kSynonymSwap:
      report.output = synonym_fallback();
      break;
    case TransformId::kAdverbInsertion:
      report.output = AdverbInsertion(text, morph, seed, positions);
      break;
    case TransformId::kTenseChange:
      report.output = TenseChange(text, morph, positions);
      break;
    case TransformId::kMlmSuggestion:
      report.output = with_backend(
          Capability::kMlm,
          [&](const BackendEndpoint& endpoint) {
            return MlmSuggestion(text, endpoint, params, seed, positions);
          },
          synonym_fallback);
      break;
    case TransformId::kBackTranslation:
      report.output = with_backend(
          Capability::kTranslate,
          [&](const BackendEndpoint& endpoint) {
            std::string out = RemoteTranslate(endpoint, text, params.pivot_language);
            if (out.empty() || out.find_first_not_of(" \t\r\n") == std::string::npos) {
              throw ProtocolError("back translation returned empty text");
            }
            return out;
          },
          back_translation_fallback);
      break;
  }
  if (report.output.empty()) report.output = report.input;
  return report;
}

std::vector<TransformId> SampleTransforms(std::uint64_t seed, std::size_t k) {
  if (k < 1 || k > kAllTransforms.size()) {
    throw ConfigError("transform sample size must be in [1, 6], got " +
                      std::to_string(k));
  }
  Rng rng(seed);
  std::vector<TransformId> out;
  for (std::size_t i : rng.SampleIndices(kAllTransforms.size(), k)) {
    out.push_back(kAllTransforms[i]);
  }
  return out;
}

}  // namespace textguard
