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

#include "textguard/perturb.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "textguard/errors.h"
#include "word_util.h"

namespace textguard {

using internal::ContentPositions;
using internal::IsSingleWord;
using internal::MatchLeadingCase;
using internal::UsableSynonyms;

std::string_view FamilyName(PerturbFamilyKind kind) {
  switch (kind) {
    case PerturbFamilyKind::kCharOps:
      return "char";
    case PerturbFamilyKind::kThesaurusSub:
      return "syn";
    case PerturbFamilyKind::kMlmSub:
      return "mlm";
  }
  return "char";
}

PerturbFamilyKind ParseFamily(std::string_view name) {
  if (name == "char" || name == "char_ops") return PerturbFamilyKind::kCharOps;
  if (name == "syn" || name == "thesaurus_sub" || name == "thesaurus") {
    return PerturbFamilyKind::kThesaurusSub;
  }
  if (name == "mlm" || name == "mlm_sub") return PerturbFamilyKind::kMlmSub;
  throw ConfigError("unknown perturbation family '" + std::string(name) +
                    "' (expected char, syn or mlm)");
}

PerturbFamily PerturbFamily::Default(PerturbFamilyKind kind) {
  PerturbFamily family;
  family.kind = kind;
  family.rate = kind == PerturbFamilyKind::kThesaurusSub ? 0.3 : 0.15;
  return family;
}

void PerturbFamily::Validate() const {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw ConfigError("perturbation rate must be in (0, 1]");
  }
  const double weights[] = {mix.substitute, mix.insert, mix.del, mix.swap};
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ConfigError("char-op mix weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("char-op mix weights must sum to 1");
  }
  if (synonym_pool == 0) throw ConfigError("synonym_pool must be >= 1");
  if (mlm_top_k < 1) throw ConfigError("mlm_top_k must be >= 1");
}

std::size_t CeilCount(double rate, std::size_t n) {
  double raw = rate * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

namespace {

char32_t RandomLetter(Rng& rng, char32_t avoid) {
  for (;;) {
    char32_t c = U'a' + static_cast<char32_t>(rng.Uniform(26));
    if (c != avoid) return c;
  }
}

}  // namespace

std::optional<std::string> ApplyCharOp(std::string_view word, CharOp op,
                                       Rng& rng) {
  std::u32string w = DecodeUtf8(word);
  const std::size_t n = w.size();
  if (n < 3) return std::nullopt;
  switch (op) {
    case CharOp::kSubstitute: {
      std::size_t pos = 1 + static_cast<std::size_t>(rng.Uniform(n - 2));
      w[pos] = RandomLetter(rng, w[pos]);
      break;
    }
    case CharOp::kInsert: {
      std::size_t pos = 1 + static_cast<std::size_t>(rng.Uniform(n - 1));
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), RandomLetter(rng, 0));
      break;
    }
    case CharOp::kDelete: {
      std::size_t pos = 1 + static_cast<std::size_t>(rng.Uniform(n - 2));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(pos));
      break;
    }
    case CharOp::kSwap: {
      std::vector<std::size_t> pairs;
      for (std::size_t i = 1; i + 2 < n; ++i) {
        if (w[i] != w[i + 1]) pairs.push_back(i);
      }
      if (pairs.empty()) return std::nullopt;
      std::size_t i = pairs[static_cast<std::size_t>(rng.Uniform(pairs.size()))];
      std::swap(w[i], w[i + 1]);
      break;
    }
  }
  return EncodeUtf8(w);
}

std::vector<std::string> EnumerateCharOp(std::string_view word, CharOp op) {
  std::u32string w = DecodeUtf8(word);
  const std::size_t n = w.size();
  std::set<std::string> out;
  if (n < 3) return {};
  switch (op) {
    case CharOp::kSubstitute:
      for (std::size_t pos = 1; pos + 1 < n; ++pos) {
        for (char32_t c = U'a'; c <= U'z'; ++c) {
          if (c == w[pos]) continue;
          std::u32string v = w;
          v[pos] = c;
          out.insert(EncodeUtf8(v));
        }
      }
      break;
    case CharOp::kInsert:
      for (std::size_t pos = 1; pos < n; ++pos) {
        for (char32_t c = U'a'; c <= U'z'; ++c) {
          std::u32string v = w;
          v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos), c);
          out.insert(EncodeUtf8(v));
        }
      }
      break;
    case CharOp::kDelete:
      for (std::size_t pos = 1; pos + 1 < n; ++pos) {
        std::u32string v = w;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(pos));
        out.insert(EncodeUtf8(v));
      }
      break;
    case CharOp::kSwap:
      for (std::size_t i = 1; i + 2 < n; ++i) {
        if (w[i] == w[i + 1]) continue;
        std::u32string v = w;
        std::swap(v[i], v[i + 1]);
        out.insert(EncodeUtf8(v));
      }
      break;
  }
  return std::vector<std::string>(out.begin(), out.end());
}

PerturbResult CharPerturb(std::string_view text, double rate,
                          const CharOpMix& mix, std::uint64_t seed) {
  PerturbResult result;
  result.text = std::string(text);
  TokenizedText tokens = Tokenize(text);
  std::vector<std::size_t> positions = ContentPositions(tokens);
  if (positions.empty()) {
    result.unmodifiable = true;
    return result;
  }
  Rng rng(seed);
  std::size_t count = std::min(positions.size(), std::max<std::size_t>(
                                                     1, CeilCount(rate, positions.size())));
  std::vector<std::size_t> chosen = rng.SampleIndices(positions.size(), count);
  std::vector<std::string> replacement = tokens.tokens;
  const std::vector<double> weights = {mix.substitute, mix.insert, mix.del, mix.swap};
  constexpr CharOp kOps[] = {CharOp::kSubstitute, CharOp::kInsert,
                             CharOp::kDelete, CharOp::kSwap};
  for (std::size_t c : chosen) {
    std::size_t pos = positions[c];
    std::size_t first = rng.Categorical(weights);
    // Fall through the remaining ops in a fixed order if the drawn one does
    // not apply to this word.
    for (std::size_t k = 0; k < 4; ++k) {
      CharOp op = kOps[(first + k) % 4];
      if (std::optional<std::string> changed = ApplyCharOp(tokens.tokens[pos], op, rng)) {
        replacement[pos] = std::move(*changed);
        ++result.words_modified;
        break;
      }
    }
  }
  result.text = ReplaceTokens(text, tokens, replacement);
  return result;
}

PerturbResult SynonymPerturb(std::string_view text, double rate,
                             const Thesaurus& thesaurus, std::uint64_t seed,
                             std::size_t pool) {
  PerturbResult result;
  result.text = std::string(text);
  TokenizedText tokens = Tokenize(text);
  std::vector<std::size_t> content = ContentPositions(tokens);
  std::vector<std::size_t> candidates;
  for (std::size_t pos : content) {
    if (!UsableSynonyms(thesaurus, tokens.tokens[pos], pool).empty()) {
      candidates.push_back(pos);
    }
  }
  std::size_t count = std::min(candidates.size(), CeilCount(rate, content.size()));
  if (count == 0) {
    result.unmodifiable = true;
    return result;
  }
  Rng rng(seed);
  std::vector<std::size_t> chosen = rng.SampleIndices(candidates.size(), count);
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t c : chosen) {
    std::size_t pos = candidates[c];
    std::vector<std::string> synonyms =
        UsableSynonyms(thesaurus, tokens.tokens[pos], pool);
    const std::string& pick =
        synonyms[static_cast<std::size_t>(rng.Uniform(synonyms.size()))];
    replacement[pos] = MatchLeadingCase(tokens.tokens[pos], pick);
    ++result.words_modified;
  }
  result.text = ReplaceTokens(text, tokens, replacement);
  return result;
}

PerturbResult MlmPerturb(std::string_view text, double rate,
                         const BackendEndpoint* endpoint,
                         const Thesaurus& thesaurus, std::uint64_t seed,
                         std::size_t pool, int top_k) {
  auto fallback = [&]() {
    PerturbResult r = SynonymPerturb(text, rate, thesaurus, seed, pool);
    r.fallback_used = true;
    return r;
  };
  if (endpoint == nullptr || !endpoint->Supports(Capability::kMlm)) {
    if (endpoint != nullptr && endpoint->fallback == FallbackPolicy::kError) {
      throw ConfigError("mlm perturbation needs an endpoint declaring 'mlm'");
    }
    return fallback();
  }
  PerturbResult result;
  result.text = std::string(text);
  TokenizedText tokens = Tokenize(text);
  std::vector<std::size_t> content = ContentPositions(tokens);
  std::size_t count = std::min(content.size(), CeilCount(rate, content.size()));
  if (count == 0) {
    result.unmodifiable = true;
    return result;
  }
  Rng rng(seed);
  std::vector<std::size_t> chosen = rng.SampleIndices(content.size(), count);
  std::vector<std::size_t> masks;
  for (std::size_t c : chosen) masks.push_back(content[c]);
  std::sort(masks.begin(), masks.end());
  std::vector<std::vector<std::string>> suggestions;
  try {
    suggestions = RemoteMlm(*endpoint, text, masks, top_k);
  } catch (const Error&) {
    if (endpoint->fallback == FallbackPolicy::kRuleBased) return fallback();
    throw;
  }
  std::vector<std::string> replacement = tokens.tokens;
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const std::string& original = tokens.tokens[masks[m]];
    for (const std::string& s : suggestions[m]) {
      if (AsciiLower(s) != AsciiLower(original) && IsSingleWord(s)) {
        replacement[masks[m]] = MatchLeadingCase(original, s);
        ++result.words_modified;
        break;
      }
    }
  }
  if (result.words_modified == 0) {
    result.unmodifiable = true;
    return result;
  }
  result.text = ReplaceTokens(text, tokens, replacement);
  return result;
}

PerturbResult ApplyFamily(std::string_view text, const PerturbFamily& family,
                          const PerturbResources& resources, std::uint64_t seed) {
  switch (family.kind) {
    case PerturbFamilyKind::kCharOps:
      return CharPerturb(text, family.rate, family.mix, seed);
    case PerturbFamilyKind::kThesaurusSub:
      if (resources.thesaurus == nullptr) {
        throw ConfigError("thesaurus_sub perturbation needs a thesaurus");
      }
      return SynonymPerturb(text, family.rate, *resources.thesaurus, seed,
                            family.synonym_pool);
    case PerturbFamilyKind::kMlmSub: {
      static const Thesaurus kEmpty;
      const Thesaurus& thesaurus =
          resources.thesaurus != nullptr ? *resources.thesaurus : kEmpty;
      return MlmPerturb(text, family.rate, resources.endpoint, thesaurus, seed,
                        family.synonym_pool, family.mlm_top_k);
    }
  }
  throw ConfigError("unknown perturbation family");
}

ArtificialDataset MakeArtificialDataset(const Dataset& data,
                                        const PerturbFamily& family,
                                        const PerturbResources& resources,
                                        std::uint64_t seed) {
  family.Validate();
  ArtificialDataset out;
  out.data.num_classes = data.num_classes;
  out.data.split = data.split;
  out.data.samples.reserve(data.size() * 2);
  for (const TextSample& sample : data.samples) {
    TextSample original = sample;
    original.detector_label = 0;
    out.data.samples.push_back(original);

    PerturbResult perturbed = ApplyFamily(
        sample.text, family, resources, DeriveSeed(seed, "perturb", sample.id));
    if (perturbed.unmodifiable || perturbed.text == sample.text) {
      ++out.dropped;
      continue;
    }
    TextSample artificial;
    artificial.id = sample.id + "/art";
    artificial.text = std::move(perturbed.text);
    artificial.label = sample.label;
    artificial.provenance = Provenance::kArtificial;
    artificial.detector_label = 1;
    artificial.source_id = sample.id;
    out.data.samples.push_back(std::move(artificial));
  }
  return out;
}

}  // namespace textguard
