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

#include "textguard/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "textguard/errors.h"

namespace textguard {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kOriginal:
      return "original";
    case Provenance::kArtificial:
      return "artificial";
    case Provenance::kAdversarial:
      return "adversarial";
    case Provenance::kTransformed:
      return "transformed";
    case Provenance::kAugmented:
      return "augmented";
  }
  return "original";
}

Provenance ParseProvenance(std::string_view name) {
  for (Provenance p : {Provenance::kOriginal, Provenance::kArtificial,
                       Provenance::kAdversarial, Provenance::kTransformed,
                       Provenance::kAugmented}) {
    if (ProvenanceName(p) == name) return p;
  }
  throw Error("unknown provenance '" + std::string(name) + "'");
}

DatasetFormat ParseDatasetFormat(std::string_view name) {
  if (name == "jsonl") return DatasetFormat::kJsonl;
  if (name == "tsv") return DatasetFormat::kTsv;
  throw ConfigError("unknown dataset format '" + std::string(name) +
                    "' (expected jsonl or tsv)");
}

// --- UTF-8 -----------------------------------------------------------------

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    char32_t cp;
    std::size_t extra;
    if (c < 0x80) {
      cp = c;
      extra = 0;
    } else if ((c & 0xe0) == 0xc0) {
      cp = c & 0x1f;
      extra = 1;
    } else if ((c & 0xf0) == 0xe0) {
      cp = c & 0x0f;
      extra = 2;
    } else if ((c & 0xf8) == 0xf0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw Error("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + extra >= text.size() && extra > 0) {
      throw Error("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xc0) != 0x80) {
        throw Error("invalid UTF-8 continuation at offset " +
                    std::to_string(i + k));
      }
      cp = (cp << 6) | (cc & 0x3f);
    }
    static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff)) {
      throw Error("invalid UTF-8 codepoint at offset " + std::to_string(i));
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }
  return out;
}

bool IsUnicodeSpace(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case 0x85:
    case 0xa0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202f:
    case 0x205f:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200a;
  }
}

bool IsPunctuation(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) ||
           (c >= 0x5b && c <= 0x60) || (c >= 0x7b && c <= 0x7e);
  }
  switch (c) {
    case 0xa1:
    case 0xa7:
    case 0xab:
    case 0xb6:
    case 0xb7:
    case 0xbb:
    case 0xbf:
      return true;
    default:
      break;
  }
  return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205e) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x3008 && c <= 0x3011) ||
         (c >= 0xff01 && c <= 0xff0f);
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::size_t CodepointLength(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xc0) != 0x80) ++n;
  }
  return n;
}

bool IsWordToken(std::string_view token) {
  if (token.empty()) return false;
  for (char32_t c : DecodeUtf8(token)) {
    if (IsPunctuation(c) || IsUnicodeSpace(c)) return false;
  }
  return true;
}

bool IsModifiableWord(std::string_view token) {
  return IsWordToken(token) && CodepointLength(token) >= 3;
}

// --- Tokenization ----------------------------------------------------------

TokenizedText Tokenize(std::string_view text) {
  TokenizedText out;
  std::size_t i = 0;
  std::size_t word_begin = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (word_begin != std::string_view::npos) {
      out.tokens.emplace_back(text.substr(word_begin, end - word_begin));
      out.spans.push_back({word_begin, end});
      word_begin = std::string_view::npos;
    }
  };
  while (i < text.size()) {
    // Decode one codepoint to classify it; validity is checked by DecodeUtf8.
    unsigned char lead = static_cast<unsigned char>(text[i]);
    std::size_t len = lead < 0x80           ? 1
                      : (lead & 0xe0) == 0xc0 ? 2
                      : (lead & 0xf0) == 0xe0 ? 3
                      : (lead & 0xf8) == 0xf0 ? 4
                                              : 0;
    if (len == 0 || i + len > text.size()) {
      throw Error("invalid UTF-8 at offset " + std::to_string(i));
    }
    std::u32string cp = DecodeUtf8(text.substr(i, len));
    char32_t c = cp[0];
    if (IsUnicodeSpace(c)) {
      flush(i);
    } else if (IsPunctuation(c)) {
      flush(i);
      out.tokens.emplace_back(text.substr(i, len));
      out.spans.push_back({i, i + len});
    } else if (word_begin == std::string_view::npos) {
      word_begin = i;
    }
    i += len;
  }
  flush(text.size());
  return out;
}

std::string ReplaceTokens(std::string_view source, const TokenizedText& tokenized,
                          std::span<const std::string> replacements) {
  if (replacements.size() != tokenized.size()) {
    throw AlignmentError("ReplaceTokens: " + std::to_string(replacements.size()) +
                         " replacements for " +
                         std::to_string(tokenized.size()) + " tokens");
  }
  std::string out;
  out.reserve(source.size() + 16);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < tokenized.size(); ++i) {
    const Span& span = tokenized.spans[i];
    out.append(source.substr(cursor, span.begin - cursor));
    out.append(replacements[i]);
    cursor = span.end;
  }
  out.append(source.substr(cursor));
  return out;
}

std::string InsertBeforeToken(std::string_view source,
                              const TokenizedText& tokenized, std::size_t index,
                              std::string_view word) {
  std::size_t at = index < tokenized.size() ? tokenized.spans[index].begin
                                            : source.size();
  std::string out;
  out.reserve(source.size() + word.size() + 1);
  out.append(source.substr(0, at));
  if (index >= tokenized.size() && !out.empty() &&
      !IsUnicodeSpace(static_cast<unsigned char>(out.back()))) {
    out.push_back(' ');
  }
  out.append(word);
  if (index < tokenized.size()) out.push_back(' ');
  out.append(source.substr(at));
  return out;
}

// --- Distances -------------------------------------------------------------

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  std::u32string x = DecodeUtf8(a);
  std::u32string y = DecodeUtf8(b);
  if (x.size() < y.size()) std::swap(x, y);
  std::vector<std::size_t> prev(y.size() + 1);
  std::vector<std::size_t> curr(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      std::size_t substitute = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, substitute});
    }
    std::swap(prev, curr);
  }
  return prev[y.size()];
}

double PerturbationRate(const TokenizedText& original,
                        const TokenizedText& perturbed) {
  if (original.size() != perturbed.size()) {
    throw AlignmentError(
        "perturbation rate needs position-aligned token lists (" +
        std::to_string(original.size()) + " vs " +
        std::to_string(perturbed.size()) + " tokens); use levenshtein instead");
  }
  if (original.empty()) return 0.0;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (original.tokens[i] != perturbed.tokens[i]) ++changed;
  }
  return static_cast<double>(changed) / static_cast<double>(original.size());
}

// --- Dataset I/O -------------------------------------------------------------

namespace {

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

bool HasContent(std::string_view text) {
  for (char32_t c : DecodeUtf8(text)) {
    if (!IsUnicodeSpace(c)) return true;
  }
  return false;
}

void CheckLabel(std::string_view source, std::size_t line, long long label,
                std::optional<int> num_classes) {
  if (label < 0 || (num_classes && label >= *num_classes)) {
    throw ParseError(std::string(source), line,
                     "unknown label " + std::to_string(label));
  }
}

TextSample ParseJsonRecord(std::string_view source, std::size_t line,
                           std::string_view record,
                           std::optional<int> num_classes) {
  json obj;
  try {
    obj = json::parse(record);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source), line,
                     std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw ParseError(std::string(source), line, "record is not a JSON object");
  }
  auto text = obj.find("text");
  if (text == obj.end() || !text->is_string()) {
    throw ParseError(std::string(source), line, "missing string field 'text'");
  }
  TextSample sample;
  sample.text = text->get<std::string>();
  try {
    if (!HasContent(sample.text)) {
      throw ParseError(std::string(source), line, "empty text");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(source), line, e.what());
  }
  if (auto it = obj.find("id"); it != obj.end()) {
    if (it->is_string()) {
      sample.id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      sample.id = std::to_string(it->get<long long>());
    } else {
      throw ParseError(std::string(source), line, "field 'id' must be a string");
    }
  } else {
    sample.id = "line-" + std::to_string(line);
  }
  if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) {
      throw ParseError(std::string(source), line,
                       "unknown label " + it->dump());
    }
    long long label = it->get<long long>();
    CheckLabel(source, line, label, num_classes);
    sample.label = static_cast<int>(label);
  }
  if (auto it = obj.find("provenance"); it != obj.end()) {
    try {
      sample.provenance = ParseProvenance(it->get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string(source), line, e.what());
    }
  }
  if (auto it = obj.find("detector_label"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer() ||
        (it->get<long long>() != 0 && it->get<long long>() != 1)) {
      throw ParseError(std::string(source), line,
                       "detector_label must be 0 or 1");
    }
    sample.detector_label = it->get<int>();
  }
  if (auto it = obj.find("source_id"); it != obj.end() && it->is_string()) {
    sample.source_id = it->get<std::string>();
  }
  if (auto it = obj.find("flagged"); it != obj.end() && it->is_boolean()) {
    sample.flagged = it->get<bool>();
  }
  return sample;
}

TextSample ParseTsvRecord(std::string_view source, std::size_t line,
                          std::string_view record,
                          std::optional<int> num_classes) {
  std::size_t tab = record.find('\t');
  if (tab == std::string_view::npos) {
    throw ParseError(std::string(source), line,
                     "expected 'label<TAB>text'");
  }
  std::string_view label_field = record.substr(0, tab);
  TextSample sample;
  sample.text = std::string(record.substr(tab + 1));
  if (!sample.text.empty() && sample.text.back() == '\r') sample.text.pop_back();
  if (!HasContent(sample.text)) {
    throw ParseError(std::string(source), line, "empty text");
  }
  sample.id = "line-" + std::to_string(line);
  if (!label_field.empty()) {
    long long label = 0;
    std::size_t consumed = 0;
    try {
      label = std::stoll(std::string(label_field), &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != label_field.size()) {
      throw ParseError(std::string(source), line,
                       "unknown label '" + std::string(label_field) + "'");
    }
    CheckLabel(source, line, label, num_classes);
    sample.label = static_cast<int>(label);
  }
  return sample;
}

}  // namespace

Dataset ReadDataset(std::istream& in, DatasetFormat format,
                    std::string_view source_name,
                    std::optional<int> num_classes, Split split) {
  Dataset dataset;
  dataset.split = split;
  std::string line;
  std::size_t line_no = 0;
  int max_label = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    TextSample sample = format == DatasetFormat::kJsonl
                            ? ParseJsonRecord(source_name, line_no, line, num_classes)
                            : ParseTsvRecord(source_name, line_no, line, num_classes);
    if (sample.label) max_label = std::max(max_label, *sample.label);
    dataset.samples.push_back(std::move(sample));
  }
  dataset.num_classes = num_classes ? *num_classes : std::max(2, max_label + 1);
  return dataset;
}

Dataset LoadDataset(const std::filesystem::path& path, DatasetFormat format,
                    std::optional<int> num_classes, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");
  return ReadDataset(in, format, path.string(), num_classes, split);
}

void WriteDataset(std::ostream& out, const Dataset& dataset) {
  for (const TextSample& sample : dataset.samples) {
    ordered_json obj;
    obj["id"] = sample.id;
    obj["text"] = sample.text;
    obj["label"] = sample.label ? json(*sample.label) : json(nullptr);
    obj["provenance"] = std::string(ProvenanceName(sample.provenance));
    if (sample.detector_label) obj["detector_label"] = *sample.detector_label;
    if (!sample.source_id.empty()) obj["source_id"] = sample.source_id;
    if (sample.flagged) obj["flagged"] = true;
    out << obj.dump() << '\n';
  }
}

void SaveDataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write dataset '" + path.string() + "'");
  WriteDataset(out, dataset);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace textguard
