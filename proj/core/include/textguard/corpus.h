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

// Text samples, tokenization, dataset files and string distances.

#ifndef TEXTGUARD_CORPUS_H_
#define TEXTGUARD_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace textguard {

enum class Provenance { kOriginal, kArtificial, kAdversarial, kTransformed, kAugmented };

std::string_view ProvenanceName(Provenance provenance);
Provenance ParseProvenance(std::string_view name);

struct TextSample {
  std::string id;
  std::string text;
  std::optional<int> label;
  Provenance provenance = Provenance::kOriginal;

  // Set on detector training/evaluation data: 1 = non-natural, 0 = natural.
  std::optional<int> detector_label;
  // Id of the sample this one was derived from; empty for originals.
  std::string source_id;
  // Marks derived samples that did not meet their generator's acceptance
  // rule (e.g. exhausted augmentation attempts).
  bool flagged = false;
};

// Byte range [begin, end) into the tokenized source string.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct TokenizedText {
  std::vector<std::string> tokens;
  std::vector<Span> spans;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

enum class Split { kTrain, kTest };

struct Dataset {
  std::vector<TextSample> samples;
  int num_classes = 2;
  Split split = Split::kTrain;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

enum class DatasetFormat { kJsonl, kTsv };

DatasetFormat ParseDatasetFormat(std::string_view name);

// --- UTF-8 helpers -------------------------------------------------------

// Decodes UTF-8; throws textguard::Error on malformed input.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
bool IsUnicodeSpace(char32_t c);
bool IsPunctuation(char32_t c);

// ASCII-only lowercasing; other bytes pass through.
std::string AsciiLower(std::string_view text);

// Number of codepoints.
std::size_t CodepointLength(std::string_view text);

// True for tokens made only of letters/digits (no punctuation).
bool IsWordToken(std::string_view token);

// Word tokens with at least three codepoints; shorter words are treated as
// stopword-like and never modified.
bool IsModifiableWord(std::string_view token);

// --- Tokenization --------------------------------------------------------

// Splits on Unicode whitespace; every punctuation codepoint becomes its own
// token. Case is preserved.
TokenizedText Tokenize(std::string_view text);

// Rebuilds `source` with token i replaced by replacements[i], keeping all
// inter-token characters. replacements.size() must equal tokenized.size().
std::string ReplaceTokens(std::string_view source, const TokenizedText& tokenized,
                          std::span<const std::string> replacements);

// Inserts `word` followed by a space in front of token `index`.
std::string InsertBeforeToken(std::string_view source,
                              const TokenizedText& tokenized, std::size_t index,
                              std::string_view word);

// --- Distances -----------------------------------------------------------

// Edit distance over codepoints.
std::size_t Levenshtein(std::string_view a, std::string_view b);

// Fraction of positions whose tokens differ. Throws AlignmentError when the
// token counts differ; empty lists give 0.
double PerturbationRate(const TokenizedText& original,
                        const TokenizedText& perturbed);

// --- Dataset I/O ---------------------------------------------------------

// Loads a dataset. With `num_classes` set, labels outside [0, num_classes)
// are rejected; otherwise num_classes = max(2, max label + 1).
Dataset LoadDataset(const std::filesystem::path& path, DatasetFormat format,
                    std::optional<int> num_classes = std::nullopt,
                    Split split = Split::kTrain);
Dataset ReadDataset(std::istream& in, DatasetFormat format,
                    std::string_view source_name,
                    std::optional<int> num_classes = std::nullopt,
                    Split split = Split::kTrain);

// Writes JSONL with a fixed key order: id, text, label, provenance, then the
// optional detector_label, source_id and flagged keys.
void SaveDataset(const std::filesystem::path& path, const Dataset& dataset);
void WriteDataset(std::ostream& out, const Dataset& dataset);

}  // namespace textguard

#endif  // TEXTGUARD_CORPUS_H_
