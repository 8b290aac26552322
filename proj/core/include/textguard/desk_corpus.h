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

// Synthetic two-class movie-review corpus with a matching ranked thesaurus,
// small enough to train and attack in seconds.

#ifndef TEXTGUARD_DESK_CORPUS_H_
#define TEXTGUARD_DESK_CORPUS_H_

#include <cstddef>
#include <cstdint>

#include "textguard/corpus.h"
#include "textguard/lexicon.h"

namespace textguard {

struct DeskCorpusConfig {
  std::size_t train_size = 2000;
  std::size_t test_size = 500;
  // Probability that a word slot uses one of its uncommon synonyms.
  double rare_rate = 0.04;
  // Probability of an extra cue of the opposite sentiment.
  double mixed_rate = 0.35;
  double label_noise = 0.04;
  std::uint64_t seed = 1;
};

struct DeskCorpus {
  Dataset train;
  Dataset test;
  // Every word group ranked common-first; the second half of each group's
  // uncommon words never occurs in the generated text.
  Thesaurus thesaurus;
};

DeskCorpus GenerateDeskCorpus(const DeskCorpusConfig& config = {});

}  // namespace textguard

#endif  // TEXTGUARD_DESK_CORPUS_H_
