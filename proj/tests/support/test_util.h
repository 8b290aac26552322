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

// Shared fixtures for the unit and acceptance tests.

#ifndef TEXTGUARD_TESTS_SUPPORT_TEST_UTIL_H_
#define TEXTGUARD_TESTS_SUPPORT_TEST_UTIL_H_

#include <atomic>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/classifier.h"
#include "textguard/corpus.h"
#include "textguard/lexicon.h"

namespace textguard::testing {

// 20 samples; class 1 iff the text contains the word "marker".
Dataset MarkerCorpus();

// Trains a classifier on MarkerCorpus() that separates it perfectly.
ClassifierModel TrainMarkerModel(std::uint64_t seed = 7);

// Thesaurus mapping "marker" to a non-marker synonym, plus a few
// unrelated entries.
Thesaurus MarkerThesaurus();

// Returns the uniform distribution regardless of input.
class ConstantClassifier : public TextClassifier {
 public:
  explicit ConstantClassifier(int num_classes = 2) : num_classes_(num_classes) {}
  ProbDist Predict(std::string_view) const override {
    return ProbDist::Uniform(num_classes_);
  }
  int num_classes() const override { return num_classes_; }

 private:
  int num_classes_;
};

// Forwards to another classifier and counts Predict calls.
class CountingClassifier : public TextClassifier {
 public:
  explicit CountingClassifier(const TextClassifier& inner) : inner_(inner) {}
  ProbDist Predict(std::string_view text) const override {
    ++calls_;
    return inner_.Predict(text);
  }
  int num_classes() const override { return inner_.num_classes(); }
  std::size_t calls() const { return calls_; }

 private:
  const TextClassifier& inner_;
  mutable std::atomic<std::size_t> calls_{0};
};

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Directory holding the checked-in fixtures.
std::filesystem::path FixtureDir();

}  // namespace textguard::testing

#endif  // TEXTGUARD_TESTS_SUPPORT_TEST_UTIL_H_
