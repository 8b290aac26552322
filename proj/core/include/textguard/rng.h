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

#ifndef TEXTGUARD_RNG_H_
#define TEXTGUARD_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace textguard {

// 64-bit FNV-1a. `basis` lets callers chain several fields into one hash.
inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t basis = kFnvOffsetBasis);

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t MixSeed(std::uint64_t x);

// Every random stream in the toolkit is derived from one root seed as
// DeriveSeed(root, scope, key), e.g. (run_seed, "perturb", sample.id).
std::uint64_t DeriveSeed(std::uint64_t root, std::string_view scope,
                         std::string_view key = {});
std::uint64_t DeriveSeed(std::uint64_t root, std::string_view scope,
                         std::string_view key, std::uint64_t index);

// Platform-stable random source. std::mt19937_64 output is fixed by the
// standard, but the std distributions are not, so sampling is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t Uniform(std::uint64_t n);

  // Uniform double in [0, 1) with 53 bits of precision.
  double UniformDouble();

  bool Bernoulli(double p) { return UniformDouble() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Uniform(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), in draw order. Requires k <= n.
  std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k);

  // Index drawn proportionally to non-negative `weights`.
  std::size_t Categorical(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace textguard

#endif  // TEXTGUARD_RNG_H_
