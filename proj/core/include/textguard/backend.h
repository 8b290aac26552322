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

// Client side of the model-backend wire protocol (JSON over HTTP):
//   POST /v1/predict   {"texts":[...]}                         -> {"probs":[[...],...]}
//   POST /v1/mlm       {"text":"...","mask_indices":[...],"top_k":K}
//                                                              -> {"suggestions":[[...],...]}
//   POST /v1/translate {"text":"...","pivot":"de"}              -> {"text":"..."}
// mask_indices are token indices into Tokenize(text).

#ifndef TEXTGUARD_BACKEND_H_
#define TEXTGUARD_BACKEND_H_

#include <chrono>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textguard/classifier.h"

namespace textguard {

enum class Capability { kPredict, kMlm, kTranslate };
enum class FallbackPolicy { kError, kRuleBased };

std::string_view CapabilityName(Capability capability);
FallbackPolicy ParseFallbackPolicy(std::string_view name);  // "error" | "rule"

struct BackendEndpoint {
  std::string base_url;  // e.g. "http://127.0.0.1:8500"
  std::set<Capability> capabilities;
  std::chrono::milliseconds timeout{5000};
  FallbackPolicy fallback = FallbackPolicy::kRuleBased;

  bool Supports(Capability capability) const {
    return capabilities.count(capability) > 0;
  }
  // Throws ConfigError for an empty URL or no declared capability.
  void Validate() const;
};

// Endpoint declaring all three capabilities.
BackendEndpoint MakeEndpoint(std::string base_url,
                             FallbackPolicy fallback = FallbackPolicy::kRuleBased);

// Pure encoders/decoders for the wire format; decoding failures throw
// ProtocolError.
namespace protocol {
std::string EncodePredictRequest(std::span<const std::string> texts);
std::vector<ProbDist> DecodePredictResponse(std::string_view body,
                                            std::size_t expected_rows);
std::string EncodeMlmRequest(std::string_view text,
                             std::span<const std::size_t> mask_indices,
                             int top_k);
std::vector<std::vector<std::string>> DecodeMlmResponse(
    std::string_view body, std::size_t expected_masks);
std::string EncodeTranslateRequest(std::string_view text, std::string_view pivot);
std::string DecodeTranslateResponse(std::string_view body);
}  // namespace protocol

// One distribution per input, in request order. There is no fallback for
// prediction: transport failures raise TransportError and malformed or
// non-normalised rows raise ProtocolError.
std::vector<ProbDist> RemotePredict(const BackendEndpoint& endpoint,
                                    std::span<const std::string> texts);

// Ranked suggestions per masked token index.
std::vector<std::vector<std::string>> RemoteMlm(
    const BackendEndpoint& endpoint, std::string_view text,
    std::span<const std::size_t> mask_indices, int top_k);

std::string RemoteTranslate(const BackendEndpoint& endpoint,
                            std::string_view text, std::string_view pivot);

// TextClassifier backed by /v1/predict.
class RemoteClassifier : public TextClassifier {
 public:
  RemoteClassifier(BackendEndpoint endpoint, int num_classes);

  ProbDist Predict(std::string_view text) const override;
  std::vector<ProbDist> PredictBatch(
      std::span<const std::string> texts) const override;
  int num_classes() const override { return num_classes_; }

 private:
  BackendEndpoint endpoint_;
  int num_classes_;
};

}  // namespace textguard

#endif  // TEXTGUARD_BACKEND_H_
