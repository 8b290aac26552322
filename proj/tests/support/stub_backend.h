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

// In-process stand-in for the model sidecar, speaking the backend wire
// protocol on a loopback port. Outputs follow the documented stub contract:
// predict returns the uniform distribution, mlm looks words up in a fixed
// dictionary, translate reverses the word order behind a pivot marker.

#ifndef TEXTGUARD_TESTS_SUPPORT_STUB_BACKEND_H_
#define TEXTGUARD_TESTS_SUPPORT_STUB_BACKEND_H_

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "textguard/backend.h"

namespace httplib {
class Server;
}

namespace textguard::testing {

enum class PredictMode {
  kUniform,
  kBadSum,      // first row sums to 0.8
  kWrongArity,  // one row fewer than requested
};

struct StubOptions {
  int num_classes = 2;
  PredictMode predict_mode = PredictMode::kUniform;
  // Suggestions for a masked word, most likely first; words not listed get
  // default_suggestions. Lists are padded from default_suggestions to top_k.
  std::map<std::string, std::vector<std::string>> mlm_dictionary;
  std::vector<std::string> default_suggestions{"great", "fine", "solid",
                                               "decent", "lovely"};
  bool predict_enabled = true;
  bool mlm_enabled = true;
  bool translate_enabled = true;
  std::chrono::milliseconds delay{0};
};

class StubBackend {
 public:
  explicit StubBackend(StubOptions options = {});
  ~StubBackend();
  StubBackend(const StubBackend&) = delete;
  StubBackend& operator=(const StubBackend&) = delete;

  std::string url() const;
  int port() const { return port_; }
  BackendEndpoint Endpoint(FallbackPolicy fallback = FallbackPolicy::kError) const;

  std::size_t requests(const std::string& path) const;

  // Stub response bodies, exposed for golden comparisons.
  static std::string TranslateText(std::string_view text, std::string_view pivot);

 private:
  StubOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  mutable std::mutex mu_;
  std::map<std::string, std::size_t> counts_;
};

// Port with nothing listening, for transport-failure tests.
std::string DeadUrl();

}  // namespace textguard::testing

#endif  // TEXTGUARD_TESTS_SUPPORT_STUB_BACKEND_H_
