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

#include "textguard/backend.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "stub_backend.h"
#include "test_util.h"
#include "textguard/errors.h"

namespace textguard {
namespace {

using testing::FixtureDir;
using testing::ReadFile;
using testing::StubBackend;
using testing::StubOptions;

std::string Fixture(const std::string& name) {
  std::string body = ReadFile(FixtureDir() / "protocol" / name);
  while (!body.empty() && body.back() == '\n') body.pop_back();
  return body;
}

TEST(ProtocolTest, RequestsMatchGoldenFixtures) {
  const std::vector<std::string> texts = {"a good film", "a dull film"};
  EXPECT_EQ(protocol::EncodePredictRequest(texts), Fixture("predict_request.json"));
  const std::vector<std::size_t> masks = {3};
  EXPECT_EQ(protocol::EncodeMlmRequest("the movie was good", masks, 3),
            Fixture("mlm_request.json"));
  EXPECT_EQ(protocol::EncodeTranslateRequest("the movie was good", "de"),
            Fixture("translate_request.json"));
}

TEST(ProtocolTest, GoldenResponsesDecode) {
  auto probs = protocol::DecodePredictResponse(Fixture("predict_response.json"), 2);
  ASSERT_EQ(probs.size(), 2u);
  EXPECT_DOUBLE_EQ(probs[1][0], 0.5);
  auto suggestions = protocol::DecodeMlmResponse(Fixture("mlm_response.json"), 1);
  EXPECT_EQ(suggestions[0], (std::vector<std::string>{"great", "fine", "solid"}));
  EXPECT_EQ(protocol::DecodeTranslateResponse(Fixture("translate_response.json")),
            "[rt:de] good was movie the");
}

TEST(ProtocolTest, RejectsMalformedResponses) {
  EXPECT_THROW(protocol::DecodePredictResponse("{\"probs\":[[0.4,0.4]]}", 1), ProtocolError);
  EXPECT_THROW(protocol::DecodePredictResponse("{\"probs\":[[0.5,0.5]]}", 2), ProtocolError);
  EXPECT_THROW(protocol::DecodePredictResponse("{\"probs\":[[0.5,0.5],[1.0]]}", 2),
               ProtocolError);
  EXPECT_THROW(protocol::DecodePredictResponse("not json", 1), ProtocolError);
  EXPECT_THROW(protocol::DecodeMlmResponse("{\"suggestions\":[[1]]}", 1), ProtocolError);
  EXPECT_THROW(protocol::DecodeTranslateResponse("{\"txt\":\"x\"}"), ProtocolError);
}

TEST(RemoteBackendTest, PredictReturnsOneRowPerText) {
  StubBackend stub;
  const std::vector<std::string> texts = {"a", "b"};
  std::vector<ProbDist> rows = RemotePredict(stub.Endpoint(), texts);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0][0], 0.5);
  EXPECT_EQ(stub.requests("/v1/predict"), 1u);
}

TEST(RemoteBackendTest, StubRepliesMatchGoldenBytes) {
  StubBackend stub;
  const std::vector<std::string> texts = {"a good film", "a dull film"};
  auto rows = RemotePredict(stub.Endpoint(), texts);
  EXPECT_EQ(rows, protocol::DecodePredictResponse(Fixture("predict_response.json"), 2));
  const std::vector<std::size_t> masks = {3};
  EXPECT_EQ(RemoteMlm(stub.Endpoint(), "the movie was good", masks, 3),
            protocol::DecodeMlmResponse(Fixture("mlm_response.json"), 1));
  EXPECT_EQ(RemoteTranslate(stub.Endpoint(), "the movie was good", "de"),
            protocol::DecodeTranslateResponse(Fixture("translate_response.json")));
}

TEST(RemoteBackendTest, MlmReturnsTopKPerMask) {
  StubBackend stub;
  const std::vector<std::size_t> masks = {0, 2};
  auto rows = RemoteMlm(stub.Endpoint(), "one two three", masks, 3);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) EXPECT_EQ(row.size(), 3u);
}

TEST(RemoteBackendTest, UnnormalisedRowIsProtocolError) {
  StubOptions options;
  options.predict_mode = testing::PredictMode::kBadSum;
  StubBackend stub(options);
  const std::vector<std::string> texts = {"a", "b"};
  EXPECT_THROW(RemotePredict(stub.Endpoint(), texts), ProtocolError);
}

TEST(RemoteBackendTest, WrongArityIsProtocolError) {
  StubOptions options;
  options.predict_mode = testing::PredictMode::kWrongArity;
  StubBackend stub(options);
  const std::vector<std::string> texts = {"a", "b"};
  EXPECT_THROW(RemotePredict(stub.Endpoint(), texts), ProtocolError);
}

TEST(RemoteBackendTest, TransportFailureIsErrorEvenWithRuleFallback) {
  BackendEndpoint endpoint = MakeEndpoint(testing::DeadUrl(), FallbackPolicy::kRuleBased);
  endpoint.timeout = std::chrono::milliseconds(500);
  const std::vector<std::string> texts = {"a"};
  EXPECT_THROW(RemotePredict(endpoint, texts), TransportError);
}

TEST(RemoteBackendTest, TimeoutIsTransportError) {
  StubOptions options;
  options.delay = std::chrono::milliseconds(800);
  StubBackend stub(options);
  BackendEndpoint endpoint = stub.Endpoint();
  endpoint.timeout = std::chrono::milliseconds(200);
  const std::vector<std::string> texts = {"a"};
  EXPECT_THROW(RemotePredict(endpoint, texts), TransportError);
}

TEST(RemoteBackendTest, NotImplementedIsTransportError) {
  StubOptions options;
  options.predict_enabled = false;
  StubBackend stub(options);
  const std::vector<std::string> texts = {"a"};
  EXPECT_THROW(RemotePredict(stub.Endpoint(), texts), TransportError);
}

TEST(RemoteBackendTest, UndeclaredCapabilityIsConfigError) {
  StubBackend stub;
  BackendEndpoint endpoint = stub.Endpoint();
  endpoint.capabilities = {Capability::kMlm};
  const std::vector<std::string> texts = {"a"};
  EXPECT_THROW(RemotePredict(endpoint, texts), ConfigError);
}

TEST(RemoteClassifierTest, ActsAsTextClassifier) {
  StubBackend stub;
  RemoteClassifier classifier(stub.Endpoint(), 2);
  ProbDist p = classifier.Predict("hello");
  EXPECT_DOUBLE_EQ(p[1], 0.5);
  const std::vector<std::string> texts = {"x", "y", "z"};
  EXPECT_EQ(classifier.PredictBatch(texts).size(), 3u);
  EXPECT_EQ(stub.requests("/v1/predict"), 2u);
}

TEST(RemoteClassifierTest, ClassCountMismatchIsProtocolError) {
  StubBackend stub;
  RemoteClassifier classifier(stub.Endpoint(), 3);
  EXPECT_THROW(classifier.Predict("hello"), ProtocolError);
}

}  // namespace
}  // namespace textguard
