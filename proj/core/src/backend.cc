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

#include "httplib.h"
#include "json.hpp"
#include "textguard/errors.h"

namespace textguard {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view CapabilityName(Capability capability) {
  switch (capability) {
    case Capability::kPredict:
      return "predict";
    case Capability::kMlm:
      return "mlm";
    case Capability::kTranslate:
      return "translate";
  }
  return "predict";
}

FallbackPolicy ParseFallbackPolicy(std::string_view name) {
  if (name == "error") return FallbackPolicy::kError;
  if (name == "rule" || name == "rule_based") return FallbackPolicy::kRuleBased;
  throw ConfigError("unknown fallback policy '" + std::string(name) +
                    "' (expected rule or error)");
}

void BackendEndpoint::Validate() const {
  if (base_url.empty()) throw ConfigError("backend endpoint has no base URL");
  if (capabilities.empty()) {
    throw ConfigError("backend endpoint declares no capability");
  }
}

BackendEndpoint MakeEndpoint(std::string base_url, FallbackPolicy fallback) {
  BackendEndpoint endpoint;
  endpoint.base_url = std::move(base_url);
  endpoint.capabilities = {Capability::kPredict, Capability::kMlm,
                           Capability::kTranslate};
  endpoint.fallback = fallback;
  return endpoint;
}

namespace protocol {

namespace {

json ParseBody(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
}

}  // namespace

std::string EncodePredictRequest(std::span<const std::string> texts) {
  ordered_json body;
  body["texts"] = json::array();
  for (const std::string& t : texts) body["texts"].push_back(t);
  return body.dump();
}

std::vector<ProbDist> DecodePredictResponse(std::string_view body,
                                            std::size_t expected_rows) {
  json doc = ParseBody(body);
  if (!doc.is_object() || !doc.contains("probs") || !doc["probs"].is_array()) {
    throw ProtocolError("predict response lacks a 'probs' array");
  }
  const json& rows = doc["probs"];
  if (rows.size() != expected_rows) {
    throw ProtocolError("predict response has " + std::to_string(rows.size()) +
                        " rows for " + std::to_string(expected_rows) + " texts");
  }
  std::vector<ProbDist> out;
  out.reserve(rows.size());
  std::size_t width = 0;
  for (const json& row : rows) {
    if (!row.is_array() || row.empty()) {
      throw ProtocolError("predict row is not a non-empty array");
    }
    std::vector<double> probs;
    for (const json& p : row) {
      if (!p.is_number()) throw ProtocolError("predict row has a non-number");
      probs.push_back(p.get<double>());
    }
    if (width == 0) width = probs.size();
    if (probs.size() != width) {
      throw ProtocolError("predict rows have inconsistent class counts");
    }
    out.push_back(ProbDist::FromProbs(std::move(probs)));
  }
  return out;
}

std::string EncodeMlmRequest(std::string_view text,
                             std::span<const std::size_t> mask_indices,
                             int top_k) {
  ordered_json body;
  body["text"] = std::string(text);
  body["mask_indices"] = json::array();
  for (std::size_t i : mask_indices) body["mask_indices"].push_back(i);
  body["top_k"] = top_k;
  return body.dump();
}

std::vector<std::vector<std::string>> DecodeMlmResponse(
    std::string_view body, std::size_t expected_masks) {
  json doc = ParseBody(body);
  if (!doc.is_object() || !doc.contains("suggestions") ||
      !doc["suggestions"].is_array()) {
    throw ProtocolError("mlm response lacks a 'suggestions' array");
  }
  const json& rows = doc["suggestions"];
  if (rows.size() != expected_masks) {
    throw ProtocolError("mlm response has " + std::to_string(rows.size()) +
                        " rows for " + std::to_string(expected_masks) + " masks");
  }
  std::vector<std::vector<std::string>> out;
  for (const json& row : rows) {
    if (!row.is_array()) throw ProtocolError("mlm row is not an array");
    std::vector<std::string> suggestions;
    for (const json& s : row) {
      if (!s.is_string()) throw ProtocolError("mlm suggestion is not a string");
      suggestions.push_back(s.get<std::string>());
    }
    out.push_back(std::move(suggestions));
  }
  return out;
}

std::string EncodeTranslateRequest(std::string_view text, std::string_view pivot) {
  ordered_json body;
  body["text"] = std::string(text);
  body["pivot"] = std::string(pivot);
  return body.dump();
}

std::string DecodeTranslateResponse(std::string_view body) {
  json doc = ParseBody(body);
  if (!doc.is_object() || !doc.contains("text") || !doc["text"].is_string()) {
    throw ProtocolError("translate response lacks a 'text' string");
  }
  return doc["text"].get<std::string>();
}

}  // namespace protocol

namespace {

std::string Post(const BackendEndpoint& endpoint, const std::string& path,
                 const std::string& body) {
  httplib::Client client(endpoint.base_url);
  if (!client.is_valid()) {
    throw TransportError("invalid backend URL '" + endpoint.base_url + "'");
  }
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      endpoint.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  auto result = client.Post(path, body, "application/json");
  if (!result) {
    throw TransportError("request to " + endpoint.base_url + path + " failed: " +
                         httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw TransportError("request to " + endpoint.base_url + path +
                         " returned HTTP " + std::to_string(result->status));
  }
  return result->body;
}

void Require(const BackendEndpoint& endpoint, Capability capability) {
  if (!endpoint.Supports(capability)) {
    throw ConfigError("backend " + endpoint.base_url + " does not declare '" +
                      std::string(CapabilityName(capability)) + "'");
  }
}

}  // namespace

std::vector<ProbDist> RemotePredict(const BackendEndpoint& endpoint,
                                    std::span<const std::string> texts) {
  Require(endpoint, Capability::kPredict);
  if (texts.empty()) return {};
  std::string body = Post(endpoint, "/v1/predict",
                          protocol::EncodePredictRequest(texts));
  return protocol::DecodePredictResponse(body, texts.size());
}

std::vector<std::vector<std::string>> RemoteMlm(
    const BackendEndpoint& endpoint, std::string_view text,
    std::span<const std::size_t> mask_indices, int top_k) {
  Require(endpoint, Capability::kMlm);
  if (top_k < 1) throw ConfigError("mlm top_k must be >= 1");
  std::string body = Post(endpoint, "/v1/mlm",
                          protocol::EncodeMlmRequest(text, mask_indices, top_k));
  return protocol::DecodeMlmResponse(body, mask_indices.size());
}

std::string RemoteTranslate(const BackendEndpoint& endpoint,
                            std::string_view text, std::string_view pivot) {
  Require(endpoint, Capability::kTranslate);
  std::string body = Post(endpoint, "/v1/translate",
                          protocol::EncodeTranslateRequest(text, pivot));
  return protocol::DecodeTranslateResponse(body);
}

RemoteClassifier::RemoteClassifier(BackendEndpoint endpoint, int num_classes)
    : endpoint_(std::move(endpoint)), num_classes_(num_classes) {
  endpoint_.Validate();
  Require(endpoint_, Capability::kPredict);
}

ProbDist RemoteClassifier::Predict(std::string_view text) const {
  std::string owned(text);
  std::vector<ProbDist> result = RemotePredict(endpoint_, std::span(&owned, 1));
  if (static_cast<int>(result[0].size()) != num_classes_) {
    throw ProtocolError("backend returned " + std::to_string(result[0].size()) +
                        " classes, expected " + std::to_string(num_classes_));
  }
  return result[0];
}

std::vector<ProbDist> RemoteClassifier::PredictBatch(
    std::span<const std::string> texts) const {
  std::vector<ProbDist> result = RemotePredict(endpoint_, texts);
  for (const ProbDist& row : result) {
    if (static_cast<int>(row.size()) != num_classes_) {
      throw ProtocolError("backend returned the wrong class count");
    }
  }
  return result;
}

}  // namespace textguard
