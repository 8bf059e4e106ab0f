// Copyright 2026 The nl2milp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "llm/http_provider.h"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace nl2milp {

namespace {

ErrorCode code_for_transport(httplib::Error error) {
  switch (error) {
    case httplib::Error::ConnectionTimeout:
    case httplib::Error::Read:
    case httplib::Error::Write:
      return ErrorCode::kProviderTimeout;
    default:
      return ErrorCode::kProviderUnavailable;
  }
}

std::string body_snippet(const std::string& body) {
  constexpr size_t kMax = 200;
  if (body.size() <= kMax) return body;
  return body.substr(0, kMax) + "...";
}

}  // namespace

HttpProvider::HttpProvider(ProviderConfig config)
    : config_(std::move(config)) {
  const std::string& endpoint = config_.endpoint;
  const std::string prefix = "http://";
  if (endpoint.rfind("https://", 0) == 0) {
    throw Error(ErrorCode::kProviderRejected,
                "https endpoints are not supported by this build; use a "
                "plain-http endpoint or a local proxy");
  }
  if (endpoint.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "endpoint must start with http://: " + endpoint);
  }
  const size_t slash = endpoint.find('/', prefix.size());
  if (slash == std::string::npos) {
    base_ = endpoint;
    path_ = "/";
  } else {
    base_ = endpoint.substr(0, slash);
    path_ = endpoint.substr(slash);
  }
  if (base_.size() == prefix.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "endpoint has no host: " + endpoint);
  }
}

std::string HttpProvider::complete_once(const std::string& prompt) {
  httplib::Headers headers;
  if (!config_.credential_env.empty()) {
    const char* credential = std::getenv(config_.credential_env.c_str());
    if (credential == nullptr || *credential == '\0') {
      throw Error(ErrorCode::kProviderRejected,
                  "credential environment variable " + config_.credential_env +
                      " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + credential);
  }

  nlohmann::ordered_json body;
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_reply_tokens;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "user"}, {"content", prompt}}});

  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);

  httplib::Result result =
      client.Post(path_, headers, body.dump(), "application/json");
  if (!result) {
    throw Error(code_for_transport(result.error()),
                "transport failure: " + httplib::to_string(result.error()));
  }
  if (result->status == 429 || result->status >= 500) {
    throw Error(ErrorCode::kProviderUnavailable,
                "HTTP " + std::to_string(result->status) + ": " +
                    body_snippet(result->body));
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kProviderRejected,
                "HTTP " + std::to_string(result->status) + ": " +
                    body_snippet(result->body));
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                std::string("response is not JSON: ") + e.what());
  }
  try {
    return doc.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kSchemaError,
                "response lacks choices[0].message.content: " +
                    body_snippet(result->body));
  }
}

}  // namespace nl2milp
