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

#include "io/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "io/serialize.h"
#include "llm/http_provider.h"
#include "llm/replay_provider.h"
#include "llm/stub_provider.h"

namespace nl2milp {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "provider",       "endpoint",       "model",
    "credential_env", "temperature",    "max_reply_tokens",
    "retries",        "backoff_base_ms", "concurrency",
    "timeout_seconds", "big_m",          "transcript",
    "replay_transcript", "stub_instances",
};

std::string get_string(const json& doc, const char* key,
                       const std::string& fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_string()) {
    throw Error(ErrorCode::kSchemaError,
                std::string("config \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

double get_number(const json& doc, const char* key, double fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number()) {
    throw Error(ErrorCode::kSchemaError,
                std::string("config \"") + key + "\" must be a number");
  }
  return it->get<double>();
}

int get_int(const json& doc, const char* key, int fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer()) {
    throw Error(ErrorCode::kSchemaError,
                std::string("config \"") + key + "\" must be an integer");
  }
  return it->get<int>();
}

void require_range(bool ok, const char* key, const char* requirement) {
  if (!ok) {
    throw Error(ErrorCode::kSchemaError, std::string("config \"") + key +
                                             "\" must be " + requirement);
  }
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

const char* provider_kind_name(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kStub:
      return "stub";
    case ProviderKind::kHttp:
      return "http";
    case ProviderKind::kReplay:
      return "replay";
  }
  return "unknown";
}

ProviderKind provider_kind_from_name(const std::string& name) {
  if (name == "stub") return ProviderKind::kStub;
  if (name == "http") return ProviderKind::kHttp;
  if (name == "replay") return ProviderKind::kReplay;
  throw Error(ErrorCode::kSchemaError,
              "provider must be \"stub\", \"http\", or \"replay\", got \"" +
                  name + "\"");
}

RunConfig config_from_json(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, "config must be a JSON object");
  }
  for (const auto& item : doc.items()) {
    if (kKnownKeys.find(item.key()) == kKnownKeys.end()) {
      throw Error(ErrorCode::kSchemaError,
                  "unknown config key \"" + item.key() + "\"");
    }
  }
  RunConfig config;
  const auto provider = doc.find("provider");
  if (provider == doc.end() || !provider->is_string()) {
    throw Error(ErrorCode::kSchemaError,
                "config needs a string \"provider\" key");
  }
  config.provider = provider_kind_from_name(provider->get<std::string>());

  ProviderConfig& pc = config.provider_config;
  pc.endpoint = get_string(doc, "endpoint", pc.endpoint);
  pc.model = get_string(doc, "model", pc.model);
  pc.credential_env = get_string(doc, "credential_env", pc.credential_env);
  pc.temperature = get_number(doc, "temperature", pc.temperature);
  pc.max_reply_tokens = get_int(doc, "max_reply_tokens", pc.max_reply_tokens);
  pc.retries = get_int(doc, "retries", pc.retries);
  pc.backoff_base_ms = get_int(doc, "backoff_base_ms", pc.backoff_base_ms);
  pc.concurrency = get_int(doc, "concurrency", pc.concurrency);
  pc.timeout_seconds = get_int(doc, "timeout_seconds", pc.timeout_seconds);
  require_range(pc.temperature >= 0.0, "temperature", "non-negative");
  require_range(pc.max_reply_tokens >= 1, "max_reply_tokens", "positive");
  require_range(pc.retries >= 0, "retries", "non-negative");
  require_range(pc.backoff_base_ms >= 0, "backoff_base_ms", "non-negative");
  require_range(pc.concurrency >= 1, "concurrency", "positive");
  require_range(pc.timeout_seconds >= 1, "timeout_seconds", "positive");

  config.big_m = get_number(doc, "big_m", config.big_m);
  require_range(config.big_m > 0.0, "big_m", "positive");
  config.transcript =
      resolve_path(get_string(doc, "transcript", ""), base_dir);
  config.replay_transcript =
      resolve_path(get_string(doc, "replay_transcript", ""), base_dir);
  const auto instances = doc.find("stub_instances");
  if (instances != doc.end()) {
    if (!instances->is_array()) {
      throw Error(ErrorCode::kSchemaError,
                  "config \"stub_instances\" must be an array");
    }
    for (const json& entry : *instances) {
      if (!entry.is_string()) {
        throw Error(ErrorCode::kSchemaError,
                    "config \"stub_instances\" must contain strings");
      }
      config.stub_instances.push_back(
          resolve_path(entry.get<std::string>(), base_dir));
    }
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "failed reading " + path);
  const json doc = json::parse(buffer.str(), nullptr,
                               /*allow_exceptions=*/false,
                               /*ignore_comments=*/true);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kSchemaError, path + " is not valid JSON");
  }
  return config_from_json(doc,
                          std::filesystem::path(path).parent_path().string());
}

std::shared_ptr<Provider> make_provider(const RunConfig& config) {
  switch (config.provider) {
    case ProviderKind::kStub: {
      auto stub = std::make_shared<StubProvider>();
      for (const std::string& path : config.stub_instances) {
        stub->register_instance(load_instance(path));
      }
      return stub;
    }
    case ProviderKind::kHttp:
      return std::make_shared<HttpProvider>(config.provider_config);
    case ProviderKind::kReplay:
      if (config.replay_transcript.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "replay provider needs \"replay_transcript\"");
      }
      return std::make_shared<ReplayProvider>(config.replay_transcript);
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled provider kind");
}

std::unique_ptr<Gateway> make_gateway(const RunConfig& config) {
  return std::make_unique<Gateway>(make_provider(config),
                                   config.provider_config, config.transcript);
}

}  // namespace nl2milp
