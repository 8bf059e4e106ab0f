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

// Run configuration: which completion provider to use and with what
// parameters, plus synthesis settings. Loaded from a JSON file that may
// carry // and /* */ comments.

#ifndef NL2MILP_IO_CONFIG_H_
#define NL2MILP_IO_CONFIG_H_

#include <memory>
#include <string>
#include <vector>

#include "core/ir.h"
#include "json.hpp"
#include "llm/gateway.h"
#include "llm/provider.h"

namespace nl2milp {

enum class ProviderKind { kStub, kHttp, kReplay };

const char* provider_kind_name(ProviderKind kind);

// Inverse of provider_kind_name; throws kSchemaError on unknown names.
ProviderKind provider_kind_from_name(const std::string& name);

struct RunConfig {
  ProviderKind provider = ProviderKind::kStub;
  ProviderConfig provider_config;
  double big_m = kDefaultBigM;
  std::string transcript;         // Transcript to write; empty disables it.
  std::string replay_transcript;  // Transcript the replay provider serves.
  std::vector<std::string> stub_instances;  // Instance files backing the stub.
};

// Builds a RunConfig from a parsed document. Unknown keys are rejected with
// kSchemaError so a typo never silently falls back to a default. Relative
// paths in `transcript`, `replay_transcript`, and `stub_instances` are
// resolved against `base_dir` when it is non-empty.
RunConfig config_from_json(const nlohmann::json& doc,
                           const std::string& base_dir = "");

// Reads and parses a config file (comments allowed); relative paths inside
// are resolved against the file's directory. Throws kIoError / kSchemaError.
RunConfig load_config(const std::string& path);

// Instantiates the configured provider: a stub seeded with the configured
// instance files, an HTTP client, or a replayer of the configured
// transcript.
std::shared_ptr<Provider> make_provider(const RunConfig& config);

// Provider plus gateway in one step, wiring in transcript capture.
std::unique_ptr<Gateway> make_gateway(const RunConfig& config);

}  // namespace nl2milp

#endif  // NL2MILP_IO_CONFIG_H_
