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

#ifndef NL2MILP_LLM_PROVIDER_H_
#define NL2MILP_LLM_PROVIDER_H_

#include <string>

#include "core/error.h"

namespace nl2milp {

// Connection and retry settings for a completion backend. Fields that do not
// apply to a given provider (e.g. endpoint for the offline stub) are ignored.
struct ProviderConfig {
  std::string endpoint;
  std::string model;
  // Name of the environment variable holding the API credential; empty means
  // no credential is sent.
  std::string credential_env;
  double temperature = 0.0;
  int max_reply_tokens = 256;
  // Retries after the first attempt, applied only to transient failures
  // (provider unavailable or timed out).
  int retries = 3;
  // Sleep before retry k is backoff_base_ms * 2^(k-1); zero disables sleeping.
  int backoff_base_ms = 0;
  // Maximum in-flight completions across all threads using one gateway.
  int concurrency = 4;
  int timeout_seconds = 60;
};

// A completion backend: one prompt in, one reply out. Implementations throw
// Error with a provider error code on failure; the gateway layers retry,
// concurrency limiting, and transcript capture on top. complete_once() may be
// called from several threads at once.
class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string name() const = 0;
  virtual std::string complete_once(const std::string& prompt) = 0;
};

}  // namespace nl2milp

#endif  // NL2MILP_LLM_PROVIDER_H_
