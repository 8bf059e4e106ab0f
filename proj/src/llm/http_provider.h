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

#ifndef NL2MILP_LLM_HTTP_PROVIDER_H_
#define NL2MILP_LLM_HTTP_PROVIDER_H_

#include <string>

#include "llm/provider.h"

namespace nl2milp {

// Chat-completions HTTP backend. Sends
//   {"model", "temperature", "max_tokens",
//    "messages": [{"role": "user", "content": <prompt>}]}
// to the configured endpoint and returns choices[0].message.content.
//
// Error mapping: HTTP 429 and 5xx are kProviderUnavailable (retryable),
// timeouts are kProviderTimeout (retryable), other 4xx are
// kProviderRejected, and well-formed 200s without the expected fields are
// kSchemaError. Plain http:// endpoints only; the build carries no TLS, so
// https:// is rejected up front. When credential_env is set but the variable
// is unset, the request is rejected before touching the network.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);

  std::string name() const override { return "http"; }
  std::string complete_once(const std::string& prompt) override;

 private:
  ProviderConfig config_;
  std::string base_;  // scheme://host:port
  std::string path_;
};

}  // namespace nl2milp

#endif  // NL2MILP_LLM_HTTP_PROVIDER_H_
