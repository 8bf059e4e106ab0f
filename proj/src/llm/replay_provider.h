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

#ifndef NL2MILP_LLM_REPLAY_PROVIDER_H_
#define NL2MILP_LLM_REPLAY_PROVIDER_H_

#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>

#include "llm/provider.h"

namespace nl2milp {

// Serves previously captured replies keyed by prompt, each prompt's replies
// in first-in-first-out order, so a captured session replays byte-for-byte
// without a backend. Prompts with no remaining reply are rejected.
class ReplayProvider : public Provider {
 public:
  ReplayProvider() = default;
  // Loads the successful records of a gateway transcript.
  explicit ReplayProvider(const std::string& transcript_path);

  void add(const std::string& prompt, const std::string& reply);
  size_t remaining() const;

  std::string name() const override { return "replay"; }
  std::string complete_once(const std::string& prompt) override;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::deque<std::string>> replies_;
  size_t remaining_ = 0;
};

}  // namespace nl2milp

#endif  // NL2MILP_LLM_REPLAY_PROVIDER_H_
