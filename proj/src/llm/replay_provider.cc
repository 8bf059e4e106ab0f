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

#include "llm/replay_provider.h"

#include "llm/gateway.h"

namespace nl2milp {

ReplayProvider::ReplayProvider(const std::string& transcript_path) {
  for (const CompletionRecord& record : load_transcript(transcript_path)) {
    add(record.prompt, record.reply);
  }
}

void ReplayProvider::add(const std::string& prompt, const std::string& reply) {
  std::lock_guard<std::mutex> lock(mutex_);
  replies_[prompt].push_back(reply);
  ++remaining_;
}

size_t ReplayProvider::remaining() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return remaining_;
}

std::string ReplayProvider::complete_once(const std::string& prompt) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = replies_.find(prompt);
  if (it == replies_.end() || it->second.empty()) {
    throw Error(ErrorCode::kProviderRejected,
                "replay: no recorded reply for this prompt");
  }
  std::string reply = std::move(it->second.front());
  it->second.pop_front();
  --remaining_;
  return reply;
}

}  // namespace nl2milp
