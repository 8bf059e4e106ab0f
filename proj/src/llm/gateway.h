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

#ifndef NL2MILP_LLM_GATEWAY_H_
#define NL2MILP_LLM_GATEWAY_H_

#include <fstream>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "core/error.h"
#include "llm/provider.h"

namespace nl2milp {

// One successful completion, as recorded in the transcript.
struct CompletionRecord {
  std::string prompt;
  std::string reply;
  std::string provider;
  std::string model;
  double latency_ms = 0.0;
  int attempts = 1;
};

// Result of one completion request, success or failure.
struct CompletionOutcome {
  bool ok = false;
  CompletionRecord record;                        // Valid when ok.
  ErrorCode code = ErrorCode::kProviderRejected;  // Valid when !ok.
  std::string message;
};

// Front door to a completion backend: bounds concurrent requests, retries
// transient failures with exponential backoff, and appends every request to
// a JSON-lines transcript that a ReplayProvider can later serve verbatim.
class Gateway {
 public:
  // transcript_path empty disables transcript capture. Throws kIoError when
  // the transcript file cannot be opened for appending.
  Gateway(std::shared_ptr<Provider> provider, ProviderConfig config,
          const std::string& transcript_path = "");

  // One completion; throws the final Error after retries are exhausted.
  CompletionRecord complete(const std::string& prompt);

  // Completes every prompt, preserving order. Items fail independently; a
  // failed item never aborts its neighbours.
  std::vector<CompletionOutcome> complete_batch(
      const std::vector<std::string>& prompts);

  const ProviderConfig& config() const { return config_; }
  Provider& provider() { return *provider_; }

 private:
  CompletionOutcome complete_with_retries(const std::string& prompt);
  void append_transcript(const CompletionOutcome& outcome);

  std::shared_ptr<Provider> provider_;
  ProviderConfig config_;
  std::counting_semaphore<4096> slots_;
  std::mutex transcript_mutex_;
  std::ofstream transcript_;
};

// Successful records of a transcript file, in capture order. Failure lines
// are skipped. Throws kIoError / kSchemaError.
std::vector<CompletionRecord> load_transcript(const std::string& path);

}  // namespace nl2milp

#endif  // NL2MILP_LLM_GATEWAY_H_
