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

#include "llm/gateway.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "json.hpp"

namespace nl2milp {

namespace {

int clamp_concurrency(int value) { return std::clamp(value, 1, 4096); }

bool transient(ErrorCode code) {
  return code == ErrorCode::kProviderUnavailable ||
         code == ErrorCode::kProviderTimeout;
}

}  // namespace

Gateway::Gateway(std::shared_ptr<Provider> provider, ProviderConfig config,
                 const std::string& transcript_path)
    : provider_(std::move(provider)),
      config_(std::move(config)),
      slots_(clamp_concurrency(config_.concurrency)) {
  if (provider_ == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "gateway needs a provider");
  }
  if (!transcript_path.empty()) {
    transcript_.open(transcript_path, std::ios::binary | std::ios::app);
    if (!transcript_) {
      throw Error(ErrorCode::kIoError,
                  "cannot open transcript " + transcript_path);
    }
  }
}

CompletionRecord Gateway::complete(const std::string& prompt) {
  CompletionOutcome outcome = complete_with_retries(prompt);
  if (!outcome.ok) throw Error(outcome.code, outcome.message);
  return std::move(outcome.record);
}

std::vector<CompletionOutcome> Gateway::complete_batch(
    const std::vector<std::string>& prompts) {
  std::vector<CompletionOutcome> outcomes(prompts.size());
  if (prompts.empty()) return outcomes;

  const size_t workers = std::min(
      static_cast<size_t>(clamp_concurrency(config_.concurrency)),
      prompts.size());
  std::atomic<size_t> next{0};
  auto work = [this, &prompts, &outcomes, &next]() {
    while (true) {
      const size_t index = next.fetch_add(1);
      if (index >= prompts.size()) return;
      outcomes[index] = complete_with_retries(prompts[index]);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  return outcomes;
}

CompletionOutcome Gateway::complete_with_retries(const std::string& prompt) {
  slots_.acquire();
  CompletionOutcome outcome;
  outcome.record.prompt = prompt;
  outcome.record.provider = provider_->name();
  outcome.record.model = config_.model;

  const int max_attempts = std::max(1, config_.retries + 1);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    outcome.record.attempts = attempt;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome.record.reply = provider_->complete_once(prompt);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      outcome.record.latency_ms =
          std::chrono::duration<double, std::milli>(elapsed).count();
      outcome.ok = true;
      break;
    } catch (const Error& err) {
      outcome.ok = false;
      outcome.code = err.code();
      outcome.message = err.what();
      if (!transient(err.code()) || attempt == max_attempts) break;
      if (config_.backoff_base_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(
            config_.backoff_base_ms << (attempt - 1)));
      }
    }
  }
  slots_.release();
  append_transcript(outcome);
  return outcome;
}

void Gateway::append_transcript(const CompletionOutcome& outcome) {
  if (!transcript_.is_open()) return;
  nlohmann::ordered_json line;
  line["ok"] = outcome.ok;
  line["provider"] = outcome.record.provider;
  line["model"] = outcome.record.model;
  line["prompt"] = outcome.record.prompt;
  if (outcome.ok) {
    line["reply"] = outcome.record.reply;
    line["latency_ms"] = outcome.record.latency_ms;
  } else {
    line["error"] = error_code_name(outcome.code);
    line["message"] = outcome.message;
  }
  line["attempts"] = outcome.record.attempts;
  std::lock_guard<std::mutex> lock(transcript_mutex_);
  transcript_ << line.dump() << "\n";
  transcript_.flush();
}

std::vector<CompletionRecord> load_transcript(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<CompletionRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    try {
      if (!doc.at("ok").get<bool>()) continue;
      CompletionRecord record;
      record.prompt = doc.at("prompt").get<std::string>();
      record.reply = doc.at("reply").get<std::string>();
      record.provider = doc.value("provider", std::string());
      record.model = doc.value("model", std::string());
      record.latency_ms = doc.value("latency_ms", 0.0);
      record.attempts = doc.value("attempts", 1);
      records.push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace nl2milp
