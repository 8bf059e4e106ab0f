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

#ifndef NL2MILP_LLM_STUB_PROVIDER_H_
#define NL2MILP_LLM_STUB_PROVIDER_H_

#include <string>
#include <vector>

#include "core/instance.h"
#include "llm/provider.h"

namespace nl2milp {

// Offline completion backend that answers from registered instances' models:
// classification prompts get the type of the paragraph, variable prompts get
// the model's variable list, and generation prompts get the stored objective
// or constraint rendered as text. Unregistered classification paragraphs fall
// back to the cue rules. Everything else is rejected.
//
// The reply reflects whatever model the instance was registered with, so
// registering a deliberately wrong model reproduces a backend that makes
// that mistake.
//
// Register all instances before serving; serving is thread-safe, mutation is
// not.
class StubProvider : public Provider {
 public:
  StubProvider() = default;

  // Throws kInvalidArgument when the instance carries no ground truth.
  void register_instance(const ProblemInstance& instance);
  size_t instance_count() const { return instances_.size(); }

  std::string name() const override { return "stub"; }
  std::string complete_once(const std::string& prompt) override;

 private:
  std::string classification_reply(const std::string& paragraph) const;
  std::string variable_reply(const std::string& prompt) const;
  std::string generation_reply(const std::string& prompt,
                               bool objective) const;
  const ProblemInstance* find_by_description(
      const std::string& description) const;

  std::vector<ProblemInstance> instances_;
};

}  // namespace nl2milp

#endif  // NL2MILP_LLM_STUB_PROVIDER_H_
