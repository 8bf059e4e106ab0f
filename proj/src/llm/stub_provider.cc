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

#include "llm/stub_provider.h"

#include <string>

#include "core/classifier.h"
#include "core/parse.h"
#include "core/prompts.h"

namespace nl2milp {

namespace {

constexpr char kVariableMarker[] =
    "But now you just need to define the decision variables.";
constexpr char kBinaryMarker[] = "pure binary programming model";
constexpr char kDescriptionMarker[] = "MIP Problem Description: ";
constexpr char kContextMarker[] =
    "Full problem description to give you context: ";
constexpr char kObjectiveMarker[] = "Description of Objective Function: ";
constexpr char kConstraintMarker[] = "Constraint Description: ";

// Text between `marker` and the following blank line.
std::string extract_after(const std::string& prompt, const char* marker) {
  const size_t pos = prompt.find(marker);
  if (pos == std::string::npos) {
    throw Error(ErrorCode::kProviderRejected,
                std::string("stub: prompt lacks \"") + marker + "\"");
  }
  const size_t begin = pos + std::string(marker).size();
  size_t end = prompt.find("\n\n", begin);
  if (end == std::string::npos) end = prompt.size();
  return prompt.substr(begin, end - begin);
}

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) ==
             0;
}

}  // namespace

void StubProvider::register_instance(const ProblemInstance& instance) {
  if (!instance.ground_truth.has_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "stub instance '" + instance.id + "' has no ground truth");
  }
  instance.truth_objective_paragraph();  // Validates paragraph coverage.
  instances_.push_back(instance);
}

std::string StubProvider::complete_once(const std::string& prompt) {
  if (ends_with(prompt, kFineTuneSeparator)) {
    return classification_reply(
        prompt.substr(0, prompt.size() - std::string(kFineTuneSeparator).size()));
  }
  if (prompt.find(kVariableMarker) != std::string::npos) {
    return variable_reply(prompt);
  }
  if (prompt.find(kObjectiveMarker) != std::string::npos) {
    return generation_reply(prompt, /*objective=*/true);
  }
  if (prompt.find(kConstraintMarker) != std::string::npos) {
    return generation_reply(prompt, /*objective=*/false);
  }
  throw Error(ErrorCode::kProviderRejected,
              "stub: unrecognized prompt shape");
}

std::string StubProvider::classification_reply(
    const std::string& paragraph) const {
  for (const ProblemInstance& instance : instances_) {
    for (size_t i = 0; i < instance.paragraphs.size(); ++i) {
      if (instance.paragraphs[i] == paragraph) {
        return " " + std::to_string(instance.truth_label(static_cast<int>(i)));
      }
    }
  }
  if (auto match = classify_rules(paragraph)) {
    return " " + std::to_string(match->code);
  }
  // Deliberately not a type code; callers see it as an invalid label.
  return "unclassifiable";
}

const ProblemInstance* StubProvider::find_by_description(
    const std::string& description) const {
  for (const ProblemInstance& instance : instances_) {
    if (instance.joined_description() == description) return &instance;
  }
  return nullptr;
}

std::string StubProvider::variable_reply(const std::string& prompt) const {
  const std::string description = extract_after(prompt, kDescriptionMarker);
  const ProblemInstance* instance = find_by_description(description);
  if (instance == nullptr) {
    throw Error(ErrorCode::kProviderRejected,
                "stub: no registered instance for this description");
  }
  const bool want_binary = prompt.find(kBinaryMarker) != std::string::npos;
  std::vector<std::string> names;
  for (const Variable& var : instance->ground_truth->variables) {
    if ((var.kind == VariableKind::kBinary) == want_binary) {
      names.push_back(var.name);
    }
  }
  return format_variable_list(names);
}

std::string StubProvider::generation_reply(const std::string& prompt,
                                           bool objective) const {
  const std::string description = extract_after(prompt, kContextMarker);
  const ProblemInstance* instance = find_by_description(description);
  if (instance == nullptr) {
    throw Error(ErrorCode::kProviderRejected,
                "stub: no registered instance for this description");
  }
  const std::string paragraph = extract_after(
      prompt, objective ? kObjectiveMarker : kConstraintMarker);
  int index = -1;
  for (size_t i = 0; i < instance->paragraphs.size(); ++i) {
    if (instance->paragraphs[i] == paragraph) {
      index = static_cast<int>(i);
      break;
    }
  }
  if (index < 0) {
    throw Error(ErrorCode::kProviderRejected,
                "stub: paragraph not found in instance '" + instance->id +
                    "'");
  }
  if (objective) {
    if (index != instance->truth_objective_paragraph() ||
        !instance->ground_truth->objective.has_value()) {
      throw Error(ErrorCode::kProviderRejected,
                  "stub: instance '" + instance->id +
                      "' has no objective for this paragraph");
    }
    return render(*instance->ground_truth->objective);
  }
  const Constraint* constraint = instance->truth_constraint(index);
  if (constraint == nullptr) {
    throw Error(ErrorCode::kProviderRejected,
                "stub: no constraint recorded for this paragraph");
  }
  return render(*constraint);
}

}  // namespace nl2milp
