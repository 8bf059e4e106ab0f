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

// Deterministic prompt construction for all three stages: variable
// identification, type classification, and template-guided generation of the
// objective and constraints. Texts come from compiled-in templates with
// {{description}}, {{paragraph}}, {{variables}}, and {{template}}
// placeholders; the same templates ship as files under data/prompts/ and a
// test keeps the two byte-identical.

#ifndef NL2MILP_CORE_PROMPTS_H_
#define NL2MILP_CORE_PROMPTS_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/error.h"

namespace nl2milp {

// Separator appended to classification prompts; the same marker terminates
// the prompt field of fine-tune records.
inline constexpr char kFineTuneSeparator[] = "\n\n###\n\n";

// Which grammar the reply to a prompt must satisfy, and therefore which
// parser validates it.
enum class ReplyKind { kVariableList, kTypeNumber, kObjective, kConstraint };

const char* reply_kind_name(ReplyKind kind);

struct PromptBundle {
  int stage = 0;  // 1 = variables, 2 = classification, 3 = generation.
  std::string text;
  ReplyKind expected_reply = ReplyKind::kConstraint;
};

// Renders names as a Python-style list: ['trucks', 'aeroplanes'].
std::string format_variable_list(const std::vector<std::string>& names);

// Replaces every {{name}} with values.at(name). Throws
// kPromptContractViolation when the template mentions a placeholder that was
// not supplied.
std::string substitute_placeholders(
    const std::string& tmpl, const std::map<std::string, std::string>& values);

// Built-in template texts keyed by their data/prompts/ file names, in a
// fixed order. prompt_template throws kInvalidArgument for unknown names.
const std::vector<std::pair<std::string, std::string>>& prompt_templates();
const std::string& prompt_template(const std::string& name);

// Stage-1 prompt. The first pass asks for continuous/non-binary integer
// variables only (an empty list is the contractual "none" answer); with
// binary_fallback the prompt asks for the binary variables of a pure binary
// problem instead. Throws kInvalidArgument on a blank description.
PromptBundle build_variable_prompt(const std::string& description,
                                   bool binary_fallback);

// Stage-2 prompt: the bare paragraph plus the fine-tune separator, matching
// the prompt layout the classifier was tuned on. Throws kInvalidArgument on
// a blank paragraph.
PromptBundle build_classifier_prompt(const std::string& paragraph);

// Stage-3 prompt for the given type code. Codes 0-9 use `variables` (the
// quantity variables, or the binary variables of a pure binary model); logic
// codes 10-13 use `binary_variables`, which must be non-empty and entirely
// "bi_"-prefixed. Violations throw kPromptContractViolation; blank texts or
// an out-of-range code throw kInvalidArgument.
PromptBundle build_generation_prompt(
    const std::string& full_description, const std::string& paragraph,
    int code, const std::vector<std::string>& variables,
    const std::vector<std::string>& binary_variables);

}  // namespace nl2milp

#endif  // NL2MILP_CORE_PROMPTS_H_
