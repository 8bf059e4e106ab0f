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

// The objective/constraint taxonomy: 14 codes (0 = objective, 1-13 =
// constraint types) with a per-code template record, the crosswalk to the
// NL4Opt competition's type numbers, and the template paragraph embedded in
// generation prompts.

#ifndef NL2MILP_CORE_TAXONOMY_H_
#define NL2MILP_CORE_TAXONOMY_H_

#include <optional>
#include <string>
#include <vector>

#include "core/error.h"

namespace nl2milp {

// Codes run 0..13: 0 objective; 1-3 upper bounds on a single variable, a sum,
// and a weighted sum; 4 upper bound on a proportion; 5-8 the lower-bound
// mirrors; 9 two-variable comparison; 10-13 logic constraints over binary
// variables (if-then, exactly-one, at-least-one, at-most-one).
inline constexpr int kNumTypeCodes = 14;
inline constexpr int kObjectiveCode = 0;

bool is_valid_type_code(int code);

// True for codes 10-13, the constraint types over binary variables.
bool is_logic_type(int code);

// Per-code template record.
//
// `meaning` and `formula_pattern` are the descriptive sentence and formula
// shape shown to the LLM; for logic codes the meaning lists the usual
// natural-language phrasings ("If A then B", ...). `cues` holds lowercase
// phrases consumed by the rule-based classifier for codes 0-9 (direction,
// shape, proportion, comparison vocabularies); for logic codes it holds the
// quoted phrasings from the meaning, matched structurally rather than
// verbatim. `prompt_pattern` is the formula wording spliced into generation
// prompts and `guidance` an optional extra instruction (weight matching for
// the weighted-sum codes).
struct TypeTemplate {
  int code = 0;
  std::string meaning;
  std::string formula_pattern;
  std::vector<std::string> cues;
  bool is_logic = false;
  bool uses_binary_vars = false;
  std::string prompt_pattern;
  std::string guidance;

  bool operator==(const TypeTemplate& other) const;
};

// Total on codes 0-13; throws kInvalidArgument outside that range.
const TypeTemplate& template_for(int code);

// All 14 templates in code order.
const std::vector<TypeTemplate>& all_templates();

// The template paragraph for the {{template}} slot of generation prompts:
// meaning plus formula wording (plus weight guidance for codes 3 and 7); for
// logic codes the statement-matching block including the phrasing cues.
// Defined for constraint codes 1-13 only; code 0 (the objective prompt has
// fixed wording of its own) and out-of-range codes throw kInvalidArgument.
std::string generation_template_text(int code);

// Maps constraint codes 1-9 to the NL4Opt competition's type numbers 1-7.
// Code 9 splits by whether the comparison coefficient equals 1, so the flag
// is required for it (kInvalidArgument otherwise) and ignored elsewhere.
// Codes 0 and 10-13 have no NL4Opt counterpart and throw kNoCrosswalk.
int nl4opt_crosswalk(int code,
                     std::optional<bool> d_equals_one = std::nullopt);

// Name of an NL4Opt type number 1-7 ("Sum constraint", "Upper bound", ...).
// Throws kInvalidArgument outside 1-7.
const char* nl4opt_type_name(int nl4opt_code);

// Loads a template table from a JSON file with the same field layout as the
// built-in table (array of objects keyed code/meaning/formula_pattern/cues/
// is_logic/uses_binary_vars/prompt_pattern/guidance). Throws kIoError when
// the file cannot be read and kSchemaError on malformed content.
std::vector<TypeTemplate> load_templates(const std::string& path);

}  // namespace nl2milp

#endif  // NL2MILP_CORE_TAXONOMY_H_
