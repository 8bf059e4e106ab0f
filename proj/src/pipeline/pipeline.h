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

// Three-stage synthesis of a model from description paragraphs: identify the
// decision variables, classify each paragraph's constraint type, formulate
// each paragraph as an expression, then supplement the linking rows that tie
// indicator variables to the quantities they watch.

#ifndef NL2MILP_PIPELINE_PIPELINE_H_
#define NL2MILP_PIPELINE_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/ir.h"

namespace nl2milp {

class Gateway;

struct SynthesisOptions {
  double big_m = kDefaultBigM;
};

// What happened during variable identification, including the binary
// fallback round when the first reply was an empty list.
struct VariableStageTrace {
  std::string prompt;
  std::string reply;
  bool used_binary_fallback = false;
  std::string fallback_prompt;
  std::string fallback_reply;
  std::vector<std::string> names;
};

// What happened to one paragraph: its classification exchange and the
// generation exchange, plus the parsed result. Exactly one of `objective`
// and `constraint` is set once formulation succeeded.
struct ParagraphTrace {
  int index = -1;
  std::string paragraph;
  std::string classification_prompt;
  std::string classification_reply;
  int label = -1;
  std::string generation_prompt;
  std::string generation_reply;
  bool repaired = false;  // Reply needed the wrapping-prose repair pass.
  std::optional<Objective> objective;
  std::optional<Constraint> constraint;
};

struct SynthesisTrace {
  VariableStageTrace variables;
  std::vector<ParagraphTrace> paragraphs;
  std::vector<Constraint> supplemented;
};

// Outcome of a full run. The trace is populated as far as the run went, so
// failures stay diagnosable.
struct SynthesisResult {
  bool ok = false;
  MilpModel model;  // Meaningful when ok.
  SynthesisTrace trace;
  ErrorCode code = ErrorCode::kGenerationFailed;  // Meaningful when !ok.
  std::string message;
  int failed_paragraph = -1;  // Paragraph at fault, -1 when none.
};

struct IdentifiedVariables {
  std::vector<Variable> variables;
  bool pure_binary = false;
  VariableStageTrace trace;
};

// Stage one. Asks for continuous/integer variables first; an empty-list
// reply triggers the pure-binary fallback prompt. A malformed reply is
// re-asked once. Throws kInvalidVariableSet when the reply breaks the naming
// contract of its round, kNoVariablesFound when both rounds come up empty,
// and parse/provider errors otherwise.
IdentifiedVariables identify_variables(const std::string& description,
                                       Gateway& gateway);

// Stage three for a single paragraph, `code` being its stage-two type.
// `variables` is the quantity list given to non-logic prompts and
// `binary_variables` the indicator list given to logic prompts. A reply that
// fails to parse, uses undeclared names, or contains no variables is
// re-asked once, then reported as kGenerationFailed carrying the paragraph
// index. Classification fields of the returned trace are left blank.
ParagraphTrace formulate_paragraph(const std::string& description,
                                   const std::string& paragraph,
                                   int paragraph_index, int code,
                                   const std::vector<std::string>& variables,
                                   const std::vector<std::string>& binary_variables,
                                   Gateway& gateway);

// Post pass: drops indicator variables no constraint or objective mentions,
// then appends the two bounding rows for each remaining indicator — the
// quantity capped by big-M times the indicator (or by the declared upper
// bound when tighter), and the indicator capped by the quantity itself for
// integer bases or by big-M times the quantity for continuous ones. Models
// without indicators are left untouched. Returns the appended rows.
std::vector<Constraint> supplement_linking(MilpModel& model);

// The whole pipeline over one description. Never throws; failures come back
// with ok == false, an error code, and the paragraph at fault when one is.
// Exactly one paragraph must classify as the objective.
SynthesisResult synthesize(const std::vector<std::string>& paragraphs,
                           Gateway& gateway,
                           const SynthesisOptions& options = {});

}  // namespace nl2milp

#endif  // NL2MILP_PIPELINE_PIPELINE_H_
