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

#include "pipeline/pipeline.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <utility>

#include "core/classifier.h"
#include "core/parse.h"
#include "core/prompts.h"
#include "core/taxonomy.h"
#include "llm/gateway.h"

namespace nl2milp {

namespace {

bool has_bi_prefix(const std::string& name) {
  return name.rfind("bi_", 0) == 0;
}

void require_unique(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const std::string& name : names) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kInvalidVariableSet,
                  "variable '" + name + "' listed twice");
    }
  }
}

// Completes `prompt` and parses the reply as a variable list, re-asking once
// on a malformed reply. nullopt means the (final) reply was an empty list.
std::optional<std::vector<std::string>> ask_for_variables(
    Gateway& gateway, const std::string& prompt, std::string* reply_out) {
  for (int round = 0; round < 2; ++round) {
    *reply_out = gateway.complete(prompt).reply;
    try {
      return parse_variable_list(*reply_out);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kEmptyList) return std::nullopt;
      if (round == 1) throw;
    }
  }
  return std::nullopt;  // Unreachable.
}

// Classification with one re-ask on a reply that is not a type code,
// recording the exchange.
int classify_with_trace(const std::string& paragraph, Gateway& gateway,
                        ParagraphTrace* trace) {
  const PromptBundle bundle = build_classifier_prompt(paragraph);
  trace->classification_prompt = bundle.text;
  trace->classification_reply = gateway.complete(bundle.text).reply;
  try {
    return parse_type_label(trace->classification_reply);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kInvalidLabel) throw;
  }
  trace->classification_reply = gateway.complete(bundle.text).reply;
  return parse_type_label(trace->classification_reply);
}

void fail(SynthesisResult* result, ErrorCode code, std::string message,
          int paragraph) {
  result->ok = false;
  result->code = code;
  result->message = std::move(message);
  result->failed_paragraph = paragraph;
}

}  // namespace

IdentifiedVariables identify_variables(const std::string& description,
                                       Gateway& gateway) {
  IdentifiedVariables out;
  const PromptBundle first = build_variable_prompt(description, false);
  out.trace.prompt = first.text;

  std::optional<std::vector<std::string>> names =
      ask_for_variables(gateway, first.text, &out.trace.reply);
  if (names.has_value()) {
    for (const std::string& name : *names) {
      if (has_bi_prefix(name)) {
        throw Error(ErrorCode::kInvalidVariableSet,
                    "the quantity round returned binary variable '" + name +
                        "'");
      }
    }
    require_unique(*names);
    out.trace.names = *names;
    out.pure_binary = false;
    for (const std::string& name : *names) {
      out.variables.push_back(
          Variable{name, VariableKind::kInteger, "", {}});
    }
    return out;
  }

  const PromptBundle fallback = build_variable_prompt(description, true);
  out.trace.used_binary_fallback = true;
  out.trace.fallback_prompt = fallback.text;
  names = ask_for_variables(gateway, fallback.text, &out.trace.fallback_reply);
  if (!names.has_value()) {
    throw Error(ErrorCode::kNoVariablesFound,
                "both identification rounds returned an empty list");
  }
  for (const std::string& name : *names) {
    if (!has_bi_prefix(name)) {
      throw Error(ErrorCode::kInvalidVariableSet,
                  "the binary round returned non-binary variable '" + name +
                      "'");
    }
  }
  require_unique(*names);
  out.trace.names = *names;
  out.pure_binary = true;
  for (const std::string& name : *names) {
    out.variables.push_back(Variable{name, VariableKind::kBinary, "", {}});
  }
  return out;
}

ParagraphTrace formulate_paragraph(
    const std::string& description, const std::string& paragraph,
    int paragraph_index, int code, const std::vector<std::string>& variables,
    const std::vector<std::string>& binary_variables, Gateway& gateway) {
  ParagraphTrace trace;
  trace.index = paragraph_index;
  trace.paragraph = paragraph;
  const bool logic = is_logic_type(code);
  const PromptBundle bundle = build_generation_prompt(
      description, paragraph, code, variables, binary_variables);
  trace.generation_prompt = bundle.text;

  const std::vector<std::string>& allowed_names =
      logic ? binary_variables : variables;
  const std::set<std::string> allowed(allowed_names.begin(),
                                      allowed_names.end());
  auto check_terms = [&allowed](const AffineExpression& expr) {
    for (const Term& term : expr.terms) {
      if (allowed.count(term.var) == 0) {
        throw Error(ErrorCode::kInvalidName,
                    "reply uses undeclared variable '" + term.var + "'");
      }
    }
  };

  // Parses the reply into the trace; on failure reports why.
  auto absorb = [&](const std::string& reply, std::string* problem) {
    try {
      if (code == kObjectiveCode) {
        Repaired<Objective> parsed = parse_objective_reply(reply);
        check_terms(parsed.value.expr);
        if (parsed.value.expr.terms.empty()) {
          throw Error(ErrorCode::kInvalidExpression,
                      "objective has no variable terms");
        }
        trace.objective = std::move(parsed.value);
        trace.repaired = parsed.diagnostics.recovered;
        return true;
      }
      Repaired<Constraint> parsed = parse_constraint_reply(reply);
      check_terms(parsed.value.lhs);
      check_terms(parsed.value.rhs);
      if (parsed.value.lhs.terms.empty() && parsed.value.rhs.terms.empty()) {
        throw Error(ErrorCode::kInvalidExpression,
                    "constraint has no variable terms");
      }
      parsed.value.ctype = ConstraintTag::typed(code);
      parsed.value.source = ConstraintSource::from_paragraph(paragraph_index);
      trace.constraint = std::move(parsed.value);
      trace.repaired = parsed.diagnostics.recovered;
      return true;
    } catch (const Error& err) {
      *problem = err.what();
      return false;
    }
  };

  trace.generation_reply = gateway.complete(bundle.text).reply;
  std::string problem;
  if (absorb(trace.generation_reply, &problem)) return trace;
  trace.generation_reply = gateway.complete(bundle.text).reply;
  if (absorb(trace.generation_reply, &problem)) return trace;
  throw Error(ErrorCode::kGenerationFailed,
              "paragraph " + std::to_string(paragraph_index) +
                  " formulation failed: " + problem,
              paragraph_index);
}

std::vector<Constraint> supplement_linking(MilpModel& model) {
  std::set<std::string> used;
  if (model.objective.has_value()) {
    for (const Term& term : model.objective->expr.terms) used.insert(term.var);
  }
  for (const Constraint& constraint : model.constraints) {
    for (const Term& term : constraint.lhs.terms) used.insert(term.var);
    for (const Term& term : constraint.rhs.terms) used.insert(term.var);
  }

  std::erase_if(model.variables, [&used](const Variable& v) {
    return v.kind == VariableKind::kBinary && !v.linked_base.empty() &&
           used.count(v.name) == 0;
  });

  std::vector<Constraint> added;
  for (const Variable& v : model.variables) {
    if (v.kind != VariableKind::kBinary || v.linked_base.empty()) continue;
    const Variable* base = model.find_variable(v.linked_base);
    if (base == nullptr) continue;  // validate() reports the dangling link.

    Constraint capped;
    double cap = model.big_m;
    if (base->upper_bound.has_value() && *base->upper_bound < cap) {
      cap = *base->upper_bound;
    }
    capped.lhs.add(base->name, 1);
    capped.rhs.add(v.name, cap);
    capped.ctype = ConstraintTag::linking();
    capped.source = ConstraintSource::supplemented();
    added.push_back(capped);

    Constraint grounded;
    grounded.lhs.add(v.name, 1);
    if (base->kind == VariableKind::kInteger) {
      grounded.rhs.add(base->name, 1);
    } else {
      grounded.rhs.add(base->name, model.big_m);
    }
    grounded.ctype = ConstraintTag::linking();
    grounded.source = ConstraintSource::supplemented();
    added.push_back(grounded);
  }
  model.constraints.insert(model.constraints.end(), added.begin(),
                           added.end());
  return added;
}

SynthesisResult synthesize(const std::vector<std::string>& paragraphs,
                           Gateway& gateway,
                           const SynthesisOptions& options) {
  SynthesisResult result;
  if (paragraphs.empty()) {
    fail(&result, ErrorCode::kInvalidArgument,
         "nothing to synthesize from: no paragraphs", -1);
    return result;
  }
  if (!(options.big_m > 0.0) || !std::isfinite(options.big_m)) {
    fail(&result, ErrorCode::kInvalidArgument,
         "big_m must be positive and finite", -1);
    return result;
  }

  std::string description;
  for (const std::string& paragraph : paragraphs) {
    if (!description.empty()) description += ' ';
    description += paragraph;
  }

  IdentifiedVariables identified;
  try {
    identified = identify_variables(description, gateway);
  } catch (const Error& err) {
    try {
      // The thrown call unwound its own trace; rebuild the prompt so the
      // failure stays diagnosable from the result alone.
      result.trace.variables.prompt =
          build_variable_prompt(description, false).text;
    } catch (const Error&) {
      // A description too blank to even form a prompt stays untraced.
    }
    fail(&result, err.code(),
         std::string("variable identification failed: ") + err.what(), -1);
    return result;
  }
  result.trace.variables = identified.trace;

  result.trace.paragraphs.resize(paragraphs.size());
  std::vector<int> labels(paragraphs.size(), -1);
  for (size_t i = 0; i < paragraphs.size(); ++i) {
    ParagraphTrace& slot = result.trace.paragraphs[i];
    slot.index = static_cast<int>(i);
    slot.paragraph = paragraphs[i];
    try {
      labels[i] = classify_with_trace(paragraphs[i], gateway, &slot);
      slot.label = labels[i];
    } catch (const Error& err) {
      fail(&result, err.code(),
           "classification of paragraph " + std::to_string(i) +
               " failed: " + err.what(),
           static_cast<int>(i));
      return result;
    }
  }

  int objective_paragraph = -1;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kObjectiveCode) continue;
    if (objective_paragraph >= 0) {
      fail(&result, ErrorCode::kDuplicateObjective,
           "paragraphs " + std::to_string(objective_paragraph) + " and " +
               std::to_string(i) + " both classify as the objective",
           static_cast<int>(i));
      return result;
    }
    objective_paragraph = static_cast<int>(i);
  }
  if (objective_paragraph < 0) {
    fail(&result, ErrorCode::kMissingObjective,
         "no paragraph classifies as the objective", -1);
    return result;
  }

  std::vector<std::string> names;
  for (const Variable& v : identified.variables) names.push_back(v.name);
  const bool any_logic =
      std::any_of(labels.begin(), labels.end(), is_logic_type);
  std::vector<std::string> binary_names;
  if (identified.pure_binary) {
    binary_names = names;
  } else if (any_logic) {
    for (const std::string& name : names) binary_names.push_back("bi_" + name);
  }

  for (size_t i = 0; i < paragraphs.size(); ++i) {
    ParagraphTrace& slot = result.trace.paragraphs[i];
    try {
      ParagraphTrace formulated =
          formulate_paragraph(description, paragraphs[i], static_cast<int>(i),
                              labels[i], names, binary_names, gateway);
      formulated.classification_prompt =
          std::move(slot.classification_prompt);
      formulated.classification_reply = std::move(slot.classification_reply);
      formulated.label = slot.label;
      slot = std::move(formulated);
    } catch (const Error& err) {
      fail(&result, err.code(), err.what(), static_cast<int>(i));
      return result;
    }
  }

  MilpModel model;
  model.big_m = options.big_m;
  model.variables = identified.variables;
  if (!identified.pure_binary && any_logic) {
    for (const std::string& name : names) {
      model.variables.push_back(
          Variable{"bi_" + name, VariableKind::kBinary, name, {}});
    }
  }
  for (const ParagraphTrace& slot : result.trace.paragraphs) {
    if (slot.objective.has_value()) {
      model.objective = slot.objective;
    } else if (slot.constraint.has_value()) {
      model.constraints.push_back(*slot.constraint);
    }
  }

  result.trace.supplemented = supplement_linking(model);
  try {
    validate(model);
  } catch (const Error& err) {
    fail(&result, err.code(),
         std::string("synthesized model is inconsistent: ") + err.what(),
         -1);
    return result;
  }
  result.model = std::move(model);
  result.ok = true;
  return result;
}

}  // namespace nl2milp
