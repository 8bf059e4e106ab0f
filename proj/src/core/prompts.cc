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

#include "core/prompts.h"

#include <cctype>

#include "core/ir.h"
#include "core/taxonomy.h"

namespace nl2milp {

namespace {

const char kVariableTemplate[] =
    R"__(You need to formulate the following given problem as a mixed integer programming (MIP) model. But now you just need to define the decision variables.

MIP Problem Description: {{description}}

Please first identify the continuous variables and/or non-binary integer variables in the mixed-integer linear programming problem and provide them as a Python list. If you can find either of these two types of variables, there is no need to find binary variables and include binary variables as part of your answer. If you do not think there are any continuous or integer variables involved in the problem description, then give as an answer an empty Python list.

A binary variable usually represents a decision about whether a single activity is carried out or not, such as whether a person does something or not, or whether a class of products is produced or not. Binary variables must be named by starting with "bi_" and linking "bi_" to the name of the entity it represents.

An integer variable or continuous variable should describe the decision to be made, usually the quantity to be determined. An integer variable or continuous variable often corresponds to some parameters that represent attributes such as profit, cost, resource consumption per unit, etc. Your answer should only include one list of variable names. Your answer does not need to specify the type of variable and provide any explanation. The variable needs to be named with the name of the quantity it represents and stored in a list. For example, the integer variable representing the quantity of vanilla cakes to be made is named vanilla_cakes.

Note that your answer must contain only a list consisting entirely of non-binary integer variables and continuous variables, or an empty list, not a list of binary variables.

You need to be aware that the (weighted) sums of some quantities, such as total amount of products, total space, total production time, total amount of resources used, and total cost, are not directly considered as a decision variable if they can be expressed as a (weighted) sum of the variables representing those quantities.)__";

const char kVariableBinaryTemplate[] =
    R"__(You need to formulate the following given problem as a mixed integer programming (MIP) model. But now you just need to define the decision variables.

MIP Problem Description: {{description}}

There are no continuous or non-binary integer variables involved in this problem, so the problem should be formulated as a pure binary programming model. Please identify all the binary variables in the problem and provide them as a Python list.

A binary variable usually represents a decision about whether a single activity is carried out or not, such as whether a person does something or not, or whether a class of products is produced or not. Binary variables must be named by starting with "bi_" and linking "bi_" to the name of the entity it represents. For example, the binary variable representing whether vanilla cakes are made is named bi_vanilla_cakes.

Your answer should only include one list of variable names. Your answer does not need to specify the type of variable and provide any explanation. Note that your answer must contain only a list consisting entirely of binary variables.)__";

const char kClassificationTemplate[] = "{{paragraph}}\n\n###\n\n";

const char kObjectiveTemplate[] =
    R"__(You need to formulate the following given problem as a mixed integer programming (MIP) model. But now you just need to define the objective function.

Full problem description to give you context: {{description}}

Description of Objective Function: {{paragraph}}

Please select the relevant variables from the continuous (or integer) variables {{variables}} to build the objective function. Do not change the names of the variables in the list when generating expressions. You must only use the relevant constants from the description of the objective function as the parameters or coefficients of the resulting expression. The parameters or coefficients may involve additional calculations or conversions of units. The resulting expression will not necessarily involve all the variables in the variable list provided. You do not need to model other constraints in the problem.

Your answer needs to indicate whether the objective function should be maximized or minimized. Therefore, your answer should only include the words "Maximize" or "Minimize" and an expression.

Please provide the requested information without any extra or unnecessary details and explanations beyond what is explicitly asked.

If the objective function is about profit and the value of the product's profit is given directly, then there is no need to use the difference between the selling price and the cost of the product to calculate the profit value. In this case, the total profit is the sum of the individual profits, independent of costs. If the profit value of a product is not explicitly given, the difference between the selling price and the cost of the product should be used to calculate the profit value.)__";

const char kConstraintTemplate[] =
    R"__(You need to formulate the following given problem as a mixed integer programming (MIP) model. But now you just need to define a single constraint of the model.

Full problem description to give you context: {{description}}

Constraint Description: {{paragraph}}

{{template}}

Please use the variables {{variables}} to model this constraint without making any alterations to the variable names. You do not need to model other constraints or the objective function in the problem. The resulting expression will not necessarily involve all the variables in the variable list provided. Ensure that the variables in the generated expression completely retain their original names from the list.

Use the symbols ">=", "<=", and "=" to denote greater than or equal to, less than or equal to, and equal to, respectively.

Your answer must only be a mathematical expression and do not provide any explanation.)__";

const char kLogicTemplate[] =
    R"__(You need to formulate the following given problem as a mixed integer programming (MIP) model. But now you just need to define a single logic constraint of the model.

Full problem description to give you context: {{description}}

Constraint Description: {{paragraph}}

This constraint belongs to a subtype of logic constraints. Please use the binary variables {{variables}} to model this logic constraint according to the following guidance. Do not change the names of the variables in the list when generating expressions. You do not need to model other constraints or the objective function in the problem. The resulting expression will not necessarily involve all the variables in the list.

Use the symbols ">=", "<=", and "=" to denote greater than or equal to, less than or equal to, and equal to, respectively.

{{template}}

Your answer can only be a mathematical expression and do not provide any explanation.)__";

bool is_blank(const std::string& text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

void require_nonblank(const std::string& text, const char* what) {
  if (is_blank(text)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must not be blank");
  }
}

void require_identifiers(const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    if (!is_valid_identifier(name)) {
      throw Error(ErrorCode::kInvalidName,
                  "bad variable name in prompt list: '" + name + "'");
    }
  }
}

}  // namespace

const char* reply_kind_name(ReplyKind kind) {
  switch (kind) {
    case ReplyKind::kVariableList:
      return "variable-list";
    case ReplyKind::kTypeNumber:
      return "type-number";
    case ReplyKind::kObjective:
      return "objective";
    case ReplyKind::kConstraint:
      return "constraint";
  }
  return "unknown";
}

std::string format_variable_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += "'" + names[i] + "'";
  }
  out += "]";
  return out;
}

std::string substitute_placeholders(
    const std::string& tmpl,
    const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  size_t pos = 0;
  while (pos < tmpl.size()) {
    size_t open = tmpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos, std::string::npos);
      break;
    }
    size_t close = tmpl.find("}}", open + 2);
    if (close == std::string::npos) {
      throw Error(ErrorCode::kPromptContractViolation,
                  "unterminated placeholder in prompt template");
    }
    out.append(tmpl, pos, open - pos);
    std::string key = tmpl.substr(open + 2, close - open - 2);
    auto it = values.find(key);
    if (it == values.end()) {
      throw Error(ErrorCode::kPromptContractViolation,
                  "no value supplied for placeholder {{" + key + "}}");
    }
    out += it->second;
    pos = close + 2;
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>>& prompt_templates() {
  static const auto* table = new std::vector<std::pair<std::string,
                                                       std::string>>{
      {"variable_identification.txt", kVariableTemplate},
      {"variable_identification_binary.txt", kVariableBinaryTemplate},
      {"classification.txt", kClassificationTemplate},
      {"generation_objective.txt", kObjectiveTemplate},
      {"generation_constraint.txt", kConstraintTemplate},
      {"generation_logic.txt", kLogicTemplate},
  };
  return *table;
}

const std::string& prompt_template(const std::string& name) {
  for (const auto& [key, text] : prompt_templates()) {
    if (key == name) return text;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no prompt template named '" + name + "'");
}

PromptBundle build_variable_prompt(const std::string& description,
                                   bool binary_fallback) {
  require_nonblank(description, "description");
  const std::string& tmpl =
      binary_fallback ? prompt_template("variable_identification_binary.txt")
                      : prompt_template("variable_identification.txt");
  PromptBundle bundle;
  bundle.stage = 1;
  bundle.expected_reply = ReplyKind::kVariableList;
  bundle.text = substitute_placeholders(tmpl, {{"description", description}});
  return bundle;
}

PromptBundle build_classifier_prompt(const std::string& paragraph) {
  require_nonblank(paragraph, "paragraph");
  PromptBundle bundle;
  bundle.stage = 2;
  bundle.expected_reply = ReplyKind::kTypeNumber;
  bundle.text = substitute_placeholders(prompt_template("classification.txt"),
                                        {{"paragraph", paragraph}});
  return bundle;
}

PromptBundle build_generation_prompt(
    const std::string& full_description, const std::string& paragraph,
    int code, const std::vector<std::string>& variables,
    const std::vector<std::string>& binary_variables) {
  if (!is_valid_type_code(code)) {
    throw Error(ErrorCode::kInvalidArgument,
                "type code out of range: " + std::to_string(code));
  }
  require_nonblank(full_description, "description");
  require_nonblank(paragraph, "paragraph");

  const bool logic = is_logic_type(code);
  const std::vector<std::string>& names =
      logic ? binary_variables : variables;
  if (names.empty()) {
    throw Error(ErrorCode::kPromptContractViolation,
                std::string("code ") + std::to_string(code) + " needs a " +
                    (logic ? "binary" : "quantity") + " variable list");
  }
  require_identifiers(names);
  if (logic) {
    for (const std::string& name : names) {
      if (name.rfind("bi_", 0) != 0) {
        throw Error(ErrorCode::kPromptContractViolation,
                    "logic prompt variable '" + name +
                        "' is not a binary name");
      }
    }
  }

  std::map<std::string, std::string> values = {
      {"description", full_description},
      {"paragraph", paragraph},
      {"variables", format_variable_list(names)},
  };

  PromptBundle bundle;
  bundle.stage = 3;
  if (code == kObjectiveCode) {
    bundle.expected_reply = ReplyKind::kObjective;
    bundle.text = substitute_placeholders(
        prompt_template("generation_objective.txt"), values);
    return bundle;
  }
  bundle.expected_reply = ReplyKind::kConstraint;
  values["template"] = generation_template_text(code);
  bundle.text = substitute_placeholders(
      logic ? prompt_template("generation_logic.txt")
            : prompt_template("generation_constraint.txt"),
      values);
  return bundle;
}

}  // namespace nl2milp
