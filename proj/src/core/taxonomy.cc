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

#include "core/taxonomy.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nl2milp {

namespace {

// The shared instruction for matching weights of a weighted-sum constraint.
const char kWeightGuidance[] =
    "Each variable in the constraint inequality will be multiplied by a "
    "parameter (weight). This parameter must be a constant mentioned in the "
    "constraint description above. Please find the correct parameter in the "
    "description that corresponds to each variable to substitute into the "
    "inequality based on the variable name.";

std::vector<TypeTemplate> build_templates() {
  std::vector<TypeTemplate> t(kNumTypeCodes);

  t[0].code = 0;
  t[0].meaning =
      "The objective function should specify a direction of optimization, "
      "either to maximize or minimize. Therefore, the answer should only "
      "include the words \"Maximize\" or \"Minimize\" and a linear "
      "expression.";
  t[0].formula_pattern =
      "sum of terms consisting of a variable multiplied by one or more "
      "constant coefficients";
  t[0].cues = {"maximize", "maximise", "minimize", "minimise",
               "how many",  "how much"};

  t[1].code = 1;
  t[1].meaning =
      "This constraint represents an upper bound on a single decision "
      "variable.";
  t[1].formula_pattern = "variable <= constant";
  t[1].cues = {"at most",           "no more than",
               "cannot exceed",     "must not exceed",
               "can make at most",  "a maximum of",
               "maximum",           "no greater than",
               "no larger than",    "cannot be greater than",
               "up to",             "or less",
               "or fewer",          "available"};
  t[1].prompt_pattern = "variable <= constant representing the upper bound";

  t[2].code = 2;
  t[2].meaning =
      "This constraint represents an upper bound on the sum of decision "
      "variables.";
  t[2].formula_pattern = "sum of variables <= constant";
  t[2].cues = {"in total", "total", "combined", "altogether", "sum of",
               "overall"};
  t[2].prompt_pattern =
      "sum of variables <= constant representing the upper bound";

  t[3].code = 3;
  t[3].meaning =
      "This constraint represents an upper bound on the weighted sum of "
      "decision variables.";
  t[3].formula_pattern =
      "sum of variables multiplied by their weight <= constant";
  t[3].cues = {"each", "respectively", "per"};
  t[3].prompt_pattern =
      "weighted sum of variables <= constant representing the upper bound";
  t[3].guidance = kWeightGuidance;

  t[4].code = 4;
  t[4].meaning =
      "This constraint indicates that the upper bound on a single variable "
      "is a constant proportion of the sum of all variables.";
  t[4].formula_pattern = "one variable <= proportion * sum of all variables";
  t[4].cues = {"proportion", "fraction", "% of", "percent of", "of the total",
               "of all"};
  t[4].prompt_pattern = "one variable <= proportion * sum of all variables";

  t[5].code = 5;
  t[5].meaning =
      "This constraint represents a lower bound on a single decision "
      "variable.";
  t[5].formula_pattern = "variable >= constant";
  t[5].cues = {"at least",          "no less than",
               "no fewer than",     "a minimum of",
               "minimum",           "cannot be less than",
               "must make at least", "or more",
               "must be met",       "demand",
               "required to make",  "needs"};
  t[5].prompt_pattern = "variable >= constant representing the lower bound";

  t[6].code = 6;
  t[6].meaning =
      "This constraint represents a lower bound on the sum of decision "
      "variables.";
  t[6].formula_pattern = "sum of variables >= constant";
  t[6].cues = t[2].cues;
  t[6].prompt_pattern =
      "sum of variables >= constant representing the lower bound";

  t[7].code = 7;
  t[7].meaning =
      "This constraint represents a lower bound on the weighted sum of "
      "decision variables.";
  t[7].formula_pattern =
      "sum of variables multiplied by their weight >= constant";
  t[7].cues = t[3].cues;
  t[7].prompt_pattern =
      "weighted sum of variables >= constant representing the lower bound";
  t[7].guidance = kWeightGuidance;

  t[8].code = 8;
  t[8].meaning =
      "This constraint indicates that the lower bound on a single variable "
      "is a proportion of the sum of all variables.";
  t[8].formula_pattern = "one variable >= proportion * sum of all variables";
  t[8].cues = t[4].cues;
  t[8].prompt_pattern = "one variable >= proportion * sum of all variables";

  t[9].code = 9;
  t[9].meaning =
      "This constraint is a comparison constraint between two variables.";
  t[9].formula_pattern =
      "c * x <= y, where x and y are variables and c is a positive "
      "constant.";
  t[9].cues = {"times as many",           "twice as many",
               "times as much",           "twice as much",
               "as many",                 "as much",
               "times the number of",     "twice the number of",
               "cannot exceed the number of", "times the amount of"};
  t[9].prompt_pattern =
      "x <= b*y, where x and y are variables and b is a positive constant";

  t[10].code = 10;
  t[10].meaning =
      "In natural language descriptions, this type of constraint often "
      "contains a format like \"If A then B\" or \"If not B then not A\".";
  t[10].formula_pattern = "y_A <= y_B";
  t[10].cues = {"If A then B", "If not B then not A"};
  t[10].prompt_pattern = "a <= b";

  t[11].code = 11;
  t[11].meaning =
      "In natural language descriptions, this type of constraint often "
      "contains a format like \"(Exactly) one of A and B\" or \"Either A or "
      "B (but not both)\".";
  t[11].formula_pattern = "y_A + y_B = 1";
  t[11].cues = {"(Exactly) one of A and B", "Either A or B (but not both)"};
  t[11].prompt_pattern = "a + b = 1";

  t[12].code = 12;
  t[12].meaning =
      "In natural language descriptions, this type of constraint often "
      "contains a format like \"At least one of A and B\" or \"If not A "
      "then B\" or \"Either A or B or both\".";
  t[12].formula_pattern = "y_A + y_B >= 1";
  t[12].cues = {"At least one of A and B", "If not A then B",
                "Either A or B or both"};
  t[12].prompt_pattern = "a + b >= 1";

  t[13].code = 13;
  t[13].meaning =
      "In natural language descriptions, this type of constraint often "
      "contains a format like \"At most one of A and B\" or \"If A then not "
      "B\" or \"Either A or B or neither (but not both)\".";
  t[13].formula_pattern = "y_A + y_B <= 1";
  t[13].cues = {"At most one of A and B", "If A then not B",
                "Either A or B or neither (but not both)"};
  t[13].prompt_pattern = "a + b <= 1";

  for (int code = 10; code <= 13; ++code) {
    t[code].is_logic = true;
    t[code].uses_binary_vars = true;
  }
  return t;
}

// Meaning with its closing period removed, for splicing into a sentence.
std::string strip_trailing_period(const std::string& text) {
  if (!text.empty() && text.back() == '.') {
    return text.substr(0, text.size() - 1);
  }
  return text;
}

}  // namespace

bool TypeTemplate::operator==(const TypeTemplate& other) const {
  return code == other.code && meaning == other.meaning &&
         formula_pattern == other.formula_pattern && cues == other.cues &&
         is_logic == other.is_logic &&
         uses_binary_vars == other.uses_binary_vars &&
         prompt_pattern == other.prompt_pattern && guidance == other.guidance;
}

bool is_valid_type_code(int code) {
  return code >= 0 && code < kNumTypeCodes;
}

bool is_logic_type(int code) { return code >= 10 && code <= 13; }

const std::vector<TypeTemplate>& all_templates() {
  static const std::vector<TypeTemplate>* table =
      new std::vector<TypeTemplate>(build_templates());
  return *table;
}

const TypeTemplate& template_for(int code) {
  if (!is_valid_type_code(code)) {
    throw Error(ErrorCode::kInvalidArgument,
                "type code out of range: " + std::to_string(code));
  }
  return all_templates()[static_cast<size_t>(code)];
}

std::string generation_template_text(int code) {
  if (code <= 0 || code >= kNumTypeCodes) {
    throw Error(ErrorCode::kInvalidArgument,
                "no generation template text for code " +
                    std::to_string(code));
  }
  const TypeTemplate& t = template_for(code);
  if (t.is_logic) {
    return "Template: Consider Statements A and B with truth value "
           "represented binary variables a, b respectively - with 1 "
           "representing a statement is true and 0 otherwise.\n" +
           strip_trailing_period(t.meaning) +
           ", which corresponds to the mathematical formula " +
           t.prompt_pattern +
           ". Please match the variables in the given constraint "
           "description with the variables in the template to generate the "
           "correct mathematical expression.";
  }
  if (code == 9) {
    return strip_trailing_period(t.meaning) +
           ", expressed in a mathematical formula similar to " +
           t.prompt_pattern + ".";
  }
  std::string text = t.meaning +
                     " The expression for the constraint has the format \"" +
                     t.prompt_pattern + "\".";
  if (!t.guidance.empty()) {
    text += " " + t.guidance;
  }
  return text;
}

int nl4opt_crosswalk(int code, std::optional<bool> d_equals_one) {
  if (!is_valid_type_code(code)) {
    throw Error(ErrorCode::kInvalidArgument,
                "type code out of range: " + std::to_string(code));
  }
  switch (code) {
    case 1:
      return 2;  // Upper bound.
    case 2:
      return 1;  // Sum constraint.
    case 3:
      return 4;  // Linear constraint.
    case 4:
      return 5;  // Ratio control constraint.
    case 5:
      return 3;  // Lower bound.
    case 6:
      return 1;  // Sum constraint.
    case 7:
      return 4;  // Linear constraint.
    case 8:
      return 5;  // Ratio control constraint.
    case 9:
      // Balance constraints split on whether the comparison coefficient is 1.
      if (!d_equals_one.has_value()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "code 9 needs the d_equals_one flag to pick between the "
                    "two balance constraint types");
      }
      return *d_equals_one ? 7 : 6;
    default:
      throw Error(ErrorCode::kNoCrosswalk,
                  "code " + std::to_string(code) +
                      " has no counterpart type");
  }
}

const char* nl4opt_type_name(int nl4opt_code) {
  switch (nl4opt_code) {
    case 1:
      return "Sum constraint";
    case 2:
      return "Upper bound";
    case 3:
      return "Lower bound";
    case 4:
      return "Linear constraint";
    case 5:
      return "Ratio control constraint";
    case 6:
      return "Balance constraint Type-1";
    case 7:
      return "Balance constraint Type-2";
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "no such type number: " + std::to_string(nl4opt_code));
  }
}

std::vector<TypeTemplate> load_templates(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                path + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array() || doc.size() != kNumTypeCodes) {
    throw Error(ErrorCode::kSchemaError,
                path + ": expected an array of " +
                    std::to_string(kNumTypeCodes) + " templates");
  }
  std::vector<TypeTemplate> out;
  out.reserve(doc.size());
  try {
    for (size_t i = 0; i < doc.size(); ++i) {
      const nlohmann::json& item = doc[i];
      TypeTemplate t;
      t.code = item.at("code").get<int>();
      if (t.code != static_cast<int>(i)) {
        throw Error(ErrorCode::kSchemaError,
                    path + ": templates must be listed in code order");
      }
      t.meaning = item.at("meaning").get<std::string>();
      t.formula_pattern = item.at("formula_pattern").get<std::string>();
      t.cues = item.at("cues").get<std::vector<std::string>>();
      t.is_logic = item.at("is_logic").get<bool>();
      t.uses_binary_vars = item.at("uses_binary_vars").get<bool>();
      t.prompt_pattern = item.value("prompt_pattern", std::string());
      t.guidance = item.value("guidance", std::string());
      out.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                path + ": bad template record: " + e.what());
  }
  return out;
}

}  // namespace nl2milp
