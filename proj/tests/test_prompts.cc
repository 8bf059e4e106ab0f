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

#include <string>
#include <vector>

#include "doctest.h"
#include "support/fixtures.h"

namespace nl2milp {
namespace {

using testing::data_dir;
using testing::golden_dir;
using testing::haus_description;
using testing::haus_paragraphs;
using testing::read_file;

const std::vector<std::string> kHausVars = {"trucks", "aeroplanes", "ships",
                                            "trains"};
const std::vector<std::string> kHausBinaries = {
    "bi_trucks", "bi_aeroplanes", "bi_ships", "bi_trains"};

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST_CASE("bundled prompt template files match the compiled-in texts") {
  for (const auto& [name, text] : prompt_templates()) {
    CAPTURE(name);
    CHECK(read_file(data_dir() + "/prompts/" + name) == text);
  }
  CHECK(prompt_templates().size() == 6);
  CHECK_THROWS_AS_CODE(prompt_template("nope.txt"),
                       ErrorCode::kInvalidArgument);
}

TEST_CASE("variable lists render in Python style") {
  CHECK(format_variable_list(kHausVars) ==
        "['trucks', 'aeroplanes', 'ships', 'trains']");
  CHECK(format_variable_list({"x"}) == "['x']");
  CHECK(format_variable_list({}) == "[]");
}

TEST_CASE("placeholder substitution is total and strict") {
  CHECK(substitute_placeholders("a {{x}} b {{y}} {{x}}",
                                {{"x", "1"}, {"y", "2"}}) == "a 1 b 2 1");
  CHECK(substitute_placeholders("no placeholders", {}) == "no placeholders");
  CHECK_THROWS_AS_CODE(substitute_placeholders("{{missing}}", {}),
                       ErrorCode::kPromptContractViolation);
  CHECK_THROWS_AS_CODE(substitute_placeholders("{{unterminated", {}),
                       ErrorCode::kPromptContractViolation);
}

TEST_CASE("variable identification prompt carries the naming rules") {
  PromptBundle first = build_variable_prompt(haus_description(), false);
  CHECK(first.stage == 1);
  CHECK(first.expected_reply == ReplyKind::kVariableList);
  CHECK(contains(first.text, haus_description()));
  CHECK(contains(first.text,
                 "Binary variables must be named by starting with \"bi_\""));
  CHECK(contains(first.text, "is named vanilla_cakes"));
  CHECK(contains(first.text, "provide them as a Python list"));
  CHECK(contains(first.text, "give as an answer an empty Python list"));
  CHECK(contains(first.text,
                 "are not directly considered as a decision variable"));
  // The first pass must never solicit a binary list.
  CHECK(!contains(first.text, "list consisting only of the binary"));

  PromptBundle fallback = build_variable_prompt(haus_description(), true);
  CHECK(fallback.stage == 1);
  CHECK(fallback.expected_reply == ReplyKind::kVariableList);
  CHECK(contains(fallback.text, "pure binary programming model"));
  CHECK(contains(fallback.text, "is named bi_vanilla_cakes"));
  CHECK(contains(fallback.text,
                 "a list consisting entirely of binary variables"));

  CHECK_THROWS_AS_CODE(build_variable_prompt("", false),
                       ErrorCode::kInvalidArgument);
  CHECK_THROWS_AS_CODE(build_variable_prompt("  \n ", true),
                       ErrorCode::kInvalidArgument);
}

TEST_CASE("classifier prompt is the paragraph plus the tuning separator") {
  const std::string paragraph = haus_paragraphs()[3];
  PromptBundle bundle = build_classifier_prompt(paragraph);
  CHECK(bundle.stage == 2);
  CHECK(bundle.expected_reply == ReplyKind::kTypeNumber);
  CHECK(bundle.text == paragraph + "\n\n###\n\n");
  CHECK(bundle.text == paragraph + kFineTuneSeparator);
  CHECK_THROWS_AS_CODE(build_classifier_prompt("   "),
                       ErrorCode::kInvalidArgument);
}

TEST_CASE("objective generation prompt includes the profit guidance") {
  PromptBundle bundle = build_generation_prompt(
      haus_description(), haus_paragraphs()[0], 0, kHausVars, kHausBinaries);
  CHECK(bundle.stage == 3);
  CHECK(bundle.expected_reply == ReplyKind::kObjective);
  CHECK(contains(bundle.text, "But now you just need to define the "
                              "objective function."));
  CHECK(contains(bundle.text,
                 "Description of Objective Function: " + haus_paragraphs()[0]));
  CHECK(contains(bundle.text,
                 "from the continuous (or integer) variables ['trucks', "
                 "'aeroplanes', 'ships', 'trains']"));
  CHECK(contains(bundle.text,
                 "should only include the words \"Maximize\" or \"Minimize\" "
                 "and an expression."));
  CHECK(contains(bundle.text,
                 "the difference between the selling price and the cost of "
                 "the product should be used to calculate the profit value."));
  CHECK(!contains(bundle.text, "bi_"));
}

TEST_CASE("weighted-bound generation prompt embeds template and list") {
  PromptBundle bundle = build_generation_prompt(
      haus_description(), haus_paragraphs()[1], 3, kHausVars, kHausBinaries);
  CHECK(bundle.expected_reply == ReplyKind::kConstraint);
  CHECK(contains(bundle.text, "But now you just need to define a single "
                              "constraint of the model."));
  CHECK(contains(bundle.text,
                 "Constraint Description: " + haus_paragraphs()[1]));
  CHECK(contains(bundle.text,
                 "This constraint represents an upper bound on the weighted "
                 "sum of decision variables. The expression for the "
                 "constraint has the format \"weighted sum of variables <= "
                 "constant representing the upper bound\"."));
  CHECK(contains(bundle.text,
                 "Please find the correct parameter in the description"));
  CHECK(contains(bundle.text,
                 "Please use the variables ['trucks', 'aeroplanes', 'ships', "
                 "'trains'] to model this constraint"));
  CHECK(contains(bundle.text,
                 "Use the symbols \">=\", \"<=\", and \"=\" to denote "
                 "greater than or equal to, less than or equal to, and equal "
                 "to, respectively."));
  CHECK(contains(bundle.text,
                 "Your answer must only be a mathematical expression and do "
                 "not provide any explanation."));
  CHECK(!contains(bundle.text, "bi_"));
}

TEST_CASE("comparison generation prompt embeds the comparison wording") {
  PromptBundle bundle = build_generation_prompt(
      haus_description(), haus_paragraphs()[5], 9, kHausVars, kHausBinaries);
  CHECK(contains(bundle.text,
                 "This constraint is a comparison constraint between two "
                 "variables, expressed in a mathematical formula similar to "
                 "x <= b*y, where x and y are variables and b is a positive "
                 "constant."));
  CHECK(contains(bundle.text,
                 "Constraint Description: " + haus_paragraphs()[5]));
}

TEST_CASE("logic generation prompts use binary names and phrasing cues") {
  PromptBundle type13 = build_generation_prompt(
      haus_description(), haus_paragraphs()[3], 13, kHausVars, kHausBinaries);
  CHECK(type13.expected_reply == ReplyKind::kConstraint);
  CHECK(contains(type13.text, "But now you just need to define a single "
                              "logic constraint of the model."));
  CHECK(contains(type13.text,
                 "Please use the binary variables ['bi_trucks', "
                 "'bi_aeroplanes', 'bi_ships', 'bi_trains'] to model this "
                 "logic constraint"));
  CHECK(contains(type13.text, "Template: Consider Statements A and B"));
  CHECK(contains(type13.text, "\"At most one of A and B\""));
  CHECK(contains(type13.text,
                 "corresponds to the mathematical formula a + b <= 1"));
  CHECK(contains(type13.text,
                 "Your answer can only be a mathematical expression and do "
                 "not provide any explanation."));
  // Every referenced variable is an indicator name.
  CHECK(!contains(type13.text, "'trucks'"));
  CHECK(!contains(type13.text, "'trains'"));

  PromptBundle type10 = build_generation_prompt(
      haus_description(), haus_paragraphs()[4], 10, kHausVars, kHausBinaries);
  CHECK(contains(type10.text, "\"If A then B\" or \"If not B then not A\""));
  CHECK(contains(type10.text,
                 "corresponds to the mathematical formula a <= b"));
}

TEST_CASE("generation prompt rejects mismatched variable lists") {
  const std::string desc = haus_description();
  const std::string para = haus_paragraphs()[3];
  CHECK_THROWS_AS_CODE(build_generation_prompt(desc, para, 13, kHausVars, {}),
                       ErrorCode::kPromptContractViolation);
  CHECK_THROWS_AS_CODE(
      build_generation_prompt(desc, para, 13, kHausVars, {"trucks"}),
      ErrorCode::kPromptContractViolation);
  CHECK_THROWS_AS_CODE(
      build_generation_prompt(desc, para, 2, {}, kHausBinaries),
      ErrorCode::kPromptContractViolation);
  CHECK_THROWS_AS_CODE(
      build_generation_prompt(desc, para, 14, kHausVars, kHausBinaries),
      ErrorCode::kInvalidArgument);
  CHECK_THROWS_AS_CODE(
      build_generation_prompt(desc, "", 2, kHausVars, kHausBinaries),
      ErrorCode::kInvalidArgument);
  CHECK_THROWS_AS_CODE(
      build_generation_prompt(desc, para, 2, {"not a name"}, kHausBinaries),
      ErrorCode::kInvalidName);
}

TEST_CASE("prompt construction is deterministic") {
  for (int code : {0, 3, 9, 10, 13}) {
    PromptBundle a = build_generation_prompt(haus_description(),
                                             haus_paragraphs()[1], code,
                                             kHausVars, kHausBinaries);
    PromptBundle b = build_generation_prompt(haus_description(),
                                             haus_paragraphs()[1], code,
                                             kHausVars, kHausBinaries);
    CHECK(a.text == b.text);
  }
  CHECK(build_variable_prompt(haus_description(), false).text ==
        build_variable_prompt(haus_description(), false).text);
}

TEST_CASE("assembled prompts match their golden files") {
  struct GoldenCase {
    const char* file;
    int paragraph;
    int code;
  };
  const std::vector<GoldenCase> cases = {
      {"prompt_objective.txt", 0, 0},  {"prompt_type3_timber.txt", 1, 3},
      {"prompt_type13.txt", 3, 13},    {"prompt_type10.txt", 4, 10},
      {"prompt_type9.txt", 5, 9},
  };
  for (const GoldenCase& c : cases) {
    CAPTURE(c.file);
    PromptBundle bundle =
        build_generation_prompt(haus_description(),
                                haus_paragraphs()[static_cast<size_t>(
                                    c.paragraph)],
                                c.code, kHausVars, kHausBinaries);
    CHECK(bundle.text == read_file(golden_dir() + "/" + c.file));
  }
  CHECK(build_variable_prompt(haus_description(), false).text ==
        read_file(golden_dir() + "/prompt_variables.txt"));
}

}  // namespace
}  // namespace nl2milp
