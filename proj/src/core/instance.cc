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

#include "core/instance.h"

#include <vector>

namespace nl2milp {

std::string ProblemInstance::joined_description() const {
  std::string out;
  for (const std::string& paragraph : paragraphs) {
    if (!out.empty()) out += ' ';
    out += paragraph;
  }
  return out;
}

int ProblemInstance::truth_objective_paragraph() const {
  if (!ground_truth.has_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance '" + id + "' has no ground truth");
  }
  std::vector<bool> claimed(paragraphs.size(), false);
  for (const Constraint& constraint : ground_truth->constraints) {
    if (constraint.source.kind != ConstraintSource::Kind::kParagraph) {
      continue;
    }
    const int index = constraint.source.paragraph;
    if (index < 0 || index >= static_cast<int>(paragraphs.size())) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instance '" + id + "' has a constraint pointing at " +
                      "paragraph " + std::to_string(index));
    }
    claimed[index] = true;
  }
  int objective_paragraph = -1;
  for (size_t i = 0; i < claimed.size(); ++i) {
    if (claimed[i]) continue;
    if (objective_paragraph >= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instance '" + id + "' has several unclaimed paragraphs");
    }
    objective_paragraph = static_cast<int>(i);
  }
  if (objective_paragraph < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance '" + id + "' has no unclaimed paragraph");
  }
  return objective_paragraph;
}

int ProblemInstance::truth_label(int paragraph_index) const {
  if (paragraph_index < 0 ||
      paragraph_index >= static_cast<int>(paragraphs.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "paragraph index out of range: " +
                    std::to_string(paragraph_index));
  }
  if (paragraph_index == truth_objective_paragraph()) return 0;
  const Constraint* constraint = truth_constraint(paragraph_index);
  if (constraint == nullptr ||
      constraint->ctype.kind != ConstraintTag::Kind::kTyped) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance '" + id + "' has no typed constraint for " +
                    "paragraph " + std::to_string(paragraph_index));
  }
  return constraint->ctype.code;
}

const Constraint* ProblemInstance::truth_constraint(
    int paragraph_index) const {
  if (!ground_truth.has_value()) return nullptr;
  for (const Constraint& constraint : ground_truth->constraints) {
    if (constraint.source ==
        ConstraintSource::from_paragraph(paragraph_index)) {
      return &constraint;
    }
  }
  return nullptr;
}

}  // namespace nl2milp
