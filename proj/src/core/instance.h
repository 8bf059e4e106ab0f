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

#ifndef NL2MILP_CORE_INSTANCE_H_
#define NL2MILP_CORE_INSTANCE_H_

#include <optional>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/ir.h"

namespace nl2milp {

// A decision problem as presented to the synthesis pipeline: one paragraph
// per model component (the objective plus each constraint), optionally
// bundled with a reference model for grading synthesized output against.
struct ProblemInstance {
  std::string id;
  std::vector<std::string> paragraphs;
  std::optional<MilpModel> ground_truth;
  // Smallest big-M for which the reference linking rows stay valid; graders
  // accept any coefficient at or above it in place of the default.
  std::optional<double> sufficient_big_m;

  // Paragraphs joined with single spaces, used as the full description in
  // prompts.
  std::string joined_description() const;

  // Index of the paragraph the reference objective comes from: the unique
  // paragraph no reference constraint points at. Throws kInvalidArgument
  // when there is no ground truth or the index is not unique.
  int truth_objective_paragraph() const;

  // Type code of the paragraph under the reference model: 0 for the
  // objective paragraph, otherwise the code of the constraint formulated
  // from it. Throws kInvalidArgument for out-of-range or unclaimed indices.
  int truth_label(int paragraph_index) const;

  // First reference constraint formulated from the given paragraph, or
  // nullptr when none is (e.g. the objective paragraph).
  const Constraint* truth_constraint(int paragraph_index) const;
};

}  // namespace nl2milp

#endif  // NL2MILP_CORE_INSTANCE_H_
