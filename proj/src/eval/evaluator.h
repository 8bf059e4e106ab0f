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

// Grading of synthesized models against instances with ground truth, and
// accuracy metrics over a corpus of graded runs.

#ifndef NL2MILP_EVAL_EVALUATOR_H_
#define NL2MILP_EVAL_EVALUATOR_H_

#include <string>
#include <vector>

#include "core/instance.h"
#include "core/ir.h"
#include "pipeline/pipeline.h"

namespace nl2milp {

// Verdict for one paragraph of an instance.
struct ParagraphGrade {
  int index = -1;
  int truth_label = -1;
  int predicted_label = -1;   // -1 when the run never labeled it.
  bool is_objective = false;  // Under the ground truth.
  bool type_correct = false;
  bool expression_correct = false;
};

// Verdict for one instance. A model counts as correct when synthesis
// succeeded, every paragraph's expression is equivalent to the reference,
// the variable sets agree, and the linking rows match.
struct InstanceGrade {
  std::string instance_id;
  bool synthesis_ok = false;
  std::vector<ParagraphGrade> paragraphs;
  bool variables_match = false;
  bool linking_correct = false;
  std::vector<std::string> issues;  // Human-readable mismatch notes.
  bool model_correct = false;
};

// Corpus-level counts. Accuracies are exact ratios of these integers.
struct Metrics {
  int models_total = 0;
  int models_correct = 0;
  int expressions_total = 0;  // One per paragraph, objectives included.
  int types_correct = 0;
  int expressions_correct = 0;

  double model_accuracy() const;
  double type_accuracy() const;
  double expression_accuracy() const;
};

// Grades a finished (or failed) run against the instance's ground truth.
// Paragraph verdicts align trace entries by paragraph index; anything the
// run never produced counts as wrong. Linking coefficients are compared
// exactly, except that two big-M style coefficients both at or above the
// instance's sufficient_big_m count as interchangeable. Throws
// kInvalidArgument without ground truth and kAlignmentError when a
// successful run's paragraph count differs from the instance's.
InstanceGrade grade_instance(const ProblemInstance& instance,
                             const SynthesisResult& run);

Metrics compute_metrics(const std::vector<InstanceGrade>& grades);

// "3/4" style exact ratio rendered with four decimals, ties rounding up.
std::string format_accuracy(int numerator, int denominator);

// Structural differences between two models: variables, objective,
// constraints (matched up to canonical equivalence). Empty means the models
// are equivalent.
std::vector<std::string> diff_models(const MilpModel& actual,
                                     const MilpModel& expected);

// Plain-text corpus report: metric lines plus one line per imperfect
// instance.
std::string render_report(const std::vector<InstanceGrade>& grades);

}  // namespace nl2milp

#endif  // NL2MILP_EVAL_EVALUATOR_H_
