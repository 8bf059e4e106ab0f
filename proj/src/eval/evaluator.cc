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

#include "eval/evaluator.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "core/parse.h"

namespace nl2milp {

namespace {

// A two-variable bounding row in normal form: `bounded <= coeff * bounding`.
struct LinkRow {
  std::string indicator;
  std::string base;
  bool caps_base = false;  // true: base <= coeff*indicator; false: reverse.
  double coeff = 0.0;
  bool matched = false;
};

std::string describe(const LinkRow& row) {
  if (row.caps_base) {
    return row.base + " <= " + format_number(row.coeff) + "*" + row.indicator;
  }
  return row.indicator + " <= " + format_number(row.coeff) + "*" + row.base;
}

// Interprets a linking constraint relative to its own model's variables.
std::optional<LinkRow> link_signature(const Constraint& constraint,
                                      const MilpModel& model) {
  if (constraint.sense == Sense::kEq) return std::nullopt;
  std::map<std::string, double> net;
  for (const Term& term : constraint.lhs.terms) net[term.var] += term.coeff;
  for (const Term& term : constraint.rhs.terms) net[term.var] -= term.coeff;
  double constant = constraint.lhs.constant - constraint.rhs.constant;
  if (constraint.sense == Sense::kGe) {
    for (auto& [name, coeff] : net) coeff = -coeff;
    constant = -constant;
  }
  if (std::fabs(constant) > kDefaultTolerance) return std::nullopt;

  std::vector<std::pair<std::string, double>> vars;
  for (const auto& [name, coeff] : net) {
    if (std::fabs(coeff) > kDefaultTolerance) vars.emplace_back(name, coeff);
  }
  if (vars.size() != 2) return std::nullopt;

  const Variable* first = model.find_variable(vars[0].first);
  const Variable* second = model.find_variable(vars[1].first);
  if (first == nullptr || second == nullptr) return std::nullopt;
  const bool first_is_indicator = first->kind == VariableKind::kBinary;
  if (first_is_indicator == (second->kind == VariableKind::kBinary)) {
    return std::nullopt;  // Need exactly one indicator.
  }
  const size_t ind = first_is_indicator ? 0 : 1;
  const size_t base = 1 - ind;

  LinkRow row;
  row.indicator = vars[ind].first;
  row.base = vars[base].first;
  if (vars[base].second > 0.0 && vars[ind].second < 0.0) {
    row.caps_base = true;
    row.coeff = -vars[ind].second / vars[base].second;
  } else if (vars[ind].second > 0.0 && vars[base].second < 0.0) {
    row.caps_base = false;
    row.coeff = -vars[base].second / vars[ind].second;
  } else {
    return std::nullopt;
  }
  return row;
}

std::vector<LinkRow> linking_rows(const MilpModel& model,
                                  std::vector<std::string>* issues,
                                  const char* who) {
  std::vector<LinkRow> rows;
  for (const Constraint& constraint : model.constraints) {
    if (!constraint.ctype.is_linking()) continue;
    std::optional<LinkRow> row = link_signature(constraint, model);
    if (!row.has_value()) {
      issues->push_back(std::string(who) + " has a malformed linking row: " +
                        render(constraint));
      continue;
    }
    rows.push_back(*row);
  }
  return rows;
}

// Coefficients agree exactly, or both are big-M style at or above the
// certified sufficient value.
bool coeff_interchangeable(double a, double b,
                           const std::optional<double>& min_big_m) {
  const double tol = kDefaultTolerance * std::max({1.0, std::fabs(a),
                                                   std::fabs(b)});
  if (std::fabs(a - b) <= tol) return true;
  return min_big_m.has_value() && a >= *min_big_m && b >= *min_big_m;
}

bool match_linking(std::vector<LinkRow> actual, std::vector<LinkRow> expected,
                   const std::optional<double>& min_big_m,
                   std::vector<std::string>* issues) {
  bool all_matched = true;
  for (LinkRow& want : expected) {
    for (LinkRow& have : actual) {
      if (have.matched || have.indicator != want.indicator ||
          have.base != want.base || have.caps_base != want.caps_base ||
          !coeff_interchangeable(have.coeff, want.coeff, min_big_m)) {
        continue;
      }
      have.matched = true;
      want.matched = true;
      break;
    }
    if (!want.matched) {
      all_matched = false;
      issues->push_back("missing linking row: " + describe(want));
    }
  }
  for (const LinkRow& have : actual) {
    if (!have.matched) {
      all_matched = false;
      issues->push_back("unexpected linking row: " + describe(have));
    }
  }
  return all_matched;
}

// (name, kind, linked_base) signatures for variable-set comparison.
std::map<std::string, std::pair<VariableKind, std::string>> variable_map(
    const MilpModel& model) {
  std::map<std::string, std::pair<VariableKind, std::string>> out;
  for (const Variable& v : model.variables) {
    out[v.name] = {v.kind, v.linked_base};
  }
  return out;
}

const char* kind_name(VariableKind kind) {
  switch (kind) {
    case VariableKind::kContinuous:
      return "continuous";
    case VariableKind::kInteger:
      return "integer";
    case VariableKind::kBinary:
      return "binary";
  }
  return "unknown";
}

bool compare_variables(const MilpModel& actual, const MilpModel& expected,
                       std::vector<std::string>* issues) {
  const auto have = variable_map(actual);
  const auto want = variable_map(expected);
  bool all_match = true;
  for (const auto& [name, sig] : want) {
    auto it = have.find(name);
    if (it == have.end()) {
      issues->push_back("missing variable '" + name + "'");
      all_match = false;
    } else if (it->second != sig) {
      issues->push_back("variable '" + name + "' is " +
                        kind_name(it->second.first) + ", expected " +
                        kind_name(sig.first));
      all_match = false;
    }
  }
  for (const auto& [name, sig] : have) {
    if (want.find(name) == want.end()) {
      issues->push_back("unexpected variable '" + name + "'");
      all_match = false;
    }
  }
  return all_match;
}

bool safe_equivalent(const Constraint& a, const Constraint& b) {
  try {
    return equivalent(a, b);
  } catch (const Error&) {
    return false;  // Degenerate rows are equivalent to nothing.
  }
}

}  // namespace

double Metrics::model_accuracy() const {
  return models_total == 0 ? 0.0
                           : static_cast<double>(models_correct) /
                                 models_total;
}

double Metrics::type_accuracy() const {
  return expressions_total == 0 ? 0.0
                                : static_cast<double>(types_correct) /
                                      expressions_total;
}

double Metrics::expression_accuracy() const {
  return expressions_total == 0 ? 0.0
                                : static_cast<double>(expressions_correct) /
                                      expressions_total;
}

InstanceGrade grade_instance(const ProblemInstance& instance,
                             const SynthesisResult& run) {
  if (!instance.ground_truth.has_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance '" + instance.id + "' has no ground truth");
  }
  const MilpModel& truth = *instance.ground_truth;
  const size_t paragraph_count = instance.paragraphs.size();
  if (run.ok && run.trace.paragraphs.size() != paragraph_count) {
    throw Error(ErrorCode::kAlignmentError,
                "run has " + std::to_string(run.trace.paragraphs.size()) +
                    " paragraphs, instance '" + instance.id + "' has " +
                    std::to_string(paragraph_count));
  }

  InstanceGrade grade;
  grade.instance_id = instance.id;
  grade.synthesis_ok = run.ok;
  const int objective_paragraph = instance.truth_objective_paragraph();

  bool all_expressions = true;
  for (size_t i = 0; i < paragraph_count; ++i) {
    ParagraphGrade pg;
    pg.index = static_cast<int>(i);
    pg.is_objective = static_cast<int>(i) == objective_paragraph;
    pg.truth_label = instance.truth_label(static_cast<int>(i));

    const ParagraphTrace* traced =
        i < run.trace.paragraphs.size() ? &run.trace.paragraphs[i] : nullptr;
    if (traced != nullptr) pg.predicted_label = traced->label;
    pg.type_correct = traced != nullptr && traced->label == pg.truth_label;

    if (pg.is_objective) {
      pg.expression_correct = traced != nullptr &&
                              traced->objective.has_value() &&
                              truth.objective.has_value() &&
                              equivalent(*traced->objective, *truth.objective);
    } else {
      const Constraint* reference =
          instance.truth_constraint(static_cast<int>(i));
      pg.expression_correct = traced != nullptr &&
                              traced->constraint.has_value() &&
                              reference != nullptr &&
                              safe_equivalent(*traced->constraint, *reference);
    }

    if (!pg.type_correct) {
      grade.issues.push_back(
          "paragraph " + std::to_string(i) + " classified as " +
          (pg.predicted_label < 0 ? std::string("nothing")
                                  : std::to_string(pg.predicted_label)) +
          ", reference type is " + std::to_string(pg.truth_label));
    }
    if (!pg.expression_correct) {
      all_expressions = false;
      grade.issues.push_back("paragraph " + std::to_string(i) +
                             " expression differs from the reference");
    }
    grade.paragraphs.push_back(pg);
  }

  if (run.ok) {
    grade.variables_match =
        compare_variables(run.model, truth, &grade.issues);
    std::vector<std::string> malformed;
    const std::vector<LinkRow> actual =
        linking_rows(run.model, &malformed, "synthesized model");
    const std::vector<LinkRow> expected =
        linking_rows(truth, &malformed, "reference model");
    grade.issues.insert(grade.issues.end(), malformed.begin(),
                        malformed.end());
    grade.linking_correct =
        malformed.empty() && match_linking(actual, expected,
                                           instance.sufficient_big_m,
                                           &grade.issues);
  } else {
    grade.issues.push_back("synthesis failed: " + run.message);
  }

  grade.model_correct = run.ok && all_expressions && grade.variables_match &&
                        grade.linking_correct;
  return grade;
}

Metrics compute_metrics(const std::vector<InstanceGrade>& grades) {
  Metrics metrics;
  for (const InstanceGrade& grade : grades) {
    ++metrics.models_total;
    if (grade.model_correct) ++metrics.models_correct;
    for (const ParagraphGrade& pg : grade.paragraphs) {
      ++metrics.expressions_total;
      if (pg.type_correct) ++metrics.types_correct;
      if (pg.expression_correct) ++metrics.expressions_correct;
    }
  }
  return metrics;
}

std::string format_accuracy(int numerator, int denominator) {
  if (denominator <= 0 || numerator < 0 || numerator > denominator) {
    throw Error(ErrorCode::kInvalidArgument,
                "accuracy ratio " + std::to_string(numerator) + "/" +
                    std::to_string(denominator) + " is malformed");
  }
  // Half-up rounding at the fourth decimal, in exact integer arithmetic.
  const long long scaled =
      (2LL * numerator * 10000LL + denominator) / (2LL * denominator);
  std::string fraction = std::to_string(scaled % 10000);
  fraction.insert(0, 4 - fraction.size(), '0');
  return std::to_string(scaled / 10000) + "." + fraction;
}

std::vector<std::string> diff_models(const MilpModel& actual,
                                     const MilpModel& expected) {
  std::vector<std::string> diffs;
  compare_variables(actual, expected, &diffs);

  if (actual.objective.has_value() != expected.objective.has_value()) {
    diffs.push_back(actual.objective.has_value()
                        ? "unexpected objective: " + render(*actual.objective)
                        : "missing objective: " +
                              render(*expected.objective));
  } else if (actual.objective.has_value() &&
             !equivalent(*actual.objective, *expected.objective)) {
    diffs.push_back("objective is '" + render(*actual.objective) +
                    "', expected '" + render(*expected.objective) + "'");
  }

  std::vector<bool> claimed(actual.constraints.size(), false);
  for (const Constraint& want : expected.constraints) {
    bool found = false;
    for (size_t i = 0; i < actual.constraints.size(); ++i) {
      if (claimed[i] || !safe_equivalent(actual.constraints[i], want)) {
        continue;
      }
      claimed[i] = true;
      found = true;
      break;
    }
    if (!found) diffs.push_back("missing constraint: " + render(want));
  }
  for (size_t i = 0; i < actual.constraints.size(); ++i) {
    if (!claimed[i]) {
      diffs.push_back("unexpected constraint: " +
                      render(actual.constraints[i]));
    }
  }
  return diffs;
}

std::string render_report(const std::vector<InstanceGrade>& grades) {
  const Metrics metrics = compute_metrics(grades);
  std::ostringstream out;
  out << "instances graded: " << metrics.models_total << "\n";
  out << "expressions graded: " << metrics.expressions_total << "\n";
  auto ratio_line = [&out](const char* label, int num, int den) {
    out << label << ": " << num << "/" << den << " = "
        << (den > 0 ? format_accuracy(num, den) : "n/a") << "\n";
  };
  ratio_line("model accuracy", metrics.models_correct, metrics.models_total);
  ratio_line("type accuracy", metrics.types_correct,
             metrics.expressions_total);
  ratio_line("expression accuracy", metrics.expressions_correct,
             metrics.expressions_total);

  std::vector<const InstanceGrade*> imperfect;
  for (const InstanceGrade& grade : grades) {
    if (!grade.model_correct) imperfect.push_back(&grade);
  }
  if (imperfect.empty()) {
    out << "imperfect instances: none\n";
  } else {
    out << "imperfect instances:\n";
    for (const InstanceGrade* grade : imperfect) {
      out << "- " << grade->instance_id << "\n";
      for (const std::string& issue : grade->issues) {
        out << "    " << issue << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace nl2milp
