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

#include "core/ir.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>

namespace nl2milp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kInvalidExpression:
      return "invalid_expression";
    case ErrorCode::kInvalidName:
      return "invalid_name";
    case ErrorCode::kDegenerateConstraint:
      return "degenerate_constraint";
    case ErrorCode::kIncompleteAssignment:
      return "incomplete_assignment";
    case ErrorCode::kModelInconsistent:
      return "model_inconsistent";
    case ErrorCode::kParseError:
      return "parse_error";
    case ErrorCode::kEmptyExpression:
      return "empty_expression";
    case ErrorCode::kMissingDirection:
      return "missing_direction";
    case ErrorCode::kEmptyList:
      return "empty_list";
    case ErrorCode::kNoCrosswalk:
      return "no_crosswalk";
    case ErrorCode::kPromptContractViolation:
      return "prompt_contract_violation";
    case ErrorCode::kProviderUnavailable:
      return "provider_unavailable";
    case ErrorCode::kProviderRejected:
      return "provider_rejected";
    case ErrorCode::kProviderTimeout:
      return "provider_timeout";
    case ErrorCode::kInvalidLabel:
      return "invalid_label";
    case ErrorCode::kUnclassifiable:
      return "unclassifiable";
    case ErrorCode::kInsufficientClassData:
      return "insufficient_class_data";
    case ErrorCode::kNoVariablesFound:
      return "no_variables_found";
    case ErrorCode::kInvalidVariableSet:
      return "invalid_variable_set";
    case ErrorCode::kGenerationFailed:
      return "generation_failed";
    case ErrorCode::kDuplicateObjective:
      return "duplicate_objective";
    case ErrorCode::kMissingObjective:
      return "missing_objective";
    case ErrorCode::kAlignmentError:
      return "alignment_error";
    case ErrorCode::kSchemaError:
      return "schema_error";
    case ErrorCode::kIoError:
      return "io_error";
  }
  return "unknown";
}

ErrorCode error_code_from_name(const std::string& name) {
  static const std::unordered_map<std::string, ErrorCode> kByName = [] {
    std::unordered_map<std::string, ErrorCode> m;
    for (int i = 0; i <= static_cast<int>(ErrorCode::kIoError); ++i) {
      const ErrorCode code = static_cast<ErrorCode>(i);
      m.emplace(error_code_name(code), code);
    }
    return m;
  }();
  const auto it = kByName.find(name);
  if (it == kByName.end()) {
    throw Error(ErrorCode::kSchemaError, "unknown error code: " + name);
  }
  return it->second;
}

bool approx_equal(double a, double b, double tol) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

const char* variable_kind_name(VariableKind kind) {
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

bool Variable::operator==(const Variable& other) const {
  if (name != other.name || kind != other.kind ||
      linked_base != other.linked_base) {
    return false;
  }
  if (upper_bound.has_value() != other.upper_bound.has_value()) return false;
  return !upper_bound.has_value() ||
         approx_equal(*upper_bound, *other.upper_bound);
}

AffineExpression& AffineExpression::add(const std::string& var, double coeff) {
  terms.push_back(Term{var, coeff});
  return *this;
}

double AffineExpression::coefficient(const std::string& var) const {
  double total = 0.0;
  for (const Term& t : terms) {
    if (t.var == var) total += t.coeff;
  }
  return total;
}

double AffineExpression::evaluate(
    const std::map<std::string, double>& assignment) const {
  double value = constant;
  for (const Term& t : terms) {
    auto it = assignment.find(t.var);
    if (it == assignment.end()) {
      throw Error(ErrorCode::kIncompleteAssignment,
                  "no value assigned to variable '" + t.var + "'");
    }
    value += t.coeff * it->second;
  }
  return value;
}

AffineExpression normalize(const AffineExpression& expr) {
  if (!std::isfinite(expr.constant)) {
    throw Error(ErrorCode::kInvalidExpression,
                "expression constant is not finite");
  }
  AffineExpression out;
  out.constant = expr.constant;
  std::unordered_map<std::string, size_t> position;
  for (const Term& t : expr.terms) {
    if (t.var.empty()) {
      throw Error(ErrorCode::kInvalidName, "expression term without a name");
    }
    if (!std::isfinite(t.coeff)) {
      throw Error(ErrorCode::kInvalidExpression,
                  "coefficient of '" + t.var + "' is not finite");
    }
    auto [it, inserted] = position.emplace(t.var, out.terms.size());
    if (inserted) {
      out.terms.push_back(t);
    } else {
      out.terms[it->second].coeff += t.coeff;
    }
  }
  // Drop terms that cancelled out, keeping first-occurrence order.
  std::vector<Term> kept;
  kept.reserve(out.terms.size());
  for (const Term& t : out.terms) {
    if (!std::isfinite(t.coeff)) {
      throw Error(ErrorCode::kInvalidExpression,
                  "coefficient of '" + t.var + "' is not finite");
    }
    if (t.coeff != 0.0) kept.push_back(t);
  }
  out.terms = std::move(kept);
  return out;
}

namespace {

std::map<std::string, double> term_map(const AffineExpression& expr) {
  std::map<std::string, double> m;
  for (const Term& t : expr.terms) m[t.var] += t.coeff;
  return m;
}

bool term_maps_equal(const std::map<std::string, double>& a,
                     const std::map<std::string, double>& b, double tol) {
  for (const auto& [var, coeff] : a) {
    auto it = b.find(var);
    const double other = it == b.end() ? 0.0 : it->second;
    if (!approx_equal(coeff, other, tol)) return false;
  }
  for (const auto& [var, coeff] : b) {
    if (a.find(var) == a.end() && !approx_equal(coeff, 0.0, tol)) return false;
  }
  return true;
}

}  // namespace

bool expressions_equal(const AffineExpression& a, const AffineExpression& b,
                       double tol) {
  return approx_equal(a.constant, b.constant, tol) &&
         term_maps_equal(term_map(a), term_map(b), tol);
}

const char* sense_symbol(Sense sense) {
  switch (sense) {
    case Sense::kLe:
      return "<=";
    case Sense::kGe:
      return ">=";
    case Sense::kEq:
      return "=";
  }
  return "?";
}

const Variable* MilpModel::find_variable(const std::string& name) const {
  for (const Variable& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

bool CanonicalConstraint::equal(const CanonicalConstraint& other,
                                double tol) const {
  if (sense != other.sense || terms.size() != other.terms.size()) return false;
  if (!approx_equal(rhs, other.rhs, tol)) return false;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].var != other.terms[i].var) return false;
    if (!approx_equal(terms[i].coeff, other.terms[i].coeff, tol)) return false;
  }
  return true;
}

CanonicalConstraint canonicalize(const Constraint& constraint) {
  // Move everything to the left: lhs - rhs (sense) 0.
  AffineExpression diff;
  diff.constant = constraint.lhs.constant - constraint.rhs.constant;
  diff.terms = constraint.lhs.terms;
  for (const Term& t : constraint.rhs.terms) diff.add(t.var, -t.coeff);
  diff = normalize(diff);

  if (diff.terms.empty()) {
    throw Error(ErrorCode::kDegenerateConstraint,
                "constraint has no variable terms after normalization");
  }

  CanonicalConstraint canon;
  canon.terms = diff.terms;
  std::sort(canon.terms.begin(), canon.terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  canon.rhs = -diff.constant;
  canon.sense = constraint.sense;

  if (canon.sense == Sense::kGe) {
    for (Term& t : canon.terms) t.coeff = -t.coeff;
    canon.rhs = -canon.rhs;
    canon.sense = Sense::kLe;
  }

  // Scale so the lead coefficient has magnitude 1. Inequalities may only be
  // scaled by a positive factor, so the lead keeps its sign; equalities are
  // sign-symmetric and get a +1 lead.
  const double lead = canon.terms.front().coeff;
  const double scale =
      canon.sense == Sense::kEq ? 1.0 / lead : 1.0 / std::fabs(lead);
  for (Term& t : canon.terms) t.coeff *= scale;
  canon.rhs *= scale;
  return canon;
}

bool equivalent(const Constraint& a, const Constraint& b, double tol) {
  return canonicalize(a).equal(canonicalize(b), tol);
}

bool equivalent(const Objective& a, const Objective& b, double tol) {
  if (a.direction != b.direction) return false;
  // The additive constant shifts the optimum value but not the optimizer, so
  // it is not part of the comparison. Coefficients must match as stated:
  // rescaling an objective is a different model even though the argmax
  // agrees.
  return term_maps_equal(term_map(normalize(a.expr)), term_map(normalize(b.expr)),
                         tol);
}

std::vector<int> check_feasible(
    const MilpModel& model, const std::map<std::string, double>& assignment,
    double tol) {
  for (const Variable& v : model.variables) {
    if (assignment.find(v.name) == assignment.end()) {
      throw Error(ErrorCode::kIncompleteAssignment,
                  "no value assigned to variable '" + v.name + "'");
    }
  }
  std::vector<int> violated;
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const Constraint& c = model.constraints[i];
    const double lhs = c.lhs.evaluate(assignment);
    const double rhs = c.rhs.evaluate(assignment);
    const double slack = tol * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    bool ok = true;
    switch (c.sense) {
      case Sense::kLe:
        ok = lhs <= rhs + slack;
        break;
      case Sense::kGe:
        ok = lhs + slack >= rhs;
        break;
      case Sense::kEq:
        ok = std::fabs(lhs - rhs) <= slack;
        break;
    }
    if (!ok) violated.push_back(static_cast<int>(i));
  }
  return violated;
}

bool is_valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') {
    return false;
  }
  for (char ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
      return false;
    }
  }
  return true;
}

namespace {

bool starts_with_bi(const std::string& name) {
  return name.rfind("bi_", 0) == 0;
}

void validate_expression_vars(const MilpModel& model,
                              const AffineExpression& expr,
                              const std::string& where) {
  for (const Term& t : expr.terms) {
    if (model.find_variable(t.var) == nullptr) {
      throw Error(ErrorCode::kModelInconsistent,
                  where + " references undeclared variable '" + t.var + "'");
    }
  }
}

}  // namespace

void validate(const MilpModel& model) {
  if (!(model.big_m > 0.0) || !std::isfinite(model.big_m)) {
    throw Error(ErrorCode::kModelInconsistent, "big_m must be positive");
  }

  std::set<std::string> seen;
  for (const Variable& v : model.variables) {
    if (!is_valid_identifier(v.name)) {
      throw Error(ErrorCode::kInvalidName,
                  "variable name '" + v.name + "' is not a valid identifier");
    }
    if (!seen.insert(v.name).second) {
      throw Error(ErrorCode::kModelInconsistent,
                  "duplicate variable '" + v.name + "'");
    }
    const bool bi_named = starts_with_bi(v.name);
    if (bi_named != (v.kind == VariableKind::kBinary)) {
      throw Error(ErrorCode::kInvalidName,
                  "variable '" + v.name +
                      "' violates the \"bi_\" naming contract for binaries");
    }
    if (!v.linked_base.empty()) {
      if (v.kind != VariableKind::kBinary) {
        throw Error(ErrorCode::kModelInconsistent,
                    "non-binary variable '" + v.name + "' has a linked base");
      }
      const Variable* base = model.find_variable(v.linked_base);
      if (base == nullptr) {
        throw Error(ErrorCode::kModelInconsistent,
                    "indicator '" + v.name + "' links to unknown variable '" +
                        v.linked_base + "'");
      }
      if (base->kind == VariableKind::kBinary) {
        throw Error(ErrorCode::kModelInconsistent,
                    "indicator '" + v.name + "' links to a binary variable");
      }
    }
    if (v.upper_bound.has_value() &&
        (!std::isfinite(*v.upper_bound) || *v.upper_bound < 0.0)) {
      throw Error(ErrorCode::kModelInconsistent,
                  "upper bound of '" + v.name + "' must be non-negative");
    }
  }

  if (model.objective.has_value()) {
    validate_expression_vars(model, model.objective->expr, "objective");
  }

  // Linking rows per indicator: sign of the indicator coefficient in the
  // canonical form tells the direction (negative: quantity bounded by the
  // indicator; positive: indicator bounded by the quantity). Every linked
  // pair with any linking rows must have exactly one of each.
  std::map<std::string, std::pair<int, int>> link_rows;  // name -> (neg, pos)
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const Constraint& c = model.constraints[i];
    validate_expression_vars(model, c.lhs,
                             "constraint #" + std::to_string(i) + " lhs");
    validate_expression_vars(model, c.rhs,
                             "constraint #" + std::to_string(i) + " rhs");
    if (!c.ctype.is_linking()) continue;

    CanonicalConstraint canon;
    try {
      canon = canonicalize(c);
    } catch (const Error&) {
      throw Error(ErrorCode::kModelInconsistent,
                  "linking constraint #" + std::to_string(i) +
                      " is degenerate");
    }
    if (canon.sense != Sense::kLe || canon.terms.size() != 2 ||
        !approx_equal(canon.rhs, 0.0)) {
      throw Error(ErrorCode::kModelInconsistent,
                  "linking constraint #" + std::to_string(i) +
                      " is not a two-variable bounding row");
    }
    const Variable* first = model.find_variable(canon.terms[0].var);
    const Variable* second = model.find_variable(canon.terms[1].var);
    const Variable* indicator =
        first->kind == VariableKind::kBinary ? first : second;
    const Variable* base = indicator == first ? second : first;
    if (indicator->kind != VariableKind::kBinary ||
        indicator->linked_base != base->name) {
      throw Error(ErrorCode::kModelInconsistent,
                  "linking constraint #" + std::to_string(i) +
                      " does not connect an indicator to its base");
    }
    const double ind_coeff = indicator == first ? canon.terms[0].coeff
                                                : canon.terms[1].coeff;
    auto& counts = link_rows[indicator->name];
    if (ind_coeff < 0.0) {
      ++counts.first;
    } else {
      ++counts.second;
    }
  }
  for (const auto& [name, counts] : link_rows) {
    if (counts.first != 1 || counts.second != 1) {
      throw Error(ErrorCode::kModelInconsistent,
                  "indicator '" + name +
                      "' must have exactly one linking row in each direction");
    }
  }
}

}  // namespace nl2milp
