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

// Intermediate representation for mixed-integer linear programs: variables,
// affine expressions, constraints with classification tags, and whole models,
// plus the canonical form used to decide equivalence of constraints.

#ifndef NL2MILP_CORE_IR_H_
#define NL2MILP_CORE_IR_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/error.h"

namespace nl2milp {

// Comparison tolerance used wherever coefficients are compared. Two values a
// and b match when |a - b| <= tol * max(1, |a|, |b|).
inline constexpr double kDefaultTolerance = 1e-9;

// Default big-M constant for linking constraints between a quantity variable
// and its indicator.
inline constexpr double kDefaultBigM = 100000.0;

bool approx_equal(double a, double b, double tol = kDefaultTolerance);

enum class VariableKind { kContinuous, kInteger, kBinary };

const char* variable_kind_name(VariableKind kind);

// A decision variable. All variables are implicitly non-negative. Binary
// indicator variables carry the name of the quantity variable they represent
// in `linked_base`; in pure binary models the binaries stand on their own and
// `linked_base` stays empty.
struct Variable {
  std::string name;
  VariableKind kind = VariableKind::kInteger;
  std::string linked_base;
  std::optional<double> upper_bound;

  bool operator==(const Variable& other) const;
};

// One coefficient*variable term of an affine expression.
struct Term {
  std::string var;
  double coeff = 0.0;
};

// Sum of terms plus a constant. The term order is the order of insertion and
// is preserved by normalize(), so text rendered from an expression keeps the
// shape it was built or parsed with. Equality is order-insensitive.
struct AffineExpression {
  std::vector<Term> terms;
  double constant = 0.0;

  AffineExpression() = default;
  explicit AffineExpression(double c) : constant(c) {}

  // Appends a term without merging duplicates; normalize() merges.
  AffineExpression& add(const std::string& var, double coeff);

  // Summed coefficient of `var` (0 when absent).
  double coefficient(const std::string& var) const;

  bool has_terms() const { return !terms.empty(); }

  double evaluate(const std::map<std::string, double>& assignment) const;
};

// Merges duplicate variables into the first occurrence, drops zero
// coefficients, and keeps the remaining insertion order. Throws
// kInvalidExpression on non-finite coefficients or constants and
// kInvalidName on empty variable names.
AffineExpression normalize(const AffineExpression& expr);

// Order-insensitive comparison at tolerance `tol`.
bool expressions_equal(const AffineExpression& a, const AffineExpression& b,
                       double tol = kDefaultTolerance);

enum class Sense { kLe, kGe, kEq };

const char* sense_symbol(Sense sense);

enum class Direction { kMaximize, kMinimize };

struct Objective {
  Direction direction = Direction::kMaximize;
  AffineExpression expr;
};

// Classification tag of a constraint: a taxonomy code for constraints
// formulated from a description, a marker for supplemented linking rows, or
// unknown for unlabeled input.
struct ConstraintTag {
  enum class Kind { kTyped, kLinking, kUnknown };

  Kind kind = Kind::kUnknown;
  int code = -1;  // Valid only when kind == kTyped.

  static ConstraintTag typed(int code) {
    return ConstraintTag{Kind::kTyped, code};
  }
  static ConstraintTag linking() {
    return ConstraintTag{Kind::kLinking, -1};
  }
  static ConstraintTag unknown() { return ConstraintTag{}; }

  bool is_linking() const { return kind == Kind::kLinking; }
  bool operator==(const ConstraintTag& other) const {
    return kind == other.kind && code == other.code;
  }
};

// Where a constraint came from: a paragraph index of the source description,
// the linking-supplementation pass, or nowhere in particular.
struct ConstraintSource {
  enum class Kind { kParagraph, kSupplemented, kNone };

  Kind kind = Kind::kNone;
  int paragraph = -1;  // Valid only when kind == kParagraph.

  static ConstraintSource from_paragraph(int index) {
    return ConstraintSource{Kind::kParagraph, index};
  }
  static ConstraintSource supplemented() {
    return ConstraintSource{Kind::kSupplemented, -1};
  }
  static ConstraintSource none() { return ConstraintSource{}; }

  bool operator==(const ConstraintSource& other) const {
    return kind == other.kind && paragraph == other.paragraph;
  }
};

struct Constraint {
  AffineExpression lhs;
  Sense sense = Sense::kLe;
  AffineExpression rhs;
  ConstraintTag ctype;
  ConstraintSource source;
};

struct MilpModel {
  std::vector<Variable> variables;
  std::optional<Objective> objective;
  std::vector<Constraint> constraints;
  double big_m = kDefaultBigM;

  const Variable* find_variable(const std::string& name) const;
};

// Canonical constraint form: every term moved to the left-hand side, terms
// sorted by variable name, Ge flipped to Le, and coefficients scaled so the
// lexicographically first one has magnitude 1. Inequalities keep the sign of
// that lead coefficient (negating would flip the sense); equalities are
// normalized to a +1 lead.
struct CanonicalConstraint {
  std::vector<Term> terms;  // Sorted by variable name, all coefficients != 0.
  Sense sense = Sense::kLe;  // kLe or kEq only.
  double rhs = 0.0;

  bool equal(const CanonicalConstraint& other,
             double tol = kDefaultTolerance) const;
};

// Throws kDegenerateConstraint when no variable term survives normalization.
CanonicalConstraint canonicalize(const Constraint& constraint);

// True when the two constraints have the same canonical form, i.e. describe
// the same half-space or hyperplane up to positive scaling and Ge/Le
// flipping.
bool equivalent(const Constraint& a, const Constraint& b,
                double tol = kDefaultTolerance);

// Objectives are compared term by term at tolerance `tol` (scaling an
// objective changes the problem's optimum value, so no rescaling is allowed);
// the additive constant is ignored because it does not affect the argmax.
bool equivalent(const Objective& a, const Objective& b,
                double tol = kDefaultTolerance);

// Indices of constraints violated by the assignment. Every variable of the
// model must be assigned, otherwise kIncompleteAssignment is thrown.
std::vector<int> check_feasible(
    const MilpModel& model, const std::map<std::string, double>& assignment,
    double tol = kDefaultTolerance);

// Structural validation: unique well-formed variable names, the "bi_" naming
// contract for binaries, resolvable linked_base references, constraints over
// declared variables only, positive big_m, and exactly one bounding row in
// each direction for every linked (variable, indicator) pair that has linking
// rows at all. Throws kModelInconsistent / kInvalidName on violation.
void validate(const MilpModel& model);

// True when `name` is a well-formed variable identifier
// ([A-Za-z_][A-Za-z0-9_]*).
bool is_valid_identifier(const std::string& name);

}  // namespace nl2milp

#endif  // NL2MILP_CORE_IR_H_
