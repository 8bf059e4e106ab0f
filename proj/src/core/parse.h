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

// Parser and pretty-printer for the linear-expression reply grammar (see
// docs/grammar.ebnf). Completion replies, golden files, and rendered model
// text all speak this grammar, and render/parse round-trip exactly.

#ifndef NL2MILP_CORE_PARSE_H_
#define NL2MILP_CORE_PARSE_H_

#include <string>
#include <vector>

#include "core/ir.h"

namespace nl2milp {

// Diagnostics attached to reply parsing: byte offset and message of the
// failure (when any), and whether the repair pass had to strip wrapping
// prose, code fences, or trailing punctuation before the text parsed.
struct ParseDiagnostics {
  size_t position = 0;
  std::string message;
  bool recovered = false;
};

// Parses "12*trucks + 20*aeroplanes - 5" style text: a signed sum of terms,
// each a (possibly fractional) number, an identifier, or both with optional
// "*". Throws kParseError / kEmptyExpression / kInvalidExpression.
AffineExpression parse_expression(const std::string& text);

// Parses "lhs OP rhs" with OP one of <=, >=, = (Unicode <=/>= aliases
// accepted). Exactly one comparison operator must appear. The returned
// constraint carries an unknown tag and no source.
Constraint parse_constraint(const std::string& text);

// Parses "Maximize <expression>" / "Minimize <expression>" (case-insensitive;
// British spellings accepted). Throws kMissingDirection when the keyword is
// absent.
Objective parse_objective(const std::string& text);

// Extracts a bracketed list of quoted variable names, e.g.
// "['trucks', 'ships']". Wrapping prose is ignored; names may use single or
// double quotes. Throws kEmptyList for "[]", kParseError when no list is
// found, and kInvalidName for malformed names.
std::vector<std::string> parse_variable_list(const std::string& text);

// Shortest fixed-notation decimal that round-trips to `value`. The grammar
// has no exponent form, so this never emits one.
std::string format_number(double value);

// Renders in the reply grammar, preserving stored term order, so that
// parse(render(x)) reproduces x exactly.
std::string render(const AffineExpression& expr);
std::string render(const Constraint& constraint);
std::string render(const Objective& objective);

template <typename T>
struct Repaired {
  T value;
  ParseDiagnostics diagnostics;
};

// Parse a raw completion reply, falling back to a repair pass that strips
// code fences, surrounding prose lines, "Answer:"-style prefixes, and
// trailing periods. Succeeds only when exactly one candidate line parses;
// `diagnostics.recovered` records whether repair was needed.
Repaired<Constraint> parse_constraint_reply(const std::string& raw);
Repaired<Objective> parse_objective_reply(const std::string& raw);

}  // namespace nl2milp

#endif  // NL2MILP_CORE_PARSE_H_
