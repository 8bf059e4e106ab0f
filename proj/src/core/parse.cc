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

#include "core/parse.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <optional>

namespace nl2milp {

namespace {

enum class TokenKind { kNumber, kIdent, kPlus, kMinus, kStar, kSense, kEnd };

struct Token {
  TokenKind kind;
  size_t position;
  double number = 0.0;
  std::string text;
  Sense sense = Sense::kLe;
};

[[noreturn]] void fail(size_t position, const std::string& message,
                       ErrorCode code = ErrorCode::kParseError) {
  throw Error(code,
              "at offset " + std::to_string(position) + ": " + message);
}

Token make_token(TokenKind kind, size_t position) {
  Token t;
  t.kind = kind;
  t.position = position;
  return t;
}

bool is_ident_start(char ch) {
  return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
}

bool is_ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> lex() {
    std::vector<Token> tokens;
    while (true) {
      skip_space();
      const size_t at = pos_;
      if (pos_ >= text_.size()) {
        tokens.push_back(make_token(TokenKind::kEnd, at));
        return tokens;
      }
      const char ch = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch)) ||
          (ch == '.' && pos_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        tokens.push_back(lex_number());
      } else if (is_ident_start(ch)) {
        size_t end = pos_;
        while (end < text_.size() && is_ident_char(text_[end])) ++end;
        Token ident = make_token(TokenKind::kIdent, at);
        ident.text = text_.substr(pos_, end - pos_);
        tokens.push_back(std::move(ident));
        pos_ = end;
      } else if (ch == '+') {
        tokens.push_back(make_token(TokenKind::kPlus, at));
        ++pos_;
      } else if (ch == '-') {
        tokens.push_back(make_token(TokenKind::kMinus, at));
        ++pos_;
      } else if (ch == '*') {
        tokens.push_back(make_token(TokenKind::kStar, at));
        ++pos_;
      } else if (ch == '<' || ch == '>') {
        if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '=') {
          fail(at, std::string("expected '") + ch + "=' comparison");
        }
        tokens.push_back(make_sense(at, ch == '<' ? Sense::kLe : Sense::kGe));
        pos_ += 2;
      } else if (ch == '=') {
        tokens.push_back(make_sense(at, Sense::kEq));
        ++pos_;
      } else if (starts_with_at(pos_, "\xE2\x89\xA4")) {  // U+2264
        tokens.push_back(make_sense(at, Sense::kLe));
        pos_ += 3;
      } else if (starts_with_at(pos_, "\xE2\x89\xA5")) {  // U+2265
        tokens.push_back(make_sense(at, Sense::kGe));
        pos_ += 3;
      } else {
        fail(at, std::string("unexpected character '") + ch + "'");
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool starts_with_at(size_t at, const char* bytes) const {
    return text_.compare(at, std::strlen(bytes), bytes) == 0;
  }

  static Token make_sense(size_t at, Sense sense) {
    Token t = make_token(TokenKind::kSense, at);
    t.sense = sense;
    return t;
  }

  double lex_decimal() {
    const size_t at = pos_;
    size_t end = pos_;
    while (end < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[end]))) {
        ++end;
      }
    }
    double value = 0.0;
    const auto result =
        std::from_chars(text_.data() + at, text_.data() + end, value);
    if (result.ec != std::errc() || result.ptr != text_.data() + end) {
      fail(at, "malformed number");
    }
    pos_ = end;
    return value;
  }

  Token lex_number() {
    const size_t at = pos_;
    double value = lex_decimal();
    // Fraction form "a/b".
    size_t peek = pos_;
    while (peek < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[peek]))) {
      ++peek;
    }
    if (peek < text_.size() && text_[peek] == '/') {
      pos_ = peek + 1;
      skip_space();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail(pos_, "expected denominator after '/'");
      }
      const double denom = lex_decimal();
      if (denom == 0.0) fail(at, "fraction with zero denominator");
      value /= denom;
    }
    Token t = make_token(TokenKind::kNumber, at);
    t.number = value;
    return t;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

// Parses tokens[begin..end) as an expression (end exclusive, not counting a
// trailing kEnd token).
AffineExpression parse_token_range(const std::vector<Token>& tokens,
                                   size_t begin, size_t end) {
  if (begin >= end) {
    throw Error(ErrorCode::kEmptyExpression, "expression is empty");
  }
  AffineExpression expr;
  size_t pos = begin;
  bool first = true;
  while (pos < end) {
    double sign = 1.0;
    if (tokens[pos].kind == TokenKind::kPlus) {
      ++pos;
    } else if (tokens[pos].kind == TokenKind::kMinus) {
      sign = -1.0;
      ++pos;
    } else if (!first) {
      fail(tokens[pos].position, "expected '+' or '-' between terms");
    }
    if (pos >= end) {
      fail(tokens.empty() ? 0 : tokens[end].position,
           "expected a term after a sign");
    }
    const Token& tok = tokens[pos];
    if (tok.kind == TokenKind::kNumber) {
      ++pos;
      double coeff = sign * tok.number;
      if (pos < end && tokens[pos].kind == TokenKind::kStar) {
        ++pos;
        if (pos >= end || tokens[pos].kind != TokenKind::kIdent) {
          fail(pos < end ? tokens[pos].position : tok.position,
               "expected a variable after '*'");
        }
        expr.add(tokens[pos].text, coeff);
        ++pos;
      } else if (pos < end && tokens[pos].kind == TokenKind::kIdent) {
        expr.add(tokens[pos].text, coeff);
        ++pos;
      } else {
        expr.constant += coeff;
      }
    } else if (tok.kind == TokenKind::kIdent) {
      expr.add(tok.text, sign);
      ++pos;
    } else {
      fail(tok.position, "expected a number or variable");
    }
    first = false;
  }
  return expr;
}

std::string trim(const std::string& text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return text.substr(begin, end - begin);
}

std::string to_lower(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return static_cast<char>(std::tolower(ch));
  });
  return out;
}

}  // namespace

AffineExpression parse_expression(const std::string& text) {
  const std::vector<Token> tokens = Lexer(text).lex();
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kSense) {
      fail(t.position, "comparison operator not allowed in an expression");
    }
  }
  return normalize(parse_token_range(tokens, 0, tokens.size() - 1));
}

Constraint parse_constraint(const std::string& text) {
  const std::vector<Token> tokens = Lexer(text).lex();
  std::optional<size_t> split;
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::kSense) continue;
    if (split.has_value()) {
      fail(tokens[i].position, "more than one comparison operator");
    }
    split = i;
  }
  if (!split.has_value()) {
    fail(tokens.empty() ? 0 : tokens.back().position,
         "expected a comparison operator (<=, >= or =)");
  }
  Constraint c;
  c.lhs = normalize(parse_token_range(tokens, 0, *split));
  c.sense = tokens[*split].sense;
  c.rhs = normalize(parse_token_range(tokens, *split + 1, tokens.size() - 1));
  return c;
}

Objective parse_objective(const std::string& text) {
  const std::string body = trim(text);
  size_t word_end = 0;
  while (word_end < body.size() &&
         std::isalpha(static_cast<unsigned char>(body[word_end]))) {
    ++word_end;
  }
  const std::string keyword = to_lower(body.substr(0, word_end));
  Objective objective;
  if (keyword == "maximize" || keyword == "maximise") {
    objective.direction = Direction::kMaximize;
  } else if (keyword == "minimize" || keyword == "minimise") {
    objective.direction = Direction::kMinimize;
  } else {
    throw Error(ErrorCode::kMissingDirection,
                "objective must start with Maximize or Minimize");
  }
  size_t rest = word_end;
  while (rest < body.size() &&
         (std::isspace(static_cast<unsigned char>(body[rest])) ||
          body[rest] == ':')) {
    ++rest;
  }
  objective.expr = parse_expression(body.substr(rest));
  if (!objective.expr.has_terms()) {
    throw Error(ErrorCode::kEmptyExpression,
                "objective has no variable terms");
  }
  return objective;
}

std::vector<std::string> parse_variable_list(const std::string& text) {
  const size_t open = text.find('[');
  if (open == std::string::npos) {
    fail(0, "no '[' list found in reply");
  }
  const size_t close = text.find(']', open);
  if (close == std::string::npos) {
    fail(open, "unterminated '[' list");
  }
  const std::string inner = trim(text.substr(open + 1, close - open - 1));
  if (inner.empty()) {
    throw Error(ErrorCode::kEmptyList, "variable list is empty");
  }
  std::vector<std::string> names;
  size_t pos = 0;
  while (pos < inner.size()) {
    while (pos < inner.size() &&
           std::isspace(static_cast<unsigned char>(inner[pos]))) {
      ++pos;
    }
    if (pos >= inner.size()) break;
    const char quote = inner[pos];
    if (quote != '\'' && quote != '"') {
      throw Error(ErrorCode::kInvalidName,
                  "variable names must be quoted with ' or \"");
    }
    const size_t name_end = inner.find(quote, pos + 1);
    if (name_end == std::string::npos) {
      throw Error(ErrorCode::kInvalidName, "unterminated quoted name");
    }
    const std::string name = inner.substr(pos + 1, name_end - pos - 1);
    if (!is_valid_identifier(name)) {
      throw Error(ErrorCode::kInvalidName,
                  "'" + name + "' is not a valid variable name");
    }
    names.push_back(name);
    pos = name_end + 1;
    while (pos < inner.size() &&
           std::isspace(static_cast<unsigned char>(inner[pos]))) {
      ++pos;
    }
    if (pos < inner.size()) {
      if (inner[pos] != ',') {
        throw Error(ErrorCode::kParseError,
                    "expected ',' between variable names");
      }
      ++pos;
    }
  }
  if (names.empty()) {
    throw Error(ErrorCode::kEmptyList, "variable list is empty");
  }
  return names;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::fixed);
  return std::string(buffer, result.ptr);
}

std::string render(const AffineExpression& expr) {
  std::string out;
  for (const Term& t : expr.terms) {
    const double magnitude = std::fabs(t.coeff);
    if (out.empty()) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    if (magnitude != 1.0) {
      out += format_number(magnitude);
      out += "*";
    }
    out += t.var;
  }
  if (expr.constant != 0.0 || out.empty()) {
    if (out.empty()) {
      out = format_number(expr.constant);
    } else {
      out += expr.constant < 0 ? " - " : " + ";
      out += format_number(std::fabs(expr.constant));
    }
  }
  return out;
}

std::string render(const Constraint& constraint) {
  return render(constraint.lhs) + " " + sense_symbol(constraint.sense) + " " +
         render(constraint.rhs);
}

std::string render(const Objective& objective) {
  return std::string(objective.direction == Direction::kMaximize
                         ? "Maximize "
                         : "Minimize ") +
         render(objective.expr);
}

namespace {

// Candidate lines for the repair pass: code fences removed, bullet prefixes
// and "label:" prefixes stripped, trailing sentence punctuation dropped.
std::vector<std::string> repair_candidates(const std::string& raw) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= raw.size()) {
    size_t nl = raw.find('\n', start);
    if (nl == std::string::npos) nl = raw.size();
    std::string line = trim(raw.substr(start, nl - start));
    start = nl + 1;
    if (line.empty()) continue;
    if (line.rfind("```", 0) == 0) continue;
    while (!line.empty() && (line.front() == '-' || line.front() == '*' ||
                             line.front() == '>')) {
      line = trim(line.substr(1));
    }
    if (line.empty()) continue;
    lines.push_back(line);
    // Also consider the part after a prose label, e.g. "Answer: x <= 3".
    const size_t colon = line.rfind(':');
    if (colon != std::string::npos && colon + 1 < line.size()) {
      lines.push_back(trim(line.substr(colon + 1)));
    }
  }
  for (std::string& line : lines) {
    while (!line.empty() && (line.back() == '.' || line.back() == ';')) {
      line = trim(line.substr(0, line.size() - 1));
    }
  }
  return lines;
}

template <typename T, typename ParseFn>
Repaired<T> parse_reply_impl(const std::string& raw, ParseFn parse_fn,
                             const char* what) {
  try {
    Repaired<T> out{parse_fn(trim(raw)), {}};
    return out;
  } catch (const Error& first_error) {
    std::vector<T> parsed;
    for (const std::string& line : repair_candidates(raw)) {
      try {
        parsed.push_back(parse_fn(line));
      } catch (const Error&) {
        // Not this line; keep scanning.
      }
    }
    if (parsed.size() == 1) {
      Repaired<T> out{std::move(parsed.front()), {}};
      out.diagnostics.recovered = true;
      out.diagnostics.message = first_error.what();
      return out;
    }
    if (parsed.size() > 1) {
      throw Error(ErrorCode::kParseError,
                  std::string("reply contains more than one ") + what);
    }
    throw;
  }
}

}  // namespace

Repaired<Constraint> parse_constraint_reply(const std::string& raw) {
  return parse_reply_impl<Constraint>(
      raw, [](const std::string& text) { return parse_constraint(text); },
      "constraint");
}

Repaired<Objective> parse_objective_reply(const std::string& raw) {
  return parse_reply_impl<Objective>(
      raw, [](const std::string& text) { return parse_objective(text); },
      "objective");
}

}  // namespace nl2milp
