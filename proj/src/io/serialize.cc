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

#include "io/serialize.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/parse.h"

namespace nl2milp {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& require_key(const json& doc, const char* key, const char* where) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaError,
                std::string(where) + " must be a JSON object");
  }
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw Error(ErrorCode::kSchemaError,
                std::string(where) + " is missing \"" + key + "\"");
  }
  return *it;
}

std::string require_string(const json& doc, const char* key,
                           const char* where) {
  const json& value = require_key(doc, key, where);
  if (!value.is_string()) {
    throw Error(ErrorCode::kSchemaError, std::string(where) + " \"" + key +
                                             "\" must be a string");
  }
  return value.get<std::string>();
}

double require_number(const json& doc, const char* key, const char* where) {
  const json& value = require_key(doc, key, where);
  if (!value.is_number()) {
    throw Error(ErrorCode::kSchemaError, std::string(where) + " \"" + key +
                                             "\" must be a number");
  }
  return value.get<double>();
}

int require_int(const json& doc, const char* key, const char* where) {
  const json& value = require_key(doc, key, where);
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::kSchemaError, std::string(where) + " \"" + key +
                                             "\" must be an integer");
  }
  return value.get<int>();
}

bool require_bool(const json& doc, const char* key, const char* where) {
  const json& value = require_key(doc, key, where);
  if (!value.is_boolean()) {
    throw Error(ErrorCode::kSchemaError, std::string(where) + " \"" + key +
                                             "\" must be a boolean");
  }
  return value.get<bool>();
}

const json& require_array(const json& doc, const char* key,
                          const char* where) {
  const json& value = require_key(doc, key, where);
  if (!value.is_array()) {
    throw Error(ErrorCode::kSchemaError, std::string(where) + " \"" + key +
                                             "\" must be an array");
  }
  return value;
}

ordered_json expression_to_json(const AffineExpression& expr) {
  ordered_json terms = ordered_json::array();
  for (const Term& t : expr.terms) {
    ordered_json term;
    term["var"] = t.var;
    term["coeff"] = t.coeff;
    terms.push_back(std::move(term));
  }
  ordered_json doc;
  doc["terms"] = std::move(terms);
  doc["constant"] = expr.constant;
  return doc;
}

AffineExpression expression_from_json(const json& doc) {
  AffineExpression expr;
  for (const json& t : require_array(doc, "terms", "expression")) {
    expr.add(require_string(t, "var", "term"),
             require_number(t, "coeff", "term"));
  }
  expr.constant = require_number(doc, "constant", "expression");
  return expr;
}

const char* direction_label(Direction direction) {
  return direction == Direction::kMaximize ? "maximize" : "minimize";
}

ordered_json objective_to_json(const Objective& objective) {
  ordered_json doc;
  doc["direction"] = direction_label(objective.direction);
  doc["expr"] = expression_to_json(objective.expr);
  return doc;
}

Objective objective_from_json(const json& doc) {
  Objective objective;
  const std::string direction = require_string(doc, "direction", "objective");
  if (direction == "maximize") {
    objective.direction = Direction::kMaximize;
  } else if (direction == "minimize") {
    objective.direction = Direction::kMinimize;
  } else {
    throw Error(ErrorCode::kSchemaError,
                "objective \"direction\" must be \"maximize\" or "
                "\"minimize\", got \"" +
                    direction + "\"");
  }
  objective.expr = expression_from_json(require_key(doc, "expr", "objective"));
  return objective;
}

Sense sense_from_symbol(const std::string& symbol) {
  if (symbol == "<=") return Sense::kLe;
  if (symbol == ">=") return Sense::kGe;
  if (symbol == "=") return Sense::kEq;
  throw Error(ErrorCode::kSchemaError,
              "constraint \"sense\" must be \"<=\", \">=\", or \"=\", got \"" +
                  symbol + "\"");
}

ordered_json constraint_to_json(const Constraint& constraint) {
  ordered_json doc;
  doc["lhs"] = expression_to_json(constraint.lhs);
  doc["sense"] = sense_symbol(constraint.sense);
  doc["rhs"] = expression_to_json(constraint.rhs);
  switch (constraint.ctype.kind) {
    case ConstraintTag::Kind::kTyped:
      doc["type"] = constraint.ctype.code;
      break;
    case ConstraintTag::Kind::kLinking:
      doc["type"] = "linking";
      break;
    case ConstraintTag::Kind::kUnknown:
      doc["type"] = "unknown";
      break;
  }
  switch (constraint.source.kind) {
    case ConstraintSource::Kind::kParagraph:
      doc["source"] = constraint.source.paragraph;
      break;
    case ConstraintSource::Kind::kSupplemented:
      doc["source"] = "supplemented";
      break;
    case ConstraintSource::Kind::kNone:
      doc["source"] = nullptr;
      break;
  }
  return doc;
}

Constraint constraint_from_json(const json& doc) {
  Constraint constraint;
  constraint.lhs = expression_from_json(require_key(doc, "lhs", "constraint"));
  constraint.sense =
      sense_from_symbol(require_string(doc, "sense", "constraint"));
  constraint.rhs = expression_from_json(require_key(doc, "rhs", "constraint"));
  const json& type = require_key(doc, "type", "constraint");
  if (type.is_number_integer()) {
    constraint.ctype = ConstraintTag::typed(type.get<int>());
  } else if (type == "linking") {
    constraint.ctype = ConstraintTag::linking();
  } else if (type == "unknown") {
    constraint.ctype = ConstraintTag::unknown();
  } else {
    throw Error(ErrorCode::kSchemaError,
                "constraint \"type\" must be a type code, \"linking\", or "
                "\"unknown\"");
  }
  const json& source = require_key(doc, "source", "constraint");
  if (source.is_number_integer()) {
    constraint.source = ConstraintSource::from_paragraph(source.get<int>());
  } else if (source.is_null()) {
    constraint.source = ConstraintSource::none();
  } else if (source == "supplemented") {
    constraint.source = ConstraintSource::supplemented();
  } else {
    throw Error(ErrorCode::kSchemaError,
                "constraint \"source\" must be a paragraph index, "
                "\"supplemented\", or null");
  }
  return constraint;
}

ordered_json variable_to_json(const Variable& variable) {
  ordered_json doc;
  doc["name"] = variable.name;
  doc["kind"] = variable_kind_name(variable.kind);
  if (!variable.linked_base.empty()) doc["linked_base"] = variable.linked_base;
  if (variable.upper_bound) doc["upper_bound"] = *variable.upper_bound;
  return doc;
}

Variable variable_from_json(const json& doc) {
  Variable variable;
  variable.name = require_string(doc, "name", "variable");
  const std::string kind = require_string(doc, "kind", "variable");
  if (kind == "continuous") {
    variable.kind = VariableKind::kContinuous;
  } else if (kind == "integer") {
    variable.kind = VariableKind::kInteger;
  } else if (kind == "binary") {
    variable.kind = VariableKind::kBinary;
  } else {
    throw Error(ErrorCode::kSchemaError,
                "variable \"kind\" must be \"continuous\", \"integer\", or "
                "\"binary\", got \"" +
                    kind + "\"");
  }
  if (doc.contains("linked_base")) {
    variable.linked_base = require_string(doc, "linked_base", "variable");
  }
  if (doc.contains("upper_bound")) {
    variable.upper_bound = require_number(doc, "upper_bound", "variable");
  }
  return variable;
}

ordered_json variable_trace_to_json(const VariableStageTrace& trace) {
  ordered_json doc;
  doc["prompt"] = trace.prompt;
  doc["reply"] = trace.reply;
  doc["used_binary_fallback"] = trace.used_binary_fallback;
  doc["fallback_prompt"] = trace.fallback_prompt;
  doc["fallback_reply"] = trace.fallback_reply;
  doc["names"] = trace.names;
  return doc;
}

VariableStageTrace variable_trace_from_json(const json& doc) {
  VariableStageTrace trace;
  trace.prompt = require_string(doc, "prompt", "variable trace");
  trace.reply = require_string(doc, "reply", "variable trace");
  trace.used_binary_fallback =
      require_bool(doc, "used_binary_fallback", "variable trace");
  trace.fallback_prompt =
      require_string(doc, "fallback_prompt", "variable trace");
  trace.fallback_reply = require_string(doc, "fallback_reply", "variable trace");
  for (const json& name : require_array(doc, "names", "variable trace")) {
    if (!name.is_string()) {
      throw Error(ErrorCode::kSchemaError,
                  "variable trace \"names\" must contain strings");
    }
    trace.names.push_back(name.get<std::string>());
  }
  return trace;
}

ordered_json paragraph_trace_to_json(const ParagraphTrace& trace) {
  ordered_json doc;
  doc["index"] = trace.index;
  doc["paragraph"] = trace.paragraph;
  doc["classification_prompt"] = trace.classification_prompt;
  doc["classification_reply"] = trace.classification_reply;
  doc["label"] = trace.label;
  doc["generation_prompt"] = trace.generation_prompt;
  doc["generation_reply"] = trace.generation_reply;
  doc["repaired"] = trace.repaired;
  if (trace.objective) doc["objective"] = objective_to_json(*trace.objective);
  if (trace.constraint) {
    doc["constraint"] = constraint_to_json(*trace.constraint);
  }
  return doc;
}

ParagraphTrace paragraph_trace_from_json(const json& doc) {
  ParagraphTrace trace;
  trace.index = require_int(doc, "index", "paragraph trace");
  trace.paragraph = require_string(doc, "paragraph", "paragraph trace");
  trace.classification_prompt =
      require_string(doc, "classification_prompt", "paragraph trace");
  trace.classification_reply =
      require_string(doc, "classification_reply", "paragraph trace");
  trace.label = require_int(doc, "label", "paragraph trace");
  trace.generation_prompt =
      require_string(doc, "generation_prompt", "paragraph trace");
  trace.generation_reply =
      require_string(doc, "generation_reply", "paragraph trace");
  trace.repaired = require_bool(doc, "repaired", "paragraph trace");
  if (doc.contains("objective")) {
    trace.objective = objective_from_json(doc["objective"]);
  }
  if (doc.contains("constraint")) {
    trace.constraint = constraint_from_json(doc["constraint"]);
  }
  return trace;
}

ordered_json trace_to_json(const SynthesisTrace& trace) {
  ordered_json doc;
  doc["variables"] = variable_trace_to_json(trace.variables);
  ordered_json paragraphs = ordered_json::array();
  for (const ParagraphTrace& p : trace.paragraphs) {
    paragraphs.push_back(paragraph_trace_to_json(p));
  }
  doc["paragraphs"] = std::move(paragraphs);
  ordered_json supplemented = ordered_json::array();
  for (const Constraint& c : trace.supplemented) {
    supplemented.push_back(constraint_to_json(c));
  }
  doc["supplemented"] = std::move(supplemented);
  return doc;
}

SynthesisTrace trace_from_json(const json& doc) {
  SynthesisTrace trace;
  trace.variables =
      variable_trace_from_json(require_key(doc, "variables", "trace"));
  for (const json& p : require_array(doc, "paragraphs", "trace")) {
    trace.paragraphs.push_back(paragraph_trace_from_json(p));
  }
  for (const json& c : require_array(doc, "supplemented", "trace")) {
    trace.supplemented.push_back(constraint_from_json(c));
  }
  return trace;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "failed reading " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  }
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

json parse_json_file(const std::string& path) {
  json doc = json::parse(read_text_file(path), nullptr,
                         /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kSchemaError, path + " is not valid JSON");
  }
  return doc;
}

std::string canonical_dump(const ordered_json& doc) {
  return doc.dump(2) + "\n";
}

// Terms in "coeff name" style: "12 trucks + 20 aeroplanes - ships".
std::string lp_terms(const std::vector<Term>& terms) {
  std::string out;
  for (const Term& t : terms) {
    const double magnitude = std::fabs(t.coeff);
    if (out.empty()) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    if (magnitude != 1.0) {
      out += format_number(magnitude);
      out += " ";
    }
    out += t.var;
  }
  return out;
}

std::string latex_name(const std::string& name) {
  std::string escaped;
  for (const char ch : name) {
    if (ch == '_') escaped += '\\';
    escaped += ch;
  }
  return "\\mathit{" + escaped + "}";
}

std::string latex_expression(const AffineExpression& expr) {
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
      out += " \\cdot ";
    }
    out += latex_name(t.var);
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

const char* latex_sense(Sense sense) {
  switch (sense) {
    case Sense::kLe:
      return "\\le";
    case Sense::kGe:
      return "\\ge";
    case Sense::kEq:
      return "=";
  }
  return "?";
}

}  // namespace

ordered_json model_to_json(const MilpModel& model) {
  ordered_json doc;
  ordered_json variables = ordered_json::array();
  for (const Variable& v : model.variables) {
    variables.push_back(variable_to_json(v));
  }
  doc["variables"] = std::move(variables);
  if (model.objective) doc["objective"] = objective_to_json(*model.objective);
  ordered_json constraints = ordered_json::array();
  for (const Constraint& c : model.constraints) {
    constraints.push_back(constraint_to_json(c));
  }
  doc["constraints"] = std::move(constraints);
  doc["big_m"] = model.big_m;
  return doc;
}

MilpModel model_from_json(const json& doc) {
  MilpModel model;
  for (const json& v : require_array(doc, "variables", "model")) {
    model.variables.push_back(variable_from_json(v));
  }
  if (doc.contains("objective")) {
    model.objective = objective_from_json(doc["objective"]);
  }
  for (const json& c : require_array(doc, "constraints", "model")) {
    model.constraints.push_back(constraint_from_json(c));
  }
  if (doc.contains("big_m")) {
    model.big_m = require_number(doc, "big_m", "model");
  }
  return model;
}

ordered_json instance_to_json(const ProblemInstance& instance) {
  ordered_json doc;
  doc["id"] = instance.id;
  doc["paragraphs"] = instance.paragraphs;
  if (instance.sufficient_big_m) {
    doc["sufficient_big_m"] = *instance.sufficient_big_m;
  }
  if (instance.ground_truth) {
    doc["ground_truth"] = model_to_json(*instance.ground_truth);
  }
  return doc;
}

ProblemInstance instance_from_json(const json& doc) {
  ProblemInstance instance;
  instance.id = require_string(doc, "id", "instance");
  for (const json& p : require_array(doc, "paragraphs", "instance")) {
    if (!p.is_string()) {
      throw Error(ErrorCode::kSchemaError,
                  "instance \"paragraphs\" must contain strings");
    }
    instance.paragraphs.push_back(p.get<std::string>());
  }
  if (doc.contains("sufficient_big_m")) {
    instance.sufficient_big_m =
        require_number(doc, "sufficient_big_m", "instance");
  }
  if (doc.contains("ground_truth")) {
    instance.ground_truth = model_from_json(doc["ground_truth"]);
  }
  return instance;
}

ordered_json result_to_json(const SynthesisResult& result) {
  ordered_json doc;
  doc["ok"] = result.ok;
  if (result.ok) {
    doc["model"] = model_to_json(result.model);
  } else {
    ordered_json error;
    error["code"] = error_code_name(result.code);
    error["message"] = result.message;
    error["paragraph"] = result.failed_paragraph;
    doc["error"] = std::move(error);
  }
  doc["trace"] = trace_to_json(result.trace);
  return doc;
}

SynthesisResult result_from_json(const json& doc) {
  SynthesisResult result;
  result.ok = require_bool(doc, "ok", "result");
  if (result.ok) {
    result.model = model_from_json(require_key(doc, "model", "result"));
  } else {
    const json& error = require_key(doc, "error", "result");
    result.code = error_code_from_name(require_string(error, "code", "error"));
    result.message = require_string(error, "message", "error");
    result.failed_paragraph = require_int(error, "paragraph", "error");
  }
  result.trace = trace_from_json(require_key(doc, "trace", "result"));
  return result;
}

ProblemInstance load_instance(const std::string& path) {
  return instance_from_json(parse_json_file(path));
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
  write_text_file(path, canonical_dump(instance_to_json(instance)));
}

MilpModel load_model(const std::string& path) {
  return model_from_json(parse_json_file(path));
}

void save_model(const MilpModel& model, const std::string& path) {
  write_text_file(path, canonical_dump(model_to_json(model)));
}

SynthesisResult load_result(const std::string& path) {
  return result_from_json(parse_json_file(path));
}

void save_result(const SynthesisResult& result, const std::string& path) {
  write_text_file(path, canonical_dump(result_to_json(result)));
}

std::string emit_lp(const MilpModel& model) {
  if (!model.objective) {
    throw Error(ErrorCode::kMissingObjective,
                "cannot emit a model without an objective");
  }
  std::string out;
  out += model.objective->direction == Direction::kMaximize ? "Maximize\n"
                                                            : "Minimize\n";
  const AffineExpression objective = normalize(model.objective->expr);
  std::string objective_text = lp_terms(objective.terms);
  if (objective_text.empty()) {
    objective_text = format_number(objective.constant);
  } else if (objective.constant != 0.0) {
    objective_text += objective.constant < 0 ? " - " : " + ";
    objective_text += format_number(std::fabs(objective.constant));
  }
  out += " obj: " + objective_text + "\n";
  out += "Subject To\n";
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const Constraint& c = model.constraints[i];
    AffineExpression net = c.lhs;
    for (const Term& t : c.rhs.terms) net.add(t.var, -t.coeff);
    net = normalize(net);
    if (net.terms.empty()) {
      throw Error(ErrorCode::kDegenerateConstraint,
                  "constraint #" + std::to_string(i) +
                      " has no variable terms to emit");
    }
    out += " c" + std::to_string(i + 1) + ": " + lp_terms(net.terms) + " " +
           sense_symbol(c.sense) + " " +
           format_number(c.rhs.constant - c.lhs.constant) + "\n";
  }
  std::string bounds;
  for (const Variable& v : model.variables) {
    if (v.upper_bound) {
      bounds += " " + v.name + " <= " + format_number(*v.upper_bound) + "\n";
    }
  }
  if (!bounds.empty()) out += "Bounds\n" + bounds;
  std::string generals;
  std::string binaries;
  for (const Variable& v : model.variables) {
    if (v.kind == VariableKind::kInteger) generals += " " + v.name + "\n";
    if (v.kind == VariableKind::kBinary) binaries += " " + v.name + "\n";
  }
  if (!generals.empty()) out += "Generals\n" + generals;
  if (!binaries.empty()) out += "Binaries\n" + binaries;
  out += "End\n";
  return out;
}

std::string emit_latex(const MilpModel& model) {
  if (!model.objective) {
    throw Error(ErrorCode::kMissingObjective,
                "cannot emit a model without an objective");
  }
  std::vector<std::string> rows;
  rows.push_back(std::string(model.objective->direction == Direction::kMaximize
                                 ? "\\max\\quad & "
                                 : "\\min\\quad & ") +
                 latex_expression(model.objective->expr));
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const Constraint& c = model.constraints[i];
    rows.push_back(std::string(i == 0 ? "\\text{s.t.}\\quad & " : "& ") +
                   latex_expression(c.lhs) + " " + latex_sense(c.sense) + " " +
                   latex_expression(c.rhs));
  }
  std::string out = "\\begin{align}\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    out += rows[i];
    if (i + 1 < rows.size()) out += " \\\\";
    out += "\n";
  }
  out += "\\end{align}\n";
  return out;
}

}  // namespace nl2milp
