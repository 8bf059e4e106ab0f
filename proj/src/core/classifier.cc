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

#include "core/classifier.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "core/prompts.h"
#include "core/taxonomy.h"
#include "json.hpp"
#include "llm/gateway.h"

namespace nl2milp {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string lowercase(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// Whole-phrase occurrence check: the cue must not sit inside a larger word
// ("total" does not match "totaling", "up to" does not match "group to").
// Boundaries are only required on ends of the cue that are themselves word
// characters, so cues like "% of" still match "40% of".
bool cue_matches(const std::string& lower_text, const std::string& cue) {
  if (cue.empty()) return false;
  size_t pos = 0;
  while ((pos = lower_text.find(cue, pos)) != std::string::npos) {
    const bool left_ok = !is_word_char(cue.front()) || pos == 0 ||
                         !is_word_char(lower_text[pos - 1]);
    const size_t end = pos + cue.size();
    const bool right_ok = !is_word_char(cue.back()) ||
                          end == lower_text.size() ||
                          !is_word_char(lower_text[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

// First matching cue from a template's list, or empty string.
std::string first_cue(const std::string& lower_text, int code) {
  for (const std::string& cue : template_for(code).cues) {
    if (cue_matches(lower_text, cue)) return cue;
  }
  return std::string();
}

// True when a clause contains a negation marker.
bool clause_negated(const std::string& clause) {
  static const char* const kMarkers[] = {"not",   "cannot", "never",
                                         "no longer", "nor"};
  for (const char* marker : kMarkers) {
    if (cue_matches(clause, marker)) return true;
  }
  return clause.find("n't") != std::string::npos;
}

// Position of a whole word in lower_text, or npos.
size_t find_word(const std::string& lower_text, const std::string& word,
                 size_t from = 0) {
  size_t pos = from;
  while ((pos = lower_text.find(word, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !is_word_char(lower_text[pos - 1]);
    const size_t end = pos + word.size();
    const bool right_ok =
        end == lower_text.size() || !is_word_char(lower_text[end]);
    if (left_ok && right_ok) return pos;
    ++pos;
  }
  return std::string::npos;
}

std::optional<RuleMatch> match_objective(const std::string& lower) {
  for (const char* word : {"maximize", "maximise", "minimize", "minimise"}) {
    if (cue_matches(lower, word)) return RuleMatch{0, word};
  }
  // Question-form objectives: "How many ... should ... ?".
  if (lower.find('?') != std::string::npos) {
    for (const char* phrase : {"how many", "how much"}) {
      if (cue_matches(lower, phrase)) return RuleMatch{0, phrase};
    }
  }
  return std::nullopt;
}

std::optional<RuleMatch> match_logic(const std::string& lower) {
  if (cue_matches(lower, "at most one of")) {
    return RuleMatch{13, "at most one of"};
  }
  if (cue_matches(lower, "at least one of")) {
    return RuleMatch{12, "at least one of"};
  }
  if (cue_matches(lower, "exactly one of") || cue_matches(lower, "only one of")) {
    return RuleMatch{11, "exactly one of"};
  }
  if (cue_matches(lower, "either") && find_word(lower, "or") !=
                                          std::string::npos) {
    if (lower.find("or both") != std::string::npos) {
      return RuleMatch{12, "either ... or ... or both"};
    }
    if (lower.find("neither") != std::string::npos) {
      return RuleMatch{13, "either ... or ... or neither"};
    }
    return RuleMatch{11, "either ... or ..."};
  }

  const size_t if_pos = find_word(lower, "if");
  if (if_pos == std::string::npos) return std::nullopt;

  // Split into the condition clause and the consequence clause: prefer an
  // explicit "then", fall back to the first comma after "if", and handle the
  // trailing-"if" order ("B if A") last.
  std::string antecedent;
  std::string consequent;
  const size_t then_pos = find_word(lower, "then", if_pos);
  const size_t comma_pos = lower.find(',', if_pos);
  if (then_pos != std::string::npos) {
    antecedent = lower.substr(if_pos, then_pos - if_pos);
    consequent = lower.substr(then_pos + 4);
  } else if (comma_pos != std::string::npos) {
    antecedent = lower.substr(if_pos, comma_pos - if_pos);
    consequent = lower.substr(comma_pos + 1);
  } else if (if_pos > 0) {
    consequent = lower.substr(0, if_pos);
    antecedent = lower.substr(if_pos);
  } else {
    antecedent = lower;
  }

  const bool neg_a = clause_negated(antecedent);
  const bool neg_c = clause_negated(consequent);
  if (neg_a && !neg_c) return RuleMatch{12, "if not ... then ..."};
  if (!neg_a && neg_c) return RuleMatch{13, "if ... then not ..."};
  if (neg_a && neg_c) return RuleMatch{10, "if not ... then not ..."};
  return RuleMatch{10, "if ... then ..."};
}

// Direction from the single-bound cue vocabularies: 1 = upper, -1 = lower,
// 0 = none. Upper cues take precedence.
int bound_direction(const std::string& lower, std::string* cue) {
  std::string hit = first_cue(lower, 1);
  if (!hit.empty()) {
    *cue = hit;
    return 1;
  }
  hit = first_cue(lower, 5);
  if (!hit.empty()) {
    *cue = hit;
    return -1;
  }
  return 0;
}

std::optional<RuleMatch> match_proportion(const std::string& lower) {
  const std::string prop_cue = first_cue(lower, 4);
  if (prop_cue.empty()) return std::nullopt;
  std::string dir_cue;
  const int dir = bound_direction(lower, &dir_cue);
  if (dir == 0) return std::nullopt;
  return RuleMatch{dir > 0 ? 4 : 8, prop_cue + " / " + dir_cue};
}

std::optional<RuleMatch> match_comparison(const std::string& lower) {
  const std::string cue = first_cue(lower, 9);
  if (cue.empty()) return std::nullopt;
  return RuleMatch{9, cue};
}

std::optional<RuleMatch> match_bound(const std::string& lower) {
  std::string dir_cue;
  const int dir = bound_direction(lower, &dir_cue);
  if (dir == 0) return std::nullopt;
  const std::string weighted_cue = first_cue(lower, 3);
  if (!weighted_cue.empty()) {
    return RuleMatch{dir > 0 ? 3 : 7, dir_cue + " / " + weighted_cue};
  }
  const std::string sum_cue = first_cue(lower, 2);
  if (!sum_cue.empty()) {
    return RuleMatch{dir > 0 ? 2 : 6, dir_cue + " / " + sum_cue};
  }
  return RuleMatch{dir > 0 ? 1 : 5, dir_cue};
}

DescriptionOrigin parse_origin(const std::string& text) {
  if (text == "nl4opt-derived") return DescriptionOrigin::kNl4OptDerived;
  if (text == "authored") return DescriptionOrigin::kAuthored;
  throw Error(ErrorCode::kSchemaError, "unknown origin '" + text + "'");
}

const char* origin_name(DescriptionOrigin origin) {
  return origin == DescriptionOrigin::kNl4OptDerived ? "nl4opt-derived"
                                                     : "authored";
}

}  // namespace

std::optional<RuleMatch> classify_rules(const std::string& text) {
  const std::string lower = lowercase(text);
  if (auto m = match_objective(lower)) return m;
  if (auto m = match_logic(lower)) return m;
  if (auto m = match_proportion(lower)) return m;
  if (auto m = match_comparison(lower)) return m;
  if (auto m = match_bound(lower)) return m;
  return std::nullopt;
}

RuleMatch classify_rules_or_throw(const std::string& text) {
  auto match = classify_rules(text);
  if (!match) {
    throw Error(ErrorCode::kUnclassifiable,
                "no cue matched: \"" + text + "\"");
  }
  return *match;
}

int parse_type_label(const std::string& reply) {
  size_t begin = reply.find_first_not_of(" \t\r\n");
  size_t end = reply.find_last_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    throw Error(ErrorCode::kInvalidLabel, "empty classifier reply");
  }
  const std::string body = reply.substr(begin, end - begin + 1);
  if (body.empty() || body.size() > 2 ||
      !std::all_of(body.begin(), body.end(), [](unsigned char c) {
        return std::isdigit(c);
      })) {
    throw Error(ErrorCode::kInvalidLabel,
                "classifier reply is not a type code: \"" + reply + "\"");
  }
  const int code = std::stoi(body);
  if (!is_valid_type_code(code)) {
    throw Error(ErrorCode::kInvalidLabel,
                "type code out of range: " + body);
  }
  return code;
}

int classify_llm(const std::string& text, Gateway& gateway) {
  const PromptBundle prompt = build_classifier_prompt(text);
  try {
    return parse_type_label(gateway.complete(prompt.text).reply);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kInvalidLabel) throw;
  }
  return parse_type_label(gateway.complete(prompt.text).reply);
}

SplitDataset split_dataset(const std::vector<LabeledDescription>& data,
                           double train_ratio, uint64_t seed) {
  if (data.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty dataset");
  }
  if (!(train_ratio > 0.0) || !(train_ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "train_ratio must lie strictly between 0 and 1");
  }

  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < data.size(); ++i) {
    if (!is_valid_type_code(data[i].label)) {
      throw Error(ErrorCode::kInvalidLabel,
                  "label out of range: " + std::to_string(data[i].label));
    }
    by_class[data[i].label].push_back(i);
  }
  for (const auto& [label, members] : by_class) {
    if (members.size() < 2) {
      throw Error(ErrorCode::kInsufficientClassData,
                  "class " + std::to_string(label) +
                      " has fewer than two items");
    }
  }

  const size_t total = data.size();
  const size_t train_target =
      static_cast<size_t>(std::llround(train_ratio * total));
  const size_t val_target = total - train_target;

  // Largest-remainder apportionment of the validation quota.
  struct Quota {
    int label;
    size_t size;
    size_t assigned;
    double remainder;
  };
  std::vector<Quota> quotas;
  size_t assigned_total = 0;
  for (const auto& [label, members] : by_class) {
    const double exact = (1.0 - train_ratio) * members.size();
    size_t assigned = static_cast<size_t>(exact);
    if (assigned > members.size() - 1) assigned = members.size() - 1;
    quotas.push_back(Quota{label, members.size(), assigned,
                           exact - static_cast<double>(assigned)});
    assigned_total += assigned;
  }
  std::vector<size_t> order(quotas.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&quotas](size_t a, size_t b) {
    if (quotas[a].remainder != quotas[b].remainder) {
      return quotas[a].remainder > quotas[b].remainder;
    }
    return quotas[a].label < quotas[b].label;
  });
  size_t cursor = 0;
  size_t stalled = 0;
  while (assigned_total < val_target && stalled < order.size()) {
    Quota& q = quotas[order[cursor]];
    if (q.assigned < q.size - 1) {
      ++q.assigned;
      ++assigned_total;
      stalled = 0;
    } else {
      ++stalled;
    }
    cursor = (cursor + 1) % order.size();
  }

  // Seeded per-class selection; classes processed in ascending label order
  // so the choice is independent of map iteration quirks.
  std::mt19937_64 eng(seed);
  std::vector<bool> in_validation(total, false);
  for (Quota& q : quotas) {
    std::vector<size_t> members = by_class[q.label];
    for (size_t i = members.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(eng() % i);
      std::swap(members[i - 1], members[j]);
    }
    size_t take = q.assigned;
    if (take == 0) take = 1;  // Repair: every class reaches validation.
    for (size_t i = 0; i < take; ++i) in_validation[members[i]] = true;
  }

  SplitDataset split;
  for (size_t i = 0; i < total; ++i) {
    (in_validation[i] ? split.validation : split.train).push_back(data[i]);
  }
  return split;
}

void export_finetune(const SplitDataset& split, const std::string& prefix) {
  if (split.train.empty() || split.validation.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "both split sides must be non-empty");
  }
  auto write_side = [&prefix](const std::vector<LabeledDescription>& side,
                              const char* name) {
    const std::string path = prefix + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
    for (const LabeledDescription& item : side) {
      nlohmann::ordered_json record;
      record["prompt"] = item.text + kFineTuneSeparator;
      record["completion"] = " " + std::to_string(item.label);
      out << record.dump() << "\n";
    }
    if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
  };
  write_side(split.train, "train.jsonl");
  write_side(split.validation, "validation.jsonl");
}

std::vector<LabeledDescription> import_finetune(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<LabeledDescription> out;
  std::string line;
  size_t line_no = 0;
  const std::string separator = kFineTuneSeparator;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchemaError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!record.contains("prompt") || !record.contains("completion")) {
      throw Error(ErrorCode::kSchemaError,
                  path + ":" + std::to_string(line_no) +
                      ": record needs prompt and completion");
    }
    std::string prompt = record["prompt"].get<std::string>();
    if (prompt.size() < separator.size() ||
        prompt.compare(prompt.size() - separator.size(), separator.size(),
                       separator) != 0) {
      throw Error(ErrorCode::kSchemaError,
                  path + ":" + std::to_string(line_no) +
                      ": prompt does not end with the separator");
    }
    LabeledDescription item;
    item.text = prompt.substr(0, prompt.size() - separator.size());
    item.label = parse_type_label(record["completion"].get<std::string>());
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<LabeledDescription> load_labeled_dataset(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError,
                path + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kSchemaError, path + ": expected an array");
  }
  std::vector<LabeledDescription> out;
  out.reserve(doc.size());
  try {
    for (const nlohmann::json& item : doc) {
      LabeledDescription desc;
      desc.text = item.at("text").get<std::string>();
      desc.label = item.at("label").get<int>();
      desc.origin = parse_origin(item.at("origin").get<std::string>());
      if (!is_valid_type_code(desc.label)) {
        throw Error(ErrorCode::kSchemaError,
                    path + ": label out of range: " +
                        std::to_string(desc.label));
      }
      out.push_back(std::move(desc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, path + ": bad record: " + e.what());
  }
  return out;
}

void save_labeled_dataset(const std::vector<LabeledDescription>& data,
                          const std::string& path) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const LabeledDescription& item : data) {
    nlohmann::ordered_json record;
    record["text"] = item.text;
    record["label"] = item.label;
    record["origin"] = origin_name(item.origin);
    doc.push_back(std::move(record));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

ClassifierScore score_classifier(
    const std::function<int(const std::string&)>& backend,
    const std::vector<LabeledDescription>& data) {
  ClassifierScore score;
  score.total = static_cast<int>(data.size());
  for (const LabeledDescription& item : data) {
    if (backend(item.text) == item.label) ++score.correct;
  }
  return score;
}

}  // namespace nl2milp
