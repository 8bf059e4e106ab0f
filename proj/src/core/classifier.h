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

// Classification of objective/constraint descriptions into taxonomy codes:
// a deterministic rule-based matcher over cue phrases, an LLM-backed path,
// and the labeled-dataset plumbing around it (stratified splitting, tuning
// export, scoring).

#ifndef NL2MILP_CORE_CLASSIFIER_H_
#define NL2MILP_CORE_CLASSIFIER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/error.h"

namespace nl2milp {

class Gateway;

// Result of a rule match: the winning code and the cue that fired.
struct RuleMatch {
  int code = -1;
  std::string cue;
};

// Deterministic cue matching with precedence objective > logic > proportion
// > comparison > bounds. Total over arbitrary text: returns nullopt when no
// cue fires, and never throws.
std::optional<RuleMatch> classify_rules(const std::string& text);

// classify_rules wrapped as an error-raising call: nullopt becomes
// kUnclassifiable.
RuleMatch classify_rules_or_throw(const std::string& text);

// Parses a classifier reply as a bare type code: surrounding whitespace
// ignored, nothing but digits accepted, value must be 0-13. Throws
// kInvalidLabel.
int parse_type_label(const std::string& reply);

// Classifies via the gateway's fine-tuned model: builds the paragraph+
// separator prompt, completes, and parses the label; one retry on an invalid
// label, then kInvalidLabel propagates.
int classify_llm(const std::string& text, Gateway& gateway);

enum class DescriptionOrigin { kNl4OptDerived, kAuthored };

struct LabeledDescription {
  std::string text;
  int label = 0;
  DescriptionOrigin origin = DescriptionOrigin::kAuthored;

  bool operator==(const LabeledDescription& other) const {
    return text == other.text && label == other.label &&
           origin == other.origin;
  }
};

struct SplitDataset {
  std::vector<LabeledDescription> train;
  std::vector<LabeledDescription> validation;
};

// Per-class stratified split. The validation share of each class is chosen
// by largest-remainder apportionment of (1 - train_ratio) * class size,
// capped so at least one item of every class stays in train; a repair pass
// then moves one training item of any class still absent from validation.
// Item selection within a class is a seeded shuffle; both output lists keep
// the input order. A class with fewer than two items throws
// kInsufficientClassData; labels outside 0-13 throw kInvalidLabel.
SplitDataset split_dataset(const std::vector<LabeledDescription>& data,
                           double train_ratio, uint64_t seed);

// Writes <prefix>train.jsonl and <prefix>validation.jsonl, one record per
// line: {"prompt": text + separator, "completion": " " + label}. The origin
// field is not representable in this format; import restores text and label
// only (origin defaults to authored). Throws kInvalidArgument on an empty
// split side and kIoError on unwritable paths.
void export_finetune(const SplitDataset& split, const std::string& prefix);

// Reads one exported .jsonl file back. Throws kIoError / kSchemaError.
std::vector<LabeledDescription> import_finetune(const std::string& path);

// Labeled-dataset JSON file: array of {"text", "label", "origin"} with
// origin "nl4opt-derived" or "authored".
std::vector<LabeledDescription> load_labeled_dataset(const std::string& path);
void save_labeled_dataset(const std::vector<LabeledDescription>& data,
                          const std::string& path);

struct ClassifierScore {
  int correct = 0;
  int total = 0;

  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / total;
  }
};

// Fraction of items whose backend label equals the stored label. The backend
// is any callable from description text to code (rule path, LLM path, or a
// recorded outcome table).
ClassifierScore score_classifier(
    const std::function<int(const std::string&)>& backend,
    const std::vector<LabeledDescription>& data);

}  // namespace nl2milp

#endif  // NL2MILP_CORE_CLASSIFIER_H_
