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

#include <filesystem>

#include "core/taxonomy.h"
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support/fixtures.h"

namespace nl2milp {
namespace {

using testing::cue_regression_set;
using testing::data_dir;
using testing::haus_paragraphs;
using testing::read_file;
using testing::write_file;

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int rules_code(const std::string& text) {
  auto match = classify_rules(text);
  return match ? match->code : -1;
}

std::map<int, int> label_counts(const std::vector<LabeledDescription>& side) {
  std::map<int, int> counts;
  for (const LabeledDescription& item : side) ++counts[item.label];
  return counts;
}

// True when `part` preserves the relative order of `whole`.
bool is_ordered_subsequence(const std::vector<LabeledDescription>& part,
                            const std::vector<LabeledDescription>& whole) {
  size_t cursor = 0;
  for (const LabeledDescription& item : part) {
    while (cursor < whole.size() && !(whole[cursor] == item)) ++cursor;
    if (cursor == whole.size()) return false;
    ++cursor;
  }
  return true;
}

TEST_CASE("cue rules label the toy-factory paragraphs") {
  const std::vector<int> expected = {0, 3, 3, 13, 10, 9, 9};
  const std::vector<std::string> paragraphs = haus_paragraphs();
  REQUIRE(paragraphs.size() == expected.size());
  for (size_t i = 0; i < paragraphs.size(); ++i) {
    CAPTURE(paragraphs[i]);
    auto match = classify_rules(paragraphs[i]);
    REQUIRE(match.has_value());
    CHECK(match->code == expected[i]);
    CHECK(!match->cue.empty());
  }
}

TEST_CASE("cue rules decide every regression paragraph") {
  const std::vector<LabeledDescription> set = cue_regression_set();
  std::map<int, int> coverage;
  for (const LabeledDescription& item : set) {
    CAPTURE(item.text);
    auto match = classify_rules(item.text);
    REQUIRE(match.has_value());
    CHECK(match->code == item.label);
    ++coverage[item.label];
  }
  for (int code = 0; code < kNumTypeCodes; ++code) {
    CAPTURE(code);
    CHECK(coverage[code] >= 2);
  }
}

TEST_CASE("bundled cue regression data matches the fixture") {
  const std::vector<LabeledDescription> loaded =
      load_labeled_dataset(data_dir() + "/classifier/cue_regression.json");
  CHECK(loaded == cue_regression_set());
}

TEST_CASE("conditional phrasings map onto the logic types") {
  CHECK(rules_code("Either the plant runs the day shift or it runs the "
                   "night shift, or neither runs.") == 13);
  CHECK(rules_code("If the mill does not run, then the kiln must not "
                   "run.") == 10);
  CHECK(rules_code("The factory produces either widgets or gizmos.") == 11);
  CHECK(rules_code("If the farm does not grow corn, it must grow "
                   "soybeans.") == 12);
  CHECK(rules_code("If the team enters the contest, then they cannot host "
                   "it.") == 13);
  CHECK(rules_code("The warehouse is restocked if the shelves run "
                   "empty.") == 10);
}

TEST_CASE("a sum paragraph without a direction cue stays undecided") {
  const std::string text =
      "Bold Tycoon decides to invest his money in GICs and index ETF. Bold "
      "Tycoon wants to invest $10,000 in total.";
  CHECK(!classify_rules(text).has_value());
  CHECK_THROWS_AS_CODE(classify_rules_or_throw(text),
                       ErrorCode::kUnclassifiable);
}

TEST_CASE("type labels parse strictly") {
  CHECK(parse_type_label(" 13") == 13);
  CHECK(parse_type_label("0") == 0);
  CHECK(parse_type_label("7\n") == 7);
  CHECK(parse_type_label("  9  ") == 9);
  for (const char* bad : {"", "   ", "fourteen", "14", "1 3", "-1", "3.5",
                          "type 4", "007"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS_CODE(parse_type_label(bad), ErrorCode::kInvalidLabel);
  }
}

std::vector<LabeledDescription> synthetic_dataset(
    const std::vector<int>& counts) {
  std::vector<LabeledDescription> data;
  for (int label = 0; label < static_cast<int>(counts.size()); ++label) {
    for (int i = 0; i < counts[label]; ++i) {
      data.push_back(LabeledDescription{
          "class " + std::to_string(label) + " sample " + std::to_string(i),
          label, DescriptionOrigin::kAuthored});
    }
  }
  return data;
}

TEST_CASE("dataset splitting respects per-class quotas") {
  const std::vector<int> counts = {99, 20, 12, 93, 8,  36, 7,
                                   59, 14, 43, 46, 40, 49, 48};
  const std::vector<LabeledDescription> data = synthetic_dataset(counts);
  REQUIRE(data.size() == 574);

  const SplitDataset split = split_dataset(data, 464.0 / 574.0, 20240817);
  CHECK(split.train.size() == 464);
  CHECK(split.validation.size() == 110);

  const std::vector<int> expected_val = {19, 4, 2, 18, 2, 7, 1,
                                         11, 3, 8, 9,  8, 9, 9};
  const std::map<int, int> val_counts = label_counts(split.validation);
  const std::map<int, int> train_counts = label_counts(split.train);
  for (int label = 0; label < 14; ++label) {
    CAPTURE(label);
    CHECK(val_counts.at(label) == expected_val[label]);
    CHECK(train_counts.at(label) == counts[label] - expected_val[label]);
    CHECK(train_counts.at(label) >= 1);
  }

  CHECK(is_ordered_subsequence(split.train, data));
  CHECK(is_ordered_subsequence(split.validation, data));

  const SplitDataset again = split_dataset(data, 464.0 / 574.0, 20240817);
  CHECK(again.train == split.train);
  CHECK(again.validation == split.validation);

  const SplitDataset reseeded = split_dataset(data, 464.0 / 574.0, 20240818);
  CHECK(label_counts(reseeded.validation) == val_counts);
  CHECK(reseeded.validation != split.validation);
}

TEST_CASE("splitting keeps sparse classes on both sides") {
  const std::vector<LabeledDescription> data = synthetic_dataset({2, 2, 2});
  const SplitDataset split = split_dataset(data, 0.7, 5);
  CHECK(split.train.size() == 3);
  CHECK(split.validation.size() == 3);
  for (int label = 0; label < 3; ++label) {
    CHECK(label_counts(split.train).at(label) == 1);
    CHECK(label_counts(split.validation).at(label) == 1);
  }
}

TEST_CASE("splitting validates its inputs") {
  CHECK_THROWS_AS_CODE(split_dataset({}, 0.8, 1), ErrorCode::kInvalidArgument);

  const std::vector<LabeledDescription> lonely = synthetic_dataset({2, 1});
  CHECK_THROWS_AS_CODE(split_dataset(lonely, 0.8, 1),
                       ErrorCode::kInsufficientClassData);

  const std::vector<LabeledDescription> data = synthetic_dataset({4, 4});
  for (double ratio : {0.0, 1.0, -0.2, 1.5}) {
    CAPTURE(ratio);
    CHECK_THROWS_AS_CODE(split_dataset(data, ratio, 1),
                         ErrorCode::kInvalidArgument);
  }

  std::vector<LabeledDescription> bad = data;
  bad[0].label = 14;
  CHECK_THROWS_AS_CODE(split_dataset(bad, 0.5, 1), ErrorCode::kInvalidLabel);
}

TEST_CASE("fine-tune export writes prompt-completion lines") {
  const SplitDataset split = split_dataset(cue_regression_set(), 0.75, 3);
  const std::string prefix = tmp_path("nl2milp_ft_");
  export_finetune(split, prefix);

  const std::string train_text = read_file(prefix + "train.jsonl");
  size_t lines = 0;
  for (char c : train_text) lines += c == '\n';
  CHECK(lines == split.train.size());

  const std::string first_line =
      train_text.substr(0, train_text.find('\n'));
  CHECK(first_line.rfind("{\"prompt\":", 0) == 0);
  const nlohmann::json record = nlohmann::json::parse(first_line);
  CHECK(record.at("prompt").get<std::string>() ==
        split.train[0].text + "\n\n###\n\n");
  CHECK(record.at("completion").get<std::string>() ==
        " " + std::to_string(split.train[0].label));

  for (const char* side : {"train.jsonl", "validation.jsonl"}) {
    CAPTURE(side);
    const std::vector<LabeledDescription>& expected =
        side == std::string("train.jsonl") ? split.train : split.validation;
    const std::vector<LabeledDescription> imported =
        import_finetune(prefix + side);
    REQUIRE(imported.size() == expected.size());
    for (size_t i = 0; i < imported.size(); ++i) {
      CHECK(imported[i].text == expected[i].text);
      CHECK(imported[i].label == expected[i].label);
      // Origins are not carried by the fine-tune format.
      CHECK(imported[i].origin == DescriptionOrigin::kAuthored);
    }
  }

  SplitDataset empty_side;
  empty_side.train = split.train;
  CHECK_THROWS_AS_CODE(export_finetune(empty_side, prefix),
                       ErrorCode::kInvalidArgument);
}

TEST_CASE("fine-tune import rejects malformed lines") {
  const std::string path = tmp_path("nl2milp_bad.jsonl");

  write_file(path, "not json at all\n");
  CHECK_THROWS_AS_CODE(import_finetune(path), ErrorCode::kSchemaError);

  write_file(path, "{\"prompt\": \"text\\n\\n###\\n\\n\"}\n");
  CHECK_THROWS_AS_CODE(import_finetune(path), ErrorCode::kSchemaError);

  write_file(path,
             "{\"prompt\": \"no separator\", \"completion\": \" 3\"}\n");
  CHECK_THROWS_AS_CODE(import_finetune(path), ErrorCode::kSchemaError);

  write_file(path,
             "{\"prompt\": \"text\\n\\n###\\n\\n\", \"completion\": "
             "\"nope\"}\n");
  CHECK_THROWS_AS_CODE(import_finetune(path), ErrorCode::kInvalidLabel);

  CHECK_THROWS_AS_CODE(import_finetune(tmp_path("nl2milp_missing.jsonl")),
                       ErrorCode::kIoError);
}

TEST_CASE("labeled datasets round-trip through json") {
  const std::vector<LabeledDescription> set = cue_regression_set();
  const std::string path = tmp_path("nl2milp_dataset.json");
  save_labeled_dataset(set, path);
  CHECK(load_labeled_dataset(path) == set);

  // Canonical formatting: saving what was loaded reproduces the bytes.
  const std::string once = read_file(path);
  save_labeled_dataset(load_labeled_dataset(path), path);
  CHECK(read_file(path) == once);

  write_file(path, "{}");
  CHECK_THROWS_AS_CODE(load_labeled_dataset(path), ErrorCode::kSchemaError);
  write_file(path, "[{\"text\": \"x\", \"label\": 99, \"origin\": "
                   "\"authored\"}]");
  CHECK_THROWS_AS_CODE(load_labeled_dataset(path), ErrorCode::kSchemaError);
  write_file(path, "[{\"text\": \"x\", \"label\": 1, \"origin\": "
                   "\"weird\"}]");
  CHECK_THROWS_AS_CODE(load_labeled_dataset(path), ErrorCode::kSchemaError);
  write_file(path, "[{\"label\": 1, \"origin\": \"authored\"}]");
  CHECK_THROWS_AS_CODE(load_labeled_dataset(path), ErrorCode::kSchemaError);
  CHECK_THROWS_AS_CODE(
      load_labeled_dataset(tmp_path("nl2milp_missing.json")),
      ErrorCode::kIoError);
}

TEST_CASE("classifier scoring counts exact matches") {
  const std::vector<LabeledDescription> set = cue_regression_set();
  const ClassifierScore perfect = score_classifier(rules_code, set);
  CHECK(perfect.correct == static_cast<int>(set.size()));
  CHECK(perfect.total == static_cast<int>(set.size()));
  CHECK(perfect.accuracy() == doctest::Approx(1.0));

  const std::string trip = set[5].text;
  auto flawed = [&trip](const std::string& text) {
    if (text == trip) return 0;
    return rules_code(text);
  };
  const ClassifierScore nearly = score_classifier(flawed, set);
  CHECK(nearly.correct == static_cast<int>(set.size()) - 1);

  CHECK(ClassifierScore{109, 110}.accuracy() ==
        doctest::Approx(0.9909090909));
  CHECK(ClassifierScore{108, 110}.accuracy() ==
        doctest::Approx(0.9818181818));
}

}  // namespace
}  // namespace nl2milp
