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

// Rewrites the generated parts of data/ from the pinned generators:
// the synthesis corpus (reference and served copies), the fixture
// instances, the labeled classifier dataset, and its tuning export.
// Usage: regen_data [data-dir]

#include <cstdio>
#include <filesystem>
#include <string>

#include "core/classifier.h"
#include "io/serialize.h"
#include "support/datagen.h"
#include "support/fixtures.h"

int main(int argc, char** argv) {
  using namespace nl2milp;
  namespace fs = std::filesystem;

  const std::string root = argc > 1 ? argv[1] : testing::data_dir();
  fs::create_directories(root + "/instances/corpus");
  fs::create_directories(root + "/instances/corpus_served");
  fs::create_directories(root + "/finetune");

  const auto corpus = testing::synthesis_corpus();
  for (const testing::CorpusEntry& entry : corpus) {
    save_instance(entry.reference, root + "/instances/corpus/" +
                                       entry.reference.id + ".json");
    save_instance(entry.served, root + "/instances/corpus_served/" +
                                    entry.served.id + ".json");
  }
  std::printf("wrote %zu corpus instances (reference + served)\n",
              corpus.size());

  save_instance(testing::haus_instance(), root + "/instances/haus_toys.json");
  save_instance(testing::event_instance(),
                root + "/instances/event_plan.json");
  save_instance(testing::crate_instance(),
                root + "/instances/crate_shipping.json");
  std::printf("wrote fixture instances\n");

  const auto dataset = testing::classifier_dataset();
  save_labeled_dataset(dataset, root + "/finetune/classifier_dataset.json");
  const SplitDataset split = split_dataset(
      dataset, testing::kSplitTrainRatio, testing::kSplitSeed);
  export_finetune(split, root + "/finetune/");
  std::printf("wrote dataset (%zu items; train %zu, validation %zu)\n",
              dataset.size(), split.train.size(), split.validation.size());
  return 0;
}
