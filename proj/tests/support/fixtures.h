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

// Shared fixtures and deterministic helpers for the test binaries.

#ifndef NL2MILP_TESTS_SUPPORT_FIXTURES_H_
#define NL2MILP_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core/classifier.h"
#include "core/instance.h"
#include "core/ir.h"

// Asserts that evaluating `expr` throws Error carrying exactly `expected`.
// Expands inside doctest test cases only.
#define CHECK_THROWS_AS_CODE(expr, expected)                               \
  do {                                                                     \
    try {                                                                  \
      (void)(expr);                                                        \
      FAIL_CHECK("expected error " << ::nl2milp::error_code_name(expected) \
                                   << " from " << #expr);                  \
    } catch (const ::nl2milp::Error& caught_err) {                         \
      CHECK_MESSAGE(caught_err.code() == (expected),                       \
                    "threw " << ::nl2milp::error_code_name(                \
                                    caught_err.code())                     \
                             << ": " << caught_err.what());                \
    }                                                                      \
  } while (0)

namespace nl2milp::testing {

// Deterministic RNG helpers. std::shuffle and the std distributions are
// implementation-defined, so anything whose bytes end up in golden files
// draws through these instead.
class TestRng {
 public:
  explicit TestRng(uint64_t seed) : eng_(seed) {}

  // Uniform-ish integer in [0, n).
  int below(int n) { return static_cast<int>(eng_() % static_cast<uint64_t>(n)); }

  // Integer in [lo, hi].
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  // Coefficient in [-100, 100] with two decimals.
  double coefficient() { return (below(20001) - 10000) / 100.0; }

  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

// The worked toy-factory example used across the suite: seven description
// paragraphs (one objective, six constraints) over four integer quantities
// and their four indicators, with eight linking rows in the reference model.
std::vector<std::string> haus_paragraphs();
MilpModel haus_truth_model();

// The seven paragraphs joined with single spaces, as prompts embed them.
std::string haus_description();

// The example above bundled as a gradable instance (ground truth attached;
// any linking coefficient of 89 or more keeps its reference model exact).
ProblemInstance haus_instance();

// Labeled paragraphs covering every type code at least twice, all decidable
// by the cue rules alone. data/classifier/cue_regression.json holds the same
// records.
std::vector<LabeledDescription> cue_regression_set();

// A pure-binary instance: three stand-alone event indicators, logic and sum
// rows, no linking. Bundled as data/instances/event_plan.json.
ProblemInstance event_instance();

// An instance whose crate variable carries an upper bound of 40, so its
// reference capping row uses 40 rather than big-M; sufficient_big_m is 40.
// Bundled as data/instances/crate_shipping.json.
ProblemInstance crate_instance();

// Paths baked in by the build for locating bundled data and golden files.
std::string data_dir();
std::string golden_dir();

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nl2milp::testing

#endif  // NL2MILP_TESTS_SUPPORT_FIXTURES_H_
