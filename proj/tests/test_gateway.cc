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

#include "llm/gateway.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "core/classifier.h"
#include "core/prompts.h"
#include "doctest.h"
#include "llm/replay_provider.h"
#include "llm/stub_provider.h"
#include "support/fixtures.h"

namespace nl2milp {
namespace {

using testing::haus_description;
using testing::haus_instance;
using testing::haus_paragraphs;

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

// Replays a fixed list of outcomes in call-arrival order.
class ScriptedProvider : public Provider {
 public:
  struct Step {
    bool ok = true;
    std::string reply;
    ErrorCode code = ErrorCode::kProviderUnavailable;
  };

  static Step succeed(std::string reply) { return {true, std::move(reply)}; }
  static Step fail(ErrorCode code) { return {false, "", code}; }

  explicit ScriptedProvider(std::vector<Step> steps)
      : steps_(std::move(steps)) {}

  std::string name() const override { return "scripted"; }

  std::string complete_once(const std::string&) override {
    const size_t index = calls_.fetch_add(1);
    if (index >= steps_.size()) {
      throw Error(ErrorCode::kProviderRejected, "script exhausted");
    }
    const Step& step = steps_[index];
    if (!step.ok) throw Error(step.code, "scripted failure");
    return step.reply;
  }

  int calls() const { return static_cast<int>(calls_.load()); }

 private:
  std::vector<Step> steps_;
  std::atomic<size_t> calls_{0};
};

// Echoes prompts back, failing those that ask for it, while tracking how
// many calls overlap.
class EchoProvider : public Provider {
 public:
  explicit EchoProvider(int sleep_ms = 0) : sleep_ms_(sleep_ms) {}

  std::string name() const override { return "echo"; }

  std::string complete_once(const std::string& prompt) override {
    const int now = ++current_;
    int seen = max_concurrent_.load();
    while (now > seen && !max_concurrent_.compare_exchange_weak(seen, now)) {
    }
    if (sleep_ms_ > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms_));
    }
    ++calls_;
    --current_;
    if (prompt.rfind("fail", 0) == 0) {
      throw Error(ErrorCode::kProviderRejected, "asked to fail");
    }
    return "echo:" + prompt;
  }

  int calls() const { return calls_.load(); }
  int max_concurrent() const { return max_concurrent_.load(); }

 private:
  int sleep_ms_;
  std::atomic<int> calls_{0};
  std::atomic<int> current_{0};
  std::atomic<int> max_concurrent_{0};
};

ProviderConfig test_config() {
  ProviderConfig config;
  config.model = "test-model";
  config.retries = 3;
  config.backoff_base_ms = 0;
  config.concurrency = 4;
  return config;
}

TEST_CASE("the gateway returns the first successful reply") {
  auto provider = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{ScriptedProvider::succeed("hello")});
  Gateway gateway(provider, test_config());
  const CompletionRecord record = gateway.complete("hi");
  CHECK(record.reply == "hello");
  CHECK(record.prompt == "hi");
  CHECK(record.attempts == 1);
  CHECK(record.provider == "scripted");
  CHECK(record.model == "test-model");
  CHECK(record.latency_ms >= 0.0);
  CHECK(provider->calls() == 1);
}

TEST_CASE("transient failures are retried, terminal ones are not") {
  auto flaky = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable),
          ScriptedProvider::fail(ErrorCode::kProviderTimeout),
          ScriptedProvider::succeed("done")});
  Gateway gateway(flaky, test_config());
  const CompletionRecord record = gateway.complete("p");
  CHECK(record.reply == "done");
  CHECK(record.attempts == 3);
  CHECK(flaky->calls() == 3);

  auto rejecting = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{
          ScriptedProvider::fail(ErrorCode::kProviderRejected),
          ScriptedProvider::succeed("never reached")});
  Gateway no_retry(rejecting, test_config());
  CHECK_THROWS_AS_CODE(no_retry.complete("p"),
                       ErrorCode::kProviderRejected);
  CHECK(rejecting->calls() == 1);

  auto down = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable),
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable),
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable)});
  ProviderConfig two_retries = test_config();
  two_retries.retries = 2;
  Gateway exhausted(down, two_retries);
  CHECK_THROWS_AS_CODE(exhausted.complete("p"),
                       ErrorCode::kProviderUnavailable);
  CHECK(down->calls() == 3);
}

TEST_CASE("retry backoff waits at least the configured schedule") {
  auto flaky = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable),
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable),
          ScriptedProvider::fail(ErrorCode::kProviderUnavailable),
          ScriptedProvider::succeed("done")});
  ProviderConfig config = test_config();
  config.backoff_base_ms = 4;  // Sleeps 4 + 8 + 16 = 28 ms in total.
  Gateway gateway(flaky, config);
  const auto start = std::chrono::steady_clock::now();
  CHECK(gateway.complete("p").reply == "done");
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
            .count() >= 27);
}

TEST_CASE("batches preserve order and isolate failures") {
  auto provider = std::make_shared<EchoProvider>();
  ProviderConfig config = test_config();
  config.concurrency = 2;
  Gateway gateway(provider, config);
  const std::vector<std::string> prompts = {"a", "fail-1", "b", "fail-2",
                                            "c"};
  const std::vector<CompletionOutcome> outcomes =
      gateway.complete_batch(prompts);
  REQUIRE(outcomes.size() == prompts.size());
  for (size_t i = 0; i < prompts.size(); ++i) {
    CAPTURE(i);
    if (prompts[i].rfind("fail", 0) == 0) {
      CHECK(!outcomes[i].ok);
      CHECK(outcomes[i].code == ErrorCode::kProviderRejected);
      CHECK(outcomes[i].record.prompt == prompts[i]);
    } else {
      CHECK(outcomes[i].ok);
      CHECK(outcomes[i].record.reply == "echo:" + prompts[i]);
    }
  }
  CHECK(gateway.complete_batch({}).empty());
}

TEST_CASE("concurrent requests stay within the configured bound") {
  auto provider = std::make_shared<EchoProvider>(/*sleep_ms=*/20);
  ProviderConfig config = test_config();
  config.concurrency = 3;
  Gateway gateway(provider, config);

  std::vector<std::string> prompts;
  for (int i = 0; i < 12; ++i) prompts.push_back("p" + std::to_string(i));
  const std::vector<CompletionOutcome> outcomes =
      gateway.complete_batch(prompts);
  for (const CompletionOutcome& outcome : outcomes) CHECK(outcome.ok);
  CHECK(provider->calls() == 12);
  CHECK(provider->max_concurrent() <= 3);
  CHECK(provider->max_concurrent() >= 2);

  auto strict = std::make_shared<EchoProvider>(/*sleep_ms=*/20);
  ProviderConfig tight = test_config();
  tight.concurrency = 2;
  Gateway limited(strict, tight);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back(
        [&limited, i]() { limited.complete("t" + std::to_string(i)); });
  }
  for (std::thread& t : threads) t.join();
  CHECK(strict->calls() == 8);
  CHECK(strict->max_concurrent() <= 2);
}

TEST_CASE("transcripts capture traffic and replays serve it verbatim") {
  const std::string path = tmp_path("nl2milp_transcript.jsonl");
  std::filesystem::remove(path);
  auto provider = std::make_shared<EchoProvider>();
  {
    Gateway gateway(provider, test_config(), path);
    CHECK(gateway.complete("alpha").reply == "echo:alpha");
    CHECK(gateway.complete("beta").reply == "echo:beta");
    const auto outcomes = gateway.complete_batch({"gamma", "fail-now"});
    CHECK(outcomes[0].ok);
    CHECK(!outcomes[1].ok);
  }

  const std::vector<CompletionRecord> records = load_transcript(path);
  REQUIRE(records.size() == 3);  // The failure line is filtered out.
  CHECK(records[0].prompt == "alpha");
  CHECK(records[0].reply == "echo:alpha");
  CHECK(records[0].provider == "echo");
  CHECK(records[0].model == "test-model");
  CHECK(records[1].prompt == "beta");
  CHECK(records[2].prompt == "gamma");

  auto replay = std::make_shared<ReplayProvider>(path);
  CHECK(replay->remaining() == 3);
  Gateway offline(replay, test_config());
  CHECK(offline.complete("beta").reply == "echo:beta");
  CHECK(offline.complete("alpha").reply == "echo:alpha");
  CHECK(offline.complete("gamma").reply == "echo:gamma");
  CHECK(replay->remaining() == 0);
  CHECK_THROWS_AS_CODE(offline.complete("alpha"),
                       ErrorCode::kProviderRejected);

  CHECK_THROWS_AS_CODE(load_transcript(tmp_path("nl2milp_nowhere.jsonl")),
                       ErrorCode::kIoError);
}

TEST_CASE("replay providers pop per-prompt replies in order") {
  ReplayProvider replay;
  replay.add("p", "first");
  replay.add("p", "second");
  CHECK(replay.remaining() == 2);
  CHECK(replay.complete_once("p") == "first");
  CHECK(replay.complete_once("p") == "second");
  CHECK(replay.remaining() == 0);
  CHECK_THROWS_AS_CODE(replay.complete_once("p"),
                       ErrorCode::kProviderRejected);
  CHECK_THROWS_AS_CODE(replay.complete_once("q"),
                       ErrorCode::kProviderRejected);
}

TEST_CASE("the stub answers every stage from a registered instance") {
  auto stub = std::make_shared<StubProvider>();
  stub->register_instance(haus_instance());
  CHECK(stub->instance_count() == 1);
  const std::vector<std::string> paragraphs = haus_paragraphs();

  SUBCASE("classification uses the instance labels") {
    CHECK(stub->complete_once(build_classifier_prompt(paragraphs[0]).text) ==
          " 0");
    CHECK(stub->complete_once(build_classifier_prompt(paragraphs[1]).text) ==
          " 3");
    CHECK(stub->complete_once(build_classifier_prompt(paragraphs[3]).text) ==
          " 13");
    CHECK(stub->complete_once(build_classifier_prompt(paragraphs[4]).text) ==
          " 10");
  }

  SUBCASE("unregistered paragraphs fall back to the cue rules") {
    CHECK(stub->complete_once(
              build_classifier_prompt(
                  "The club must recruit at least 20 new members this year.")
                  .text) == " 5");
    const std::string undecidable =
        "Bold Tycoon decides to invest his money in GICs and index ETF. "
        "Bold Tycoon wants to invest $10,000 in total.";
    const std::string reply =
        stub->complete_once(build_classifier_prompt(undecidable).text);
    CHECK_THROWS_AS_CODE(parse_type_label(reply), ErrorCode::kInvalidLabel);
  }

  SUBCASE("variable prompts list the model's variables") {
    CHECK(stub->complete_once(
              build_variable_prompt(haus_description(), false).text) ==
          "['trucks', 'aeroplanes', 'ships', 'trains']");
    CHECK(stub->complete_once(
              build_variable_prompt(haus_description(), true).text) ==
          "['bi_trucks', 'bi_aeroplanes', 'bi_ships', 'bi_trains']");
  }

  SUBCASE("generation prompts render the stored expressions") {
    const std::vector<std::string> vars = {"trucks", "aeroplanes", "ships",
                                           "trains"};
    const std::vector<std::string> bins = {"bi_trucks", "bi_aeroplanes",
                                           "bi_ships", "bi_trains"};
    CHECK(stub->complete_once(
              build_generation_prompt(haus_description(), paragraphs[0], 0,
                                      vars, bins)
                  .text) ==
          "Maximize 5*trucks + 10*aeroplanes + 8*ships + 7*trains");
    CHECK(stub->complete_once(
              build_generation_prompt(haus_description(), paragraphs[1], 3,
                                      vars, bins)
                  .text) ==
          "12*trucks + 20*aeroplanes + 15*ships + 10*trains <= 890");
    CHECK(stub->complete_once(
              build_generation_prompt(haus_description(), paragraphs[3], 13,
                                      vars, bins)
                  .text) == "bi_trucks + bi_trains <= 1");
    CHECK(stub->complete_once(
              build_generation_prompt(haus_description(), paragraphs[4], 10,
                                      vars, bins)
                  .text) == "bi_ships <= bi_aeroplanes");
  }

  SUBCASE("unknown descriptions and prompt shapes are rejected") {
    CHECK_THROWS_AS_CODE(
        stub->complete_once(
            build_variable_prompt("A different problem entirely.", false)
                .text),
        ErrorCode::kProviderRejected);
    CHECK_THROWS_AS_CODE(stub->complete_once("What is the weather like?"),
                         ErrorCode::kProviderRejected);
  }
}

TEST_CASE("the stub reproduces whatever model it is given") {
  ProblemInstance perturbed = haus_instance();
  perturbed.ground_truth->objective->expr.terms[0].coeff = 4;  // Was 5.
  for (Constraint& constraint : perturbed.ground_truth->constraints) {
    if (constraint.source == ConstraintSource::from_paragraph(4)) {
      constraint.ctype = ConstraintTag::typed(5);
      constraint.lhs = AffineExpression();
      constraint.lhs.add("aeroplanes", 1);
      constraint.rhs = AffineExpression(1);
      constraint.sense = Sense::kGe;
    }
  }
  auto stub = std::make_shared<StubProvider>();
  stub->register_instance(perturbed);

  const std::vector<std::string> paragraphs = haus_paragraphs();
  CHECK(stub->complete_once(build_classifier_prompt(paragraphs[4]).text) ==
        " 5");
  const std::vector<std::string> vars = {"trucks", "aeroplanes", "ships",
                                         "trains"};
  CHECK(stub->complete_once(
            build_generation_prompt(haus_description(), paragraphs[0], 0,
                                    vars, {})
                .text) ==
        "Maximize 4*trucks + 10*aeroplanes + 8*ships + 7*trains");
  CHECK(stub->complete_once(
            build_generation_prompt(haus_description(), paragraphs[4], 5,
                                    vars, {})
                .text) == "aeroplanes >= 1");

  StubProvider empty;
  ProblemInstance truthless;
  truthless.id = "x";
  truthless.paragraphs = {"p"};
  CHECK_THROWS_AS_CODE(empty.register_instance(truthless),
                       ErrorCode::kInvalidArgument);
}

TEST_CASE("classification via the gateway retries one bad label") {
  auto recovering = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{
          ScriptedProvider::succeed("not a label"),
          ScriptedProvider::succeed(" 9")});
  Gateway gateway(recovering, test_config());
  CHECK(classify_llm("some paragraph", gateway) == 9);
  CHECK(recovering->calls() == 2);

  auto hopeless = std::make_shared<ScriptedProvider>(
      std::vector<ScriptedProvider::Step>{
          ScriptedProvider::succeed("bad"),
          ScriptedProvider::succeed("worse")});
  Gateway failing(hopeless, test_config());
  CHECK_THROWS_AS_CODE(classify_llm("some paragraph", failing),
                       ErrorCode::kInvalidLabel);

  auto stub = std::make_shared<StubProvider>();
  stub->register_instance(haus_instance());
  Gateway grounded(stub, test_config());
  CHECK(classify_llm(haus_paragraphs()[3], grounded) == 13);
}

}  // namespace
}  // namespace nl2milp
