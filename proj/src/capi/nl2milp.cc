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

#include "capi/nl2milp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/classifier.h"
#include "core/error.h"
#include "core/instance.h"
#include "core/ir.h"
#include "eval/evaluator.h"
#include "io/config.h"
#include "io/serialize.h"
#include "json.hpp"
#include "llm/gateway.h"
#include "pipeline/pipeline.h"

struct nl2milp_session {
  nl2milp::RunConfig config;
  std::unique_ptr<nl2milp::Gateway> gateway;
};

struct nl2milp_instance {
  nl2milp::ProblemInstance value;
};

struct nl2milp_model {
  nl2milp::MilpModel value;
};

struct nl2milp_result {
  nl2milp::SynthesisResult value;
};

namespace {

constexpr char kVersion[] = "0.1.0";
constexpr nl2milp_status kInternalStatus = -1;

thread_local std::string t_last_error;

nl2milp_status status_of(nl2milp::ErrorCode code) {
  return static_cast<nl2milp_status>(code) + 1;
}

// Runs a body, mapping exceptions onto statuses and the thread-local
// message. A clean run clears the message.
template <typename Body>
nl2milp_status guarded(Body&& body) {
  try {
    body();
    t_last_error.clear();
    return 0;
  } catch (const nl2milp::Error& err) {
    t_last_error = err.what();
    return status_of(err.code());
  } catch (const std::exception& err) {
    t_last_error = err.what();
    return kInternalStatus;
  }
}

nl2milp_status fail_argument(const std::string& message) {
  t_last_error = message;
  return status_of(nl2milp::ErrorCode::kInvalidArgument);
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

// Writes `text` through `out`, throwing on allocation failure so guarded()
// reports it rather than handing back a null success.
void emit_string(const std::string& text, char** out) {
  *out = dup_string(text);
  if (*out == nullptr) throw std::bad_alloc();
}

}  // namespace

extern "C" {

const char* nl2milp_version(void) { return kVersion; }

const char* nl2milp_status_name(nl2milp_status status) {
  if (status == 0) return "ok";
  if (status < 0) return "internal";
  const int code = status - 1;
  if (code > static_cast<int>(nl2milp::ErrorCode::kIoError)) return "unknown";
  return nl2milp::error_code_name(static_cast<nl2milp::ErrorCode>(code));
}

const char* nl2milp_last_error(void) { return t_last_error.c_str(); }

void nl2milp_string_free(char* text) { std::free(text); }

nl2milp_status nl2milp_session_open(const char* config_path,
                                    nl2milp_session** out) {
  if (config_path == nullptr || out == nullptr) {
    return fail_argument("session_open needs a config path and an out slot");
  }
  return guarded([&] {
    auto session = std::make_unique<nl2milp_session>();
    session->config = nl2milp::load_config(config_path);
    session->gateway = nl2milp::make_gateway(session->config);
    *out = session.release();
  });
}

nl2milp_status nl2milp_session_open_json(const char* config_json,
                                         const char* base_dir,
                                         nl2milp_session** out) {
  if (config_json == nullptr || out == nullptr) {
    return fail_argument("session_open_json needs config text and an out slot");
  }
  return guarded([&] {
    nlohmann::json doc = nlohmann::json::parse(
        config_json, nullptr, /*allow_exceptions=*/false,
        /*ignore_comments=*/true);
    if (doc.is_discarded()) {
      throw nl2milp::Error(nl2milp::ErrorCode::kSchemaError,
                           "config text is not valid JSON");
    }
    auto session = std::make_unique<nl2milp_session>();
    session->config = nl2milp::config_from_json(
        doc, base_dir == nullptr ? "" : base_dir);
    session->gateway = nl2milp::make_gateway(session->config);
    *out = session.release();
  });
}

void nl2milp_session_close(nl2milp_session* session) { delete session; }

nl2milp_status nl2milp_instance_load(const char* path,
                                     nl2milp_instance** out) {
  if (path == nullptr || out == nullptr) {
    return fail_argument("instance_load needs a path and an out slot");
  }
  return guarded(
      [&] { *out = new nl2milp_instance{nl2milp::load_instance(path)}; });
}

nl2milp_status nl2milp_instance_from_json(const char* json_text,
                                          nl2milp_instance** out) {
  if (json_text == nullptr || out == nullptr) {
    return fail_argument("instance_from_json needs text and an out slot");
  }
  return guarded([&] {
    nlohmann::json doc = nlohmann::json::parse(json_text, nullptr,
                                               /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      throw nl2milp::Error(nl2milp::ErrorCode::kSchemaError,
                           "instance text is not valid JSON");
    }
    *out = new nl2milp_instance{nl2milp::instance_from_json(doc)};
  });
}

nl2milp_status nl2milp_instance_save(const nl2milp_instance* instance,
                                     const char* path) {
  if (instance == nullptr || path == nullptr) {
    return fail_argument("instance_save needs an instance and a path");
  }
  return guarded([&] { nl2milp::save_instance(instance->value, path); });
}

nl2milp_status nl2milp_instance_to_json(const nl2milp_instance* instance,
                                        char** out) {
  if (instance == nullptr || out == nullptr) {
    return fail_argument("instance_to_json needs an instance and an out slot");
  }
  return guarded([&] {
    emit_string(nl2milp::instance_to_json(instance->value).dump(2), out);
  });
}

nl2milp_status nl2milp_instance_id(const nl2milp_instance* instance,
                                   char** out) {
  if (instance == nullptr || out == nullptr) {
    return fail_argument("instance_id needs an instance and an out slot");
  }
  return guarded([&] { emit_string(instance->value.id, out); });
}

void nl2milp_instance_free(nl2milp_instance* instance) { delete instance; }

nl2milp_status nl2milp_synthesize(nl2milp_session* session,
                                  const nl2milp_instance* instance,
                                  nl2milp_result** out) {
  if (session == nullptr || instance == nullptr || out == nullptr) {
    return fail_argument("synthesize needs a session, an instance, and an "
                         "out slot");
  }
  return guarded([&] {
    nl2milp::SynthesisOptions options;
    options.big_m = session->config.big_m;
    *out = new nl2milp_result{nl2milp::synthesize(
        instance->value.paragraphs, *session->gateway, options)};
  });
}

int nl2milp_result_ok(const nl2milp_result* result) {
  return result != nullptr && result->value.ok ? 1 : 0;
}

nl2milp_status nl2milp_result_to_json(const nl2milp_result* result,
                                      char** out) {
  if (result == nullptr || out == nullptr) {
    return fail_argument("result_to_json needs a result and an out slot");
  }
  return guarded(
      [&] { emit_string(nl2milp::result_to_json(result->value).dump(2), out); });
}

nl2milp_status nl2milp_result_save(const nl2milp_result* result,
                                   const char* path) {
  if (result == nullptr || path == nullptr) {
    return fail_argument("result_save needs a result and a path");
  }
  return guarded([&] { nl2milp::save_result(result->value, path); });
}

nl2milp_status nl2milp_result_model(const nl2milp_result* result,
                                    nl2milp_model** out) {
  if (result == nullptr || out == nullptr) {
    return fail_argument("result_model needs a result and an out slot");
  }
  if (!result->value.ok) {
    t_last_error = result->value.message;
    return status_of(result->value.code);
  }
  return guarded([&] { *out = new nl2milp_model{result->value.model}; });
}

void nl2milp_result_free(nl2milp_result* result) { delete result; }

nl2milp_status nl2milp_model_load(const char* path, nl2milp_model** out) {
  if (path == nullptr || out == nullptr) {
    return fail_argument("model_load needs a path and an out slot");
  }
  return guarded([&] { *out = new nl2milp_model{nl2milp::load_model(path)}; });
}

nl2milp_status nl2milp_model_from_json(const char* json_text,
                                       nl2milp_model** out) {
  if (json_text == nullptr || out == nullptr) {
    return fail_argument("model_from_json needs text and an out slot");
  }
  return guarded([&] {
    nlohmann::json doc = nlohmann::json::parse(json_text, nullptr,
                                               /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      throw nl2milp::Error(nl2milp::ErrorCode::kSchemaError,
                           "model text is not valid JSON");
    }
    *out = new nl2milp_model{nl2milp::model_from_json(doc)};
  });
}

nl2milp_status nl2milp_model_save(const nl2milp_model* model,
                                  const char* path) {
  if (model == nullptr || path == nullptr) {
    return fail_argument("model_save needs a model and a path");
  }
  return guarded([&] { nl2milp::save_model(model->value, path); });
}

nl2milp_status nl2milp_model_to_json(const nl2milp_model* model, char** out) {
  if (model == nullptr || out == nullptr) {
    return fail_argument("model_to_json needs a model and an out slot");
  }
  return guarded(
      [&] { emit_string(nl2milp::model_to_json(model->value).dump(2), out); });
}

nl2milp_status nl2milp_model_emit_lp(const nl2milp_model* model, char** out) {
  if (model == nullptr || out == nullptr) {
    return fail_argument("model_emit_lp needs a model and an out slot");
  }
  return guarded([&] { emit_string(nl2milp::emit_lp(model->value), out); });
}

nl2milp_status nl2milp_model_emit_latex(const nl2milp_model* model,
                                        char** out) {
  if (model == nullptr || out == nullptr) {
    return fail_argument("model_emit_latex needs a model and an out slot");
  }
  return guarded([&] { emit_string(nl2milp::emit_latex(model->value), out); });
}

void nl2milp_model_free(nl2milp_model* model) { delete model; }

nl2milp_status nl2milp_classify(nl2milp_session* session, const char* text,
                                int* label_out) {
  if (session == nullptr || text == nullptr || label_out == nullptr) {
    return fail_argument("classify needs a session, text, and an out slot");
  }
  return guarded(
      [&] { *label_out = nl2milp::classify_llm(text, *session->gateway); });
}

nl2milp_status nl2milp_classify_rules(const char* text, int* label_out,
                                      char** cue_out) {
  if (text == nullptr || label_out == nullptr) {
    return fail_argument("classify_rules needs text and a label slot");
  }
  return guarded([&] {
    const nl2milp::RuleMatch match = nl2milp::classify_rules_or_throw(text);
    *label_out = match.code;
    if (cue_out != nullptr) emit_string(match.cue, cue_out);
  });
}

nl2milp_status nl2milp_evaluate(nl2milp_session* session,
                                const char* const* instance_paths,
                                size_t count, char** report_out) {
  if (session == nullptr || instance_paths == nullptr ||
      report_out == nullptr || count == 0) {
    return fail_argument(
        "evaluate needs a session, at least one instance path, and an out "
        "slot");
  }
  return guarded([&] {
    std::vector<nl2milp::InstanceGrade> grades;
    grades.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (instance_paths[i] == nullptr) {
        throw nl2milp::Error(nl2milp::ErrorCode::kInvalidArgument,
                             "instance path " + std::to_string(i) +
                                 " is null");
      }
      const nl2milp::ProblemInstance instance =
          nl2milp::load_instance(instance_paths[i]);
      nl2milp::SynthesisOptions options;
      options.big_m = session->config.big_m;
      const nl2milp::SynthesisResult run = nl2milp::synthesize(
          instance.paragraphs, *session->gateway, options);
      grades.push_back(nl2milp::grade_instance(instance, run));
    }
    emit_string(nl2milp::render_report(grades), report_out);
  });
}

nl2milp_status nl2milp_export_finetune(const char* dataset_path,
                                       double train_ratio,
                                       unsigned long long seed,
                                       const char* prefix) {
  if (dataset_path == nullptr || prefix == nullptr) {
    return fail_argument("export_finetune needs a dataset path and a prefix");
  }
  return guarded([&] {
    const std::vector<nl2milp::LabeledDescription> data =
        nl2milp::load_labeled_dataset(dataset_path);
    const nl2milp::SplitDataset split =
        nl2milp::split_dataset(data, train_ratio, seed);
    nl2milp::export_finetune(split, prefix);
  });
}

}  // extern "C"
