/* Copyright 2026 The nl2milp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the synthesis library. All objects are opaque handles
 * created and destroyed here; every function that can fail returns a status
 * (0 on success) and leaves a human-readable message in thread-local storage
 * behind nl2milp_last_error(). Strings returned through char** parameters
 * are heap-allocated and must be released with nl2milp_string_free().
 */

#ifndef NL2MILP_CAPI_NL2MILP_H_
#define NL2MILP_CAPI_NL2MILP_H_

#include <stddef.h>

#if defined(_WIN32)
#define NL2MILP_API __declspec(dllexport)
#else
#define NL2MILP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* 0 is success. Positive values are library error codes whose stable names
 * ("parse_error", "provider_timeout", ...) nl2milp_status_name() returns.
 * Negative values are unexpected internal failures. */
typedef int nl2milp_status;

NL2MILP_API const char* nl2milp_version(void);
NL2MILP_API const char* nl2milp_status_name(nl2milp_status status);

/* Message of the last failure on the calling thread; empty after success. */
NL2MILP_API const char* nl2milp_last_error(void);

NL2MILP_API void nl2milp_string_free(char* text);

typedef struct nl2milp_session nl2milp_session;
typedef struct nl2milp_instance nl2milp_instance;
typedef struct nl2milp_model nl2milp_model;
typedef struct nl2milp_result nl2milp_result;

/* --- Sessions: a configured completion backend behind a gateway. -------- */

/* Opens a session from a JSON config file (comments allowed; relative paths
 * resolve against the file's directory). */
NL2MILP_API nl2milp_status nl2milp_session_open(const char* config_path,
                                                nl2milp_session** out);

/* Opens a session from config text. Relative paths inside resolve against
 * base_dir; pass NULL or "" to require absolute paths. */
NL2MILP_API nl2milp_status nl2milp_session_open_json(const char* config_json,
                                                     const char* base_dir,
                                                     nl2milp_session** out);

NL2MILP_API void nl2milp_session_close(nl2milp_session* session);

/* --- Instances: description paragraphs, optionally with a reference. ---- */

NL2MILP_API nl2milp_status nl2milp_instance_load(const char* path,
                                                 nl2milp_instance** out);
NL2MILP_API nl2milp_status nl2milp_instance_from_json(const char* json_text,
                                                      nl2milp_instance** out);
NL2MILP_API nl2milp_status nl2milp_instance_save(
    const nl2milp_instance* instance, const char* path);
NL2MILP_API nl2milp_status nl2milp_instance_to_json(
    const nl2milp_instance* instance, char** out);
NL2MILP_API nl2milp_status nl2milp_instance_id(
    const nl2milp_instance* instance, char** out);
NL2MILP_API void nl2milp_instance_free(nl2milp_instance* instance);

/* --- Synthesis. --------------------------------------------------------- */

/* Runs the three-stage pipeline over the instance's paragraphs. Returns 0
 * whenever a result object was produced, including runs that failed inside
 * the pipeline; check nl2milp_result_ok() for the run's own outcome. */
NL2MILP_API nl2milp_status nl2milp_synthesize(nl2milp_session* session,
                                              const nl2milp_instance* instance,
                                              nl2milp_result** out);

NL2MILP_API int nl2milp_result_ok(const nl2milp_result* result);

NL2MILP_API nl2milp_status nl2milp_result_to_json(const nl2milp_result* result,
                                                  char** out);
NL2MILP_API nl2milp_status nl2milp_result_save(const nl2milp_result* result,
                                               const char* path);

/* Copies the synthesized model out of a successful result. On a failed run
 * this returns the run's own error status and message. */
NL2MILP_API nl2milp_status nl2milp_result_model(const nl2milp_result* result,
                                                nl2milp_model** out);
NL2MILP_API void nl2milp_result_free(nl2milp_result* result);

/* --- Models. ------------------------------------------------------------ */

NL2MILP_API nl2milp_status nl2milp_model_load(const char* path,
                                              nl2milp_model** out);
NL2MILP_API nl2milp_status nl2milp_model_from_json(const char* json_text,
                                                   nl2milp_model** out);
NL2MILP_API nl2milp_status nl2milp_model_save(const nl2milp_model* model,
                                              const char* path);
NL2MILP_API nl2milp_status nl2milp_model_to_json(const nl2milp_model* model,
                                                 char** out);
NL2MILP_API nl2milp_status nl2milp_model_emit_lp(const nl2milp_model* model,
                                                 char** out);
NL2MILP_API nl2milp_status nl2milp_model_emit_latex(const nl2milp_model* model,
                                                    char** out);
NL2MILP_API void nl2milp_model_free(nl2milp_model* model);

/* --- Classification. ---------------------------------------------------- */

/* Classifies one paragraph through the session's backend. */
NL2MILP_API nl2milp_status nl2milp_classify(nl2milp_session* session,
                                            const char* text, int* label_out);

/* Classifies by the offline cue rules alone. When cue_out is non-NULL it
 * receives the cue that fired. Text no cue decides yields the
 * "unclassifiable" status. */
NL2MILP_API nl2milp_status nl2milp_classify_rules(const char* text,
                                                  int* label_out,
                                                  char** cue_out);

/* --- Evaluation. --------------------------------------------------------- */

/* Synthesizes every instance file (each must carry a reference model),
 * grades the runs, and renders the plain-text accuracy report. */
NL2MILP_API nl2milp_status nl2milp_evaluate(nl2milp_session* session,
                                            const char* const* instance_paths,
                                            size_t count, char** report_out);

/* --- Fine-tune export. --------------------------------------------------- */

/* Splits a labeled dataset file per class at train_ratio (selection seeded)
 * and writes <prefix>train.jsonl and <prefix>validation.jsonl. */
NL2MILP_API nl2milp_status nl2milp_export_finetune(const char* dataset_path,
                                                   double train_ratio,
                                                   unsigned long long seed,
                                                   const char* prefix);

#ifdef __cplusplus
}
#endif

#endif /* NL2MILP_CAPI_NL2MILP_H_ */
