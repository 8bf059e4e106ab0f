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

// JSON serialization of models, instances, and synthesis results (see
// docs/protocol.md for the schemas), plus LP-format and LaTeX renderings of
// models. Serialization is canonical: saving what was loaded reproduces the
// file byte for byte.

#ifndef NL2MILP_IO_SERIALIZE_H_
#define NL2MILP_IO_SERIALIZE_H_

#include <string>

#include "core/instance.h"
#include "core/ir.h"
#include "json.hpp"
#include "pipeline/pipeline.h"

namespace nl2milp {

nlohmann::ordered_json model_to_json(const MilpModel& model);
MilpModel model_from_json(const nlohmann::json& doc);

nlohmann::ordered_json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& doc);

nlohmann::ordered_json result_to_json(const SynthesisResult& result);
SynthesisResult result_from_json(const nlohmann::json& doc);

// File wrappers; throw kIoError on filesystem trouble, kSchemaError on
// malformed content.
ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& instance, const std::string& path);
MilpModel load_model(const std::string& path);
void save_model(const MilpModel& model, const std::string& path);
SynthesisResult load_result(const std::string& path);
void save_result(const SynthesisResult& result, const std::string& path);

// LP-format text of the model (objective, rows, bounds, integrality
// sections). Throws kMissingObjective when the model has no objective.
std::string emit_lp(const MilpModel& model);

// align-environment LaTeX: one numbered row for the objective and one per
// constraint. Throws kMissingObjective when the model has no objective.
std::string emit_latex(const MilpModel& model);

}  // namespace nl2milp

#endif  // NL2MILP_IO_SERIALIZE_H_
