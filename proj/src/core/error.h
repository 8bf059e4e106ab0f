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

#ifndef NL2MILP_CORE_ERROR_H_
#define NL2MILP_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace nl2milp {

// Failure categories surfaced by the library. Every thrown nl2milp::Error
// carries exactly one of these; the C API maps them onto integer statuses.
enum class ErrorCode {
  kInvalidArgument,

  // Expressions and models.
  kInvalidExpression,
  kInvalidName,
  kDegenerateConstraint,
  kIncompleteAssignment,
  kModelInconsistent,

  // Parsing of replies and grammar text.
  kParseError,
  kEmptyExpression,
  kMissingDirection,
  kEmptyList,

  // Taxonomy.
  kNoCrosswalk,

  // Prompt construction.
  kPromptContractViolation,

  // Completion providers.
  kProviderUnavailable,
  kProviderRejected,
  kProviderTimeout,

  // Classification and datasets.
  kInvalidLabel,
  kUnclassifiable,
  kInsufficientClassData,

  // Synthesis pipeline.
  kNoVariablesFound,
  kInvalidVariableSet,
  kGenerationFailed,
  kDuplicateObjective,
  kMissingObjective,

  // Evaluation.
  kAlignmentError,

  // Serialization and I/O.
  kSchemaError,
  kIoError,
};

// Stable identifier for an ErrorCode, e.g. "parse_error".
const char* error_code_name(ErrorCode code);

// Inverse of error_code_name; throws kSchemaError on unknown names.
ErrorCode error_code_from_name(const std::string& name);

// Exception type used across the library. `index` optionally records which
// paragraph of an instance a staged failure refers to (-1 when not
// applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int index = -1)
      : std::runtime_error(message), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  int index() const { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

}  // namespace nl2milp

#endif  // NL2MILP_CORE_ERROR_H_
