// Copyright 2026 The QRA Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRA_ERROR_H_
#define QRA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qra {

enum class ErrorCode {
  // Input parsing and validation.
  kParse,
  kSchema,
  kInvariantViolation,
  kDuplicateKey,
  kDuplicateRecord,
  // Alignment.
  kKeyMismatch,
  kEmptyIntersection,
  kDescriptorMismatch,
  // Measures.
  kMixedKeys,
  kEmptyInput,
  kDomain,
  kNonPositiveMean,
  kTooFewValues,
  kLengthMismatch,
  kIncompleteMatrix,
  kInsufficientData,
  kNoComparablePairs,
  kEmptyOutputs,
  kNonPositiveN,
  // External scorer.
  kNetwork,
  kScorer,
  kCountMismatch,
  // Output and environment.
  kUnsupportedFormat,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All toolkit failures are reported through this exception. The message
// carries the location (file, line, field path or key) of the offending input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qra

#endif  // QRA_ERROR_H_
