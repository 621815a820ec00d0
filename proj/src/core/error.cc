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

#include "qra/error.h"

namespace qra {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kDuplicateRecord: return "DuplicateRecord";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kDescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::kMixedKeys: return "MixedKeys";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kNonPositiveMean: return "NonPositiveMean";
    case ErrorCode::kTooFewValues: return "TooFewValues";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kIncompleteMatrix: return "IncompleteMatrix";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kNoComparablePairs: return "NoComparablePairs";
    case ErrorCode::kEmptyOutputs: return "EmptyOutputs";
    case ErrorCode::kNonPositiveN: return "NonPositiveN";
    case ErrorCode::kNetwork: return "NetworkError";
    case ErrorCode::kScorer: return "ScorerError";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace qra
