/*
 * Copyright 2026 The FakeWake Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fakewake/error.h"

namespace fakewake {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSyllable: return "UnknownSyllable";
    case ErrorCode::kInvalidCombination: return "InvalidCombination";
    case ErrorCode::kUnknownPhoneme: return "UnknownPhoneme";
    case ErrorCode::kTooManyUnits: return "TooManyUnits";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kBothEmpty: return "BothEmpty";
    case ErrorCode::kAllSpaces: return "AllSpaces";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kOracleFailure: return "OracleFailure";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kBelowFuzzyThreshold: return "BelowFuzzyThreshold";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNoPositiveContributions: return "NoPositiveContributions";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kEmptyFuzzySet: return "EmptyFuzzySet";
    case ErrorCode::kEmptyTestSet: return "EmptyTestSet";
    case ErrorCode::kEmptyCollective: return "EmptyCollective";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kDataError: return "DataError";
  }
  return "Unknown";
}

}  // namespace fakewake
