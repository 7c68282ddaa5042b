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

#ifndef FAKEWAKE_ERROR_H_
#define FAKEWAKE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fakewake {

enum class ErrorCode {
  kUnknownSyllable,
  kInvalidCombination,
  kUnknownPhoneme,
  kTooManyUnits,
  kLengthMismatch,
  kBothEmpty,
  kAllSpaces,
  kParseFailure,
  kOracleFailure,
  kProtocolError,
  kTimeout,
  kBelowFuzzyThreshold,
  kEmptyClass,
  kDegenerateData,
  kShapeMismatch,
  kNoPositiveContributions,
  kTooFewSamples,
  kEmptyFuzzySet,
  kEmptyTestSet,
  kEmptyCollective,
  kConfigError,
  kDataError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

  // Oracle failures (including protocol errors and timeouts) abort a run
  // and map to a dedicated CLI exit code.
  bool is_oracle_failure() const {
    return code_ == ErrorCode::kOracleFailure ||
           code_ == ErrorCode::kProtocolError || code_ == ErrorCode::kTimeout;
  }

 private:
  ErrorCode code_;
};

}  // namespace fakewake

#endif  // FAKEWAKE_ERROR_H_
