// Copyright 2026 The pmcleak Authors
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

#ifndef PMCLEAK_ERROR_HPP_
#define PMCLEAK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmcleak {

enum class ErrorCode {
  kEmptySupport,
  kZeroOrNegativeWeight,
  kNotStochastic,
  kDimensionMismatch,
  kUndefinedOutcome,
  kInvalidArgument,
  kInvalidPmin,
  kInvalidAlphabet,
  kOutsideHighPrivacy,
  kUnboundedLeakage,
  kKTooSmall,
  kAllInfinitePrior,
  kNormalizationDegenerate,
  kCgfUnavailable,
  kSamplerUnavailable,
  kQuadratureFailure,
  kBudgetExceeded,
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pmcleak

#endif  // PMCLEAK_ERROR_HPP_
