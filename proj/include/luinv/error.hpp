// Copyright 2026 The luinv Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace luinv {

enum class ErrorCode {
  BadDimension,
  DimensionMismatch,
  NotNormalized,
  NotHermitian,
  NotPSD,
  NotUnitary,
  SingularOmega,
  SearchBudgetExceeded,
  NoIntertwiner,
  AmbiguousIntertwiner,
  NotScalar,
  VerificationFailed,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `code()` distinguishes the failure kinds that
/// callers branch on (the CLI maps them onto exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace luinv
