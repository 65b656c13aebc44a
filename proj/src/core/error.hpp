// Copyright 2026 The qmed Authors.
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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qmed {

enum class ErrorCode {
  InvalidArgument,
  PriorsNotNormalized,
  NegativePrior,
  StateOutsideBall,
  DegenerateAllCoincident,
  IndexOutOfRange,
  CollinearPoints,
  ShiftLeavesBall,
  GammaCoincidesWithState,
  InfeasibleAlphaSystem,
  IncompletePovm,
  SolverExhausted,
  ProbabilityOutOfRange,
  OutOfParameterRegion,
  WrongArity,
  AngleOutOfRange,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  /// Offending state/element index when the failure is attributable to one.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace qmed
