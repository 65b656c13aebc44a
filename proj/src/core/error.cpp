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

#include "error.hpp"

namespace qmed {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PriorsNotNormalized: return "PriorsNotNormalized";
    case ErrorCode::NegativePrior: return "NegativePrior";
    case ErrorCode::StateOutsideBall: return "StateOutsideBall";
    case ErrorCode::DegenerateAllCoincident: return "DegenerateAllCoincident";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CollinearPoints: return "CollinearPoints";
    case ErrorCode::ShiftLeavesBall: return "ShiftLeavesBall";
    case ErrorCode::GammaCoincidesWithState: return "GammaCoincidesWithState";
    case ErrorCode::InfeasibleAlphaSystem: return "InfeasibleAlphaSystem";
    case ErrorCode::IncompletePovm: return "IncompletePovm";
    case ErrorCode::SolverExhausted: return "SolverExhausted";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::OutOfParameterRegion: return "OutOfParameterRegion";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
  }
  return "Unknown";
}

}  // namespace qmed
