// Copyright 2026 The DP-SBM Authors.
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

#include "dpsbm/error.h"

namespace dpsbm {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kAlphabetViolation: return "AlphabetViolation";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kInfeasibleProblem: return "InfeasibleProblem";
    case ErrorKind::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::kInconsistentRelation: return "InconsistentRelation";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kInfeasibleRegime: return "InfeasibleRegime";
    case ErrorKind::kInvalidShift: return "InvalidShift";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kDegenerateEstimate: return "DegenerateEstimate";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace dpsbm
