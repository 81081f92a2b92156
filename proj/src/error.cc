// Copyright 2026 The Relin Authors
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

#include "relin/error.h"

namespace relin {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateId:
      return "DuplicateId";
    case ErrorCode::kUnknownParent:
      return "UnknownParent";
    case ErrorCode::kCycleDetected:
      return "CycleDetected";
    case ErrorCode::kDegreeViolation:
      return "DegreeViolation";
    case ErrorCode::kInvalidPlan:
      return "InvalidPlan";
    case ErrorCode::kInfeasibleRelin:
      return "InfeasibleRelin";
    case ErrorCode::kSearchSpaceTooLarge:
      return "SearchSpaceTooLarge";
    case ErrorCode::kNotSingleOutput:
      return "NotSingleOutput";
    case ErrorCode::kMarkNotRelinearizable:
      return "MarkNotRelinearizable";
    case ErrorCode::kMultipleSinks:
      return "MultipleSinks";
    case ErrorCode::kArityMismatch:
      return "ArityMismatch";
    case ErrorCode::kUnknownVertex:
      return "UnknownVertex";
    case ErrorCode::kNotIsomorphic:
      return "NotIsomorphic";
    case ErrorCode::kLengthOutOfRange:
      return "LengthOutOfRange";
    case ErrorCode::kTooManyItems:
      return "TooManyItems";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kInternal:
      return "Internal";
  }
  return "Unknown";
}

}  // namespace relin
