// Copyright 2026 The orbitedge Authors.
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

#ifndef ORBITEDGE_ERROR_H_
#define ORBITEDGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitedge {

enum class ErrorCode {
  // model
  kCycleDetected,
  kUnknownFunctionId,
  kInvalidRatio,
  kInvalidArgument,
  // profile
  kInsufficientSamples,
  kNonMonotoneFit,
  kQuotaAboveDomain,
  // planner
  kMissingProfile,
  kNumericFailure,
  kDimensionMismatch,
  kNotEnoughSatellites,
  // routing
  kMissingVertex,
  // simulator
  kPlanMismatch,
  // groundlink
  kTooFewContacts,
  // io
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable domain errors are reported through this exception type.
// Infeasibility is never an error: planners and routers return it as a status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbitedge

#endif  // ORBITEDGE_ERROR_H_
