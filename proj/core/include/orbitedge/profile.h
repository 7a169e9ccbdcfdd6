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

#ifndef ORBITEDGE_PROFILE_H_
#define ORBITEDGE_PROFILE_H_

#include <map>
#include <span>
#include <string>
#include <vector>

namespace orbitedge {

// One line of a piecewise speed model, valid on [quota_lo, quota_hi].
struct SpeedSegment {
  double quota_lo = 0.0;
  double quota_hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;

  double At(double quota) const { return slope * quota + intercept; }
};

// CPU analysis speed (tiles/s) as a function of the CPU quota (cores).
// Segments are contiguous; the domain is [front().quota_lo, back().quota_hi].
// Quota q belongs to the segment with quota_lo <= q < quota_hi (the last
// segment also owns its upper end).
class PiecewiseSpeedModel {
 public:
  PiecewiseSpeedModel() = default;

  // Throws Error{kInvalidArgument} on gaps/overlaps or empty segments and
  // Error{kNonMonotoneFit} if the model decreases anywhere.
  static PiecewiseSpeedModel Create(std::vector<SpeedSegment> segments);

  const std::vector<SpeedSegment>& segments() const { return segments_; }
  double domain_lo() const { return segments_.front().quota_lo; }
  double domain_hi() const { return segments_.back().quota_hi; }
  bool empty() const { return segments_.empty(); }

 private:
  std::vector<SpeedSegment> segments_;
};

// Speed at `quota`. Below the domain the function cannot be instantiated and
// the speed is 0. Throws Error{kQuotaAboveDomain} above the domain.
double EvalSpeed(const PiecewiseSpeedModel& model, double quota);

// Slopes are non-increasing left to right.
bool IsConcave(const PiecewiseSpeedModel& model);

// Adjacent segments agree at their shared breakpoint within `tolerance`.
bool IsContinuous(const PiecewiseSpeedModel& model, double tolerance = 1e-6);

struct SpeedSample {
  double quota = 0.0;
  double speed = 0.0;
};

enum class FitMode {
  // Joint least squares with the lines forced to meet at every breakpoint.
  kContinuous,
  // Ordinary least squares on each segment separately (table-literal mode).
  kIndependent,
};

struct FitResult {
  PiecewiseSpeedModel model;
  std::vector<double> r2;  // per segment, on that segment's own samples
};

// Fits one line per segment delimited by `breakpoints` over the sample range.
// Throws Error{kInsufficientSamples} when a segment owns fewer than two
// distinct quotas, Error{kInvalidArgument} for bad breakpoints, and
// Error{kNonMonotoneFit} when the fitted model decreases.
FitResult FitPiecewiseLinear(std::span<const SpeedSample> samples,
                             std::span<const double> breakpoints,
                             FitMode mode = FitMode::kContinuous);

struct FunctionProfile {
  std::string name;
  PiecewiseSpeedModel cpu_speed;   // f_i
  double gpu_speed = 0.0;          // v_gpu,i in tiles/s
  double cpu_memory_bytes = 0.0;   // r_cmem,i (r_mem,i when not split)
  double gpu_memory_bytes = 0.0;   // r_gmem,i
  double gpu_base_cpu_quota = 0.0; // r_gcpu,i
  double min_cpu_quota = 0.0;      // lb_cpu,i
};

// Throws Error{kInvalidArgument} when a field is out of range or the speed
// model domain does not start at min_cpu_quota.
void ValidateProfile(const FunctionProfile& profile);

using ProfileRegistry = std::map<std::string, FunctionProfile>;

}  // namespace orbitedge

#endif  // ORBITEDGE_PROFILE_H_
