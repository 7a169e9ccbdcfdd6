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

#include "orbitedge/profile.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "orbitedge/error.h"

namespace orbitedge {
namespace {

constexpr double kMonotoneTolerance = 1e-9;

// Index of the segment owning `quota` among [lo_0, b_1), [b_1, b_2), ...
int OwningSegment(std::span<const double> breakpoints, double quota) {
  return static_cast<int>(
      std::upper_bound(breakpoints.begin(), breakpoints.end(), quota) -
      breakpoints.begin());
}

double RSquared(std::span<const SpeedSample> samples, const SpeedSegment& line) {
  double mean = 0.0;
  for (const SpeedSample& s : samples) mean += s.speed;
  mean /= static_cast<double>(samples.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const SpeedSample& s : samples) {
    const double r = s.speed - line.At(s.quota);
    ss_res += r * r;
    ss_tot += (s.speed - mean) * (s.speed - mean);
  }
  // Constant observations: R^2 is undefined, report 1 for an exact fit.
  if (ss_tot <= std::numeric_limits<double>::min()) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

// Ordinary least squares y = slope * x + intercept.
std::pair<double, double> FitLine(std::span<const SpeedSample> samples) {
  Eigen::MatrixXd a(samples.size(), 2);
  Eigen::VectorXd y(samples.size());
  for (size_t k = 0; k < samples.size(); ++k) {
    a(k, 0) = samples[k].quota;
    a(k, 1) = 1.0;
    y(k) = samples[k].speed;
  }
  const Eigen::Vector2d beta = a.colPivHouseholderQr().solve(y);
  return {beta(0), beta(1)};
}

}  // namespace

PiecewiseSpeedModel PiecewiseSpeedModel::Create(std::vector<SpeedSegment> segments) {
  if (segments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "speed model has no segments");
  }
  for (size_t k = 0; k < segments.size(); ++k) {
    const SpeedSegment& s = segments[k];
    if (!std::isfinite(s.slope) || !std::isfinite(s.intercept) ||
        !(s.quota_lo >= 0.0) || !(s.quota_hi > s.quota_lo)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "speed segment " + std::to_string(k) + " is malformed");
    }
    if (k > 0 && s.quota_lo != segments[k - 1].quota_hi) {
      throw Error(ErrorCode::kInvalidArgument,
                  "speed segments must be contiguous");
    }
    if (s.slope < -kMonotoneTolerance) {
      throw Error(ErrorCode::kNonMonotoneFit,
                  "speed segment " + std::to_string(k) + " has negative slope");
    }
    if (k > 0 && s.At(s.quota_lo) <
                     segments[k - 1].At(s.quota_lo) - 1e-6) {
      throw Error(ErrorCode::kNonMonotoneFit,
                  "speed model drops at quota " + std::to_string(s.quota_lo));
    }
  }
  PiecewiseSpeedModel model;
  model.segments_ = std::move(segments);
  return model;
}

double EvalSpeed(const PiecewiseSpeedModel& model, double quota) {
  if (model.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty speed model");
  }
  if (!(quota >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "negative CPU quota");
  }
  if (quota < model.domain_lo()) return 0.0;
  if (quota > model.domain_hi() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kQuotaAboveDomain,
                "quota " + std::to_string(quota) + " above model domain " +
                    std::to_string(model.domain_hi()));
  }
  const auto& segs = model.segments();
  for (size_t k = 0; k + 1 < segs.size(); ++k) {
    if (quota < segs[k].quota_hi) return segs[k].At(quota);
  }
  return segs.back().At(quota);
}

bool IsConcave(const PiecewiseSpeedModel& model) {
  const auto& segs = model.segments();
  for (size_t k = 1; k < segs.size(); ++k) {
    if (segs[k].slope > segs[k - 1].slope) return false;
  }
  return true;
}

bool IsContinuous(const PiecewiseSpeedModel& model, double tolerance) {
  const auto& segs = model.segments();
  for (size_t k = 1; k < segs.size(); ++k) {
    const double q = segs[k].quota_lo;
    if (std::abs(segs[k].At(q) - segs[k - 1].At(q)) > tolerance) return false;
  }
  return true;
}

FitResult FitPiecewiseLinear(std::span<const SpeedSample> samples,
                             std::span<const double> breakpoints,
                             FitMode mode) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                "need at least two samples, got " + std::to_string(samples.size()));
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const SpeedSample& s : samples) {
    if (!std::isfinite(s.quota) || !std::isfinite(s.speed) || s.quota < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite or negative sample");
    }
    lo = std::min(lo, s.quota);
    hi = std::max(hi, s.quota);
  }
  for (size_t k = 0; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k] > lo && breakpoints[k] < hi) ||
        (k > 0 && !(breakpoints[k] > breakpoints[k - 1]))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "breakpoints must be strictly increasing inside the sample range");
    }
  }

  const int num_segments = static_cast<int>(breakpoints.size()) + 1;
  std::vector<std::vector<SpeedSample>> owned(num_segments);
  for (const SpeedSample& s : samples) {
    owned[OwningSegment(breakpoints, s.quota)].push_back(s);
  }
  for (int k = 0; k < num_segments; ++k) {
    std::set<double> distinct;
    for (const SpeedSample& s : owned[k]) distinct.insert(s.quota);
    if (distinct.size() < 2) {
      throw Error(ErrorCode::kInsufficientSamples,
                  "segment " + std::to_string(k) +
                      " needs at least two distinct quotas");
    }
  }

  std::vector<SpeedSegment> segments(num_segments);
  for (int k = 0; k < num_segments; ++k) {
    segments[k].quota_lo = k == 0 ? lo : breakpoints[k - 1];
    segments[k].quota_hi = k + 1 == num_segments ? hi : breakpoints[k];
  }

  if (mode == FitMode::kIndependent) {
    for (int k = 0; k < num_segments; ++k) {
      auto [slope, intercept] = FitLine(owned[k]);
      segments[k].slope = slope;
      segments[k].intercept = intercept;
    }
  } else {
    // Hinge basis: y = a + b x + sum_k c_k max(0, x - bp_k).
    const int cols = 2 + static_cast<int>(breakpoints.size());
    Eigen::MatrixXd a(samples.size(), cols);
    Eigen::VectorXd y(samples.size());
    for (size_t r = 0; r < samples.size(); ++r) {
      a(r, 0) = 1.0;
      a(r, 1) = samples[r].quota;
      for (size_t k = 0; k < breakpoints.size(); ++k) {
        a(r, 2 + k) = std::max(0.0, samples[r].quota - breakpoints[k]);
      }
      y(r) = samples[r].speed;
    }
    const Eigen::VectorXd beta = a.colPivHouseholderQr().solve(y);
    double slope = beta(1);
    double intercept = beta(0);
    for (int k = 0; k < num_segments; ++k) {
      if (k > 0) {
        slope += beta(1 + k);
        intercept -= beta(1 + k) * breakpoints[k - 1];
      }
      segments[k].slope = slope;
      segments[k].intercept = intercept;
    }
  }

  for (int k = 0; k < num_segments; ++k) {
    if (segments[k].slope < -kMonotoneTolerance) {
      throw Error(ErrorCode::kNonMonotoneFit,
                  "fitted segment " + std::to_string(k) + " has slope " +
                      std::to_string(segments[k].slope));
    }
  }

  FitResult result;
  result.model = PiecewiseSpeedModel::Create(segments);
  result.r2.reserve(num_segments);
  for (int k = 0; k < num_segments; ++k) {
    result.r2.push_back(RSquared(owned[k], segments[k]));
  }
  return result;
}

void ValidateProfile(const FunctionProfile& p) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "profile '" + p.name + "': " + what);
  };
  if (p.cpu_speed.empty()) fail("missing CPU speed model");
  if (!(p.gpu_speed >= 0.0)) fail("gpu_speed must be >= 0");
  if (!(p.cpu_memory_bytes > 0.0)) fail("memory must be > 0");
  if (!(p.gpu_memory_bytes >= 0.0)) fail("gpu memory must be >= 0");
  if (!(p.min_cpu_quota > 0.0)) fail("min_cpu_quota must be > 0");
  if (!(p.gpu_base_cpu_quota >= 0.0)) fail("gpu_base_cpu_quota must be >= 0");
  if (std::abs(p.cpu_speed.domain_lo() - p.min_cpu_quota) > 1e-9) {
    fail("speed model domain must start at min_cpu_quota");
  }
}

}  // namespace orbitedge
