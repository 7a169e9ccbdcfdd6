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

// Analytics function deployment: choose a CPU quota r[i][j] and a GPU time
// slice t[i][j] for every (function, satellite) pair so that the smallest
// per-function capacity margin
//
//   margin_i = sum_j ( f_i(r[i][j]) * Δ_f + v_gpu,i * t[i][j] ) - N_{f,i}
//
// is as large as possible, subject to the GPU time budget α·Δ_f, the CPU
// budget β·c_cpu (including the base quota reserved for each GPU instance),
// the memory budget, and the minimum instantiable quota.
//
// The problem is a mixed-integer program over the indicators
// x_cpu = [r > 0] and x_gpu = [t > 0]; it is solved by best-first
// branch-and-bound over LP relaxations.

#ifndef ORBITEDGE_PLANNER_H_
#define ORBITEDGE_PLANNER_H_

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orbitedge/model.h"
#include "orbitedge/profile.h"

namespace orbitedge {

// Dense row-major matrix indexed [function][satellite].
class PlanMatrix {
 public:
  PlanMatrix() = default;
  PlanMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  double& operator()(int i, int j) { return data_[i * cols_ + j]; }
  double operator()(int i, int j) const { return data_[i * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

enum class SolverStatus { kOptimal, kFeasible, kInfeasible };

std::string_view SolverStatusName(SolverStatus status);

struct SolverStats {
  int64_t nodes = 0;
  int64_t lp_iterations = 0;
  double wall_time_s = 0.0;
};

struct DeploymentPlan {
  PlanMatrix cpu_quota;  // cores
  PlanMatrix gpu_slice;  // seconds per frame
  // min_i margin_i in tiles. NaN for baseline plans, which are not built
  // against a workload.
  double objective_margin = 0.0;
  SolverStatus status = SolverStatus::kInfeasible;
  SolverStats stats;

  int num_functions() const { return cpu_quota.rows(); }
  int num_satellites() const { return cpu_quota.cols(); }
};

enum class SolveMethod {
  kBranchAndBound,
  // Solves one LP per indicator pattern. Exponential; for cross-checks on
  // small instances only.
  kEnumeration,
};

struct SolverOptions {
  SolveMethod method = SolveMethod::kBranchAndBound;
  int64_t max_nodes = 500000;
  // Absolute optimality gap in tiles.
  double gap_tolerance = 1e-6;
  // Smallest GPU slice an active GPU instance may receive.
  double min_gpu_slice_s = 1e-6;
};

// Looks up the profile of every function. Throws Error{kMissingProfile}.
std::vector<const FunctionProfile*> ResolveProfiles(const ValidatedApplication& app,
                                                    const ProfileRegistry& profiles);

// Returns an Infeasible plan (all zeros) when no allocation covers the
// workloads. Throws Error{kMissingProfile} or Error{kNumericFailure}.
DeploymentPlan SolveDeployment(const Constellation& constellation,
                               const ValidatedApplication& app,
                               const ProfileRegistry& profiles,
                               std::span<const double> workloads,
                               const SolverOptions& options = {});

// Largest N_0 (tiles per frame entering every head) for which SolveDeployment
// is not Infeasible, found by bisection to within `tolerance` tiles. Returns 0
// when not even an empty workload can be deployed.
double MaxAnalyzableTiles(const Constellation& constellation,
                          const ValidatedApplication& app,
                          const ProfileRegistry& profiles,
                          const SolverOptions& options = {}, double tolerance = 1e-4);

// Per-function margins sum_j capacity - N_{f,i} of an arbitrary plan.
std::vector<double> FunctionMargins(const DeploymentPlan& plan,
                                    const Constellation& constellation,
                                    const ValidatedApplication& app,
                                    const ProfileRegistry& profiles,
                                    std::span<const double> workloads);

struct ConstraintCheck {
  std::string name;
  bool passed = true;
  // Smallest (budget - usage) over the constraint family; negative when
  // violated. Units follow the constraint (s, tiles, cores, bytes).
  double worst_slack = 0.0;
};

struct VerificationReport {
  std::vector<ConstraintCheck> checks;

  bool passed() const;
  // nullptr when no check has that name.
  const ConstraintCheck* Find(std::string_view name) const;
};

// Checks non-negativity, GPU presence, the GPU time budget, workload
// coverage, the CPU budget, the memory budget (combined or split), the
// minimum quota, and the speed-model domain. Throws
// Error{kDimensionMismatch}.
VerificationReport VerifyPlan(const DeploymentPlan& plan,
                              const Constellation& constellation,
                              const ValidatedApplication& app,
                              const ProfileRegistry& profiles,
                              std::span<const double> workloads,
                              double tolerance = 1e-6);

enum class Device { kCpu, kGpu };

std::string_view DeviceName(Device device);

struct InstanceKey {
  int function = 0;   // 0-based
  int satellite = 0;  // 0-based
  Device device = Device::kCpu;

  auto operator<=>(const InstanceKey&) const = default;
};

// Tiles per frame each instance can analyze: f_i(r)·Δ_f on CPU and
// t·v_gpu on GPU. Instances with zero quota or slice are absent.
using InstanceCapacityTable = std::map<InstanceKey, double>;

InstanceCapacityTable InstanceCapacities(const DeploymentPlan& plan,
                                         const ValidatedApplication& app,
                                         const ProfileRegistry& profiles,
                                         double frame_deadline_s);

// Function i runs alone on satellite i with the whole CPU budget and, when
// the satellite has one, the whole GPU budget. Throws
// Error{kNotEnoughSatellites}.
DeploymentPlan BaselineComputeParallel(const Constellation& constellation,
                                       const ValidatedApplication& app,
                                       const ProfileRegistry& profiles);

// Every function on every satellite with CPU and GPU time split evenly.
// Infeasible when the functions do not fit in a satellite's memory.
DeploymentPlan BaselineDataParallel(const Constellation& constellation,
                                    const ValidatedApplication& app,
                                    const ProfileRegistry& profiles);

}  // namespace orbitedge

#endif  // ORBITEDGE_PLANNER_H_
