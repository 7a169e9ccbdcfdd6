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

#include "orbitedge/planner.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>

#include "orbitedge/error.h"
#include "orbitedge/lp.h"

namespace orbitedge {
namespace {

constexpr double kIntegralTolerance = 1e-6;
constexpr double kCleanThreshold = 1e-9;
constexpr int kMaxEnumerationPatterns = 1 << 22;
constexpr int kSymmetryKeyFunctions = 8;

// LP columns of one (function, satellite) pair; -1 when the instance cannot
// exist on that satellite.
struct PairColumns {
  int x_cpu = -1;
  int r = -1;
  int v = -1;
  int x_gpu = -1;
  int t = -1;
  // Segment-selection encoding, used when the speed model is not a concave
  // continuous function.
  std::vector<int> seg_y;
  std::vector<int> seg_r;
};

struct Milp {
  lp::Problem problem;
  std::vector<int> binaries;
  // Branching classes in priority order: GPU, CPU, segment indicators.
  std::vector<std::vector<int>> branch_order;
  std::vector<PairColumns> pairs;  // [i * num_satellites + j]
  int z = -1;
};

double CpuMemoryBudget(const Satellite& s) {
  return s.split_memory ? s.split_memory->cpu_bytes : s.memory_bytes;
}

double GpuMemoryBudget(const Satellite& s) {
  return s.split_memory ? s.split_memory->gpu_bytes : s.memory_bytes;
}

double CpuCeiling(const Constellation& c, int j, const FunctionProfile& p) {
  return std::min(c.beta * c.satellites[j].cpu_cores, p.cpu_speed.domain_hi());
}

bool CpuPossible(const Constellation& c, int j, const FunctionProfile& p) {
  return p.min_cpu_quota <= CpuCeiling(c, j, p) &&
         p.cpu_memory_bytes <= CpuMemoryBudget(c.satellites[j]);
}

bool GpuPossible(const Constellation& c, int j, const FunctionProfile& p) {
  const Satellite& s = c.satellites[j];
  return s.has_gpu && p.gpu_speed > 0.0 && c.alpha * c.frame_deadline_s > 0.0 &&
         p.gpu_base_cpu_quota <= c.beta * s.cpu_cores &&
         p.gpu_memory_bytes <= GpuMemoryBudget(s);
}

Milp BuildMilp(const Constellation& c, const std::vector<const FunctionProfile*>& prof,
               std::span<const double> workloads, const SolverOptions& options) {
  const int nm = static_cast<int>(prof.size());
  const int ns = c.size();
  const double gpu_budget = c.alpha * c.frame_deadline_s;
  Milp milp;
  lp::Problem& p = milp.problem;
  milp.pairs.resize(nm * ns);

  auto binary = [&]() {
    const int var = p.AddVariable(0.0, 1.0);
    milp.binaries.push_back(var);
    return var;
  };

  for (int i = 0; i < nm; ++i) {
    const FunctionProfile& f = *prof[i];
    const bool hypograph = IsConcave(f.cpu_speed) && IsContinuous(f.cpu_speed);
    for (int j = 0; j < ns; ++j) {
      PairColumns& pc = milp.pairs[i * ns + j];
      if (CpuPossible(c, j, f)) {
        const double ceiling = CpuCeiling(c, j, f);
        pc.x_cpu = binary();
        pc.r = p.AddVariable(0.0, ceiling);
        pc.v = p.AddVariable(0.0, lp::kInfinity);
        p.AddRow({{pc.r, 1.0}, {pc.x_cpu, -ceiling}}, lp::RowSense::kLessEqual, 0.0);
        p.AddRow({{pc.r, 1.0}, {pc.x_cpu, -f.min_cpu_quota}}, lp::RowSense::kGreaterEqual,
                 0.0);
        if (hypograph) {
          for (const SpeedSegment& seg : f.cpu_speed.segments()) {
            p.AddRow({{pc.v, 1.0}, {pc.r, -seg.slope}, {pc.x_cpu, -seg.intercept}},
                     lp::RowSense::kLessEqual, 0.0);
          }
        } else {
          std::vector<lp::Term> pick{{pc.x_cpu, -1.0}};
          std::vector<lp::Term> split{{pc.r, 1.0}};
          std::vector<lp::Term> speed{{pc.v, 1.0}};
          for (const SpeedSegment& seg : f.cpu_speed.segments()) {
            if (seg.quota_lo > ceiling) break;
            const double hi = std::min(seg.quota_hi, ceiling);
            const int y = binary();
            const int rk = p.AddVariable(0.0, hi);
            pc.seg_y.push_back(y);
            pc.seg_r.push_back(rk);
            p.AddRow({{rk, 1.0}, {y, -seg.quota_lo}}, lp::RowSense::kGreaterEqual, 0.0);
            p.AddRow({{rk, 1.0}, {y, -hi}}, lp::RowSense::kLessEqual, 0.0);
            pick.push_back({y, 1.0});
            split.push_back({rk, -1.0});
            speed.push_back({rk, -seg.slope});
            speed.push_back({y, -seg.intercept});
          }
          p.AddRow(std::move(pick), lp::RowSense::kEqual, 0.0);
          p.AddRow(std::move(split), lp::RowSense::kEqual, 0.0);
          p.AddRow(std::move(speed), lp::RowSense::kLessEqual, 0.0);
        }
      }
      if (GpuPossible(c, j, f)) {
        pc.x_gpu = binary();
        pc.t = p.AddVariable(0.0, gpu_budget);
        p.AddRow({{pc.t, 1.0}, {pc.x_gpu, -gpu_budget}}, lp::RowSense::kLessEqual, 0.0);
        p.AddRow({{pc.t, 1.0}, {pc.x_gpu, -options.min_gpu_slice_s}},
                 lp::RowSense::kGreaterEqual, 0.0);
      }
    }
  }

  for (int j = 0; j < ns; ++j) {
    const Satellite& s = c.satellites[j];
    std::vector<lp::Term> gpu_time;
    std::vector<lp::Term> cpu;
    std::vector<lp::Term> mem;
    std::vector<lp::Term> gmem;
    for (int i = 0; i < nm; ++i) {
      const PairColumns& pc = milp.pairs[i * ns + j];
      if (pc.r >= 0) {
        cpu.push_back({pc.r, 1.0});
        mem.push_back({pc.x_cpu, prof[i]->cpu_memory_bytes});
      }
      if (pc.t >= 0) {
        gpu_time.push_back({pc.t, 1.0});
        if (prof[i]->gpu_base_cpu_quota > 0.0) {
          cpu.push_back({pc.x_gpu, prof[i]->gpu_base_cpu_quota});
        }
        (s.split_memory ? gmem : mem).push_back({pc.x_gpu, prof[i]->gpu_memory_bytes});
      }
    }
    if (!gpu_time.empty()) p.AddRow(std::move(gpu_time), lp::RowSense::kLessEqual, gpu_budget);
    if (!cpu.empty()) p.AddRow(std::move(cpu), lp::RowSense::kLessEqual, c.beta * s.cpu_cores);
    if (!mem.empty()) p.AddRow(std::move(mem), lp::RowSense::kLessEqual, CpuMemoryBudget(s));
    if (!gmem.empty()) p.AddRow(std::move(gmem), lp::RowSense::kLessEqual, GpuMemoryBudget(s));
  }

  // Identical satellites are interchangeable: order their indicator patterns
  // by a binary-weighted key so only one permutation stays feasible.
  auto identical = [&](const Satellite& a, const Satellite& b) {
    return a.cpu_cores == b.cpu_cores && a.memory_bytes == b.memory_bytes &&
           a.has_gpu == b.has_gpu && a.split_memory.has_value() == b.split_memory.has_value() &&
           (!a.split_memory || (a.split_memory->cpu_bytes == b.split_memory->cpu_bytes &&
                                a.split_memory->gpu_bytes == b.split_memory->gpu_bytes));
  };
  for (int j = 0; j < ns; ++j) {
    int k = j + 1;
    while (k < ns && !identical(c.satellites[j], c.satellites[k])) ++k;
    if (k == ns) continue;
    std::vector<lp::Term> order;
    for (int i = 0; i < std::min(nm, kSymmetryKeyFunctions); ++i) {
      const double w_gpu = std::ldexp(1.0, 2 * i);
      const double w_cpu = 2.0 * w_gpu;
      const PairColumns& a = milp.pairs[i * ns + j];
      const PairColumns& b = milp.pairs[i * ns + k];
      if (a.x_cpu >= 0) order.push_back({a.x_cpu, w_cpu});
      if (b.x_cpu >= 0) order.push_back({b.x_cpu, -w_cpu});
      if (a.x_gpu >= 0) order.push_back({a.x_gpu, w_gpu});
      if (b.x_gpu >= 0) order.push_back({b.x_gpu, -w_gpu});
    }
    if (!order.empty()) p.AddRow(std::move(order), lp::RowSense::kGreaterEqual, 0.0);
  }

  milp.branch_order.resize(3);
  for (const PairColumns& pc : milp.pairs) {
    if (pc.x_gpu >= 0) milp.branch_order[0].push_back(pc.x_gpu);
    if (pc.x_cpu >= 0) milp.branch_order[1].push_back(pc.x_cpu);
    milp.branch_order[2].insert(milp.branch_order[2].end(), pc.seg_y.begin(), pc.seg_y.end());
  }

  milp.z = p.AddVariable(0.0, lp::kInfinity, 1.0);
  for (int i = 0; i < nm; ++i) {
    std::vector<lp::Term> terms{{milp.z, 1.0}};
    for (int j = 0; j < ns; ++j) {
      const PairColumns& pc = milp.pairs[i * ns + j];
      if (pc.v >= 0) terms.push_back({pc.v, -c.frame_deadline_s});
      if (pc.t >= 0) terms.push_back({pc.t, -prof[i]->gpu_speed});
    }
    p.AddRow(std::move(terms), lp::RowSense::kLessEqual, -workloads[i]);
  }
  return milp;
}

struct SearchState {
  explicit SearchState(const lp::Problem& problem) : solver(problem) {}

  lp::Solver solver;
  std::vector<double> best_values;
  double best_objective = -std::numeric_limits<double>::infinity();
  bool has_incumbent = false;
  SolverStats stats;
};

lp::Solution SolveRelaxation(SearchState& state) {
  lp::Solution sol = state.solver.Solve();
  state.stats.lp_iterations += sol.iterations;
  if (sol.status == lp::Status::kIterationLimit || sol.status == lp::Status::kUnbounded) {
    throw Error(ErrorCode::kNumericFailure, "LP relaxation did not converge");
  }
  return sol;
}

void Offer(SearchState& state, const lp::Solution& sol) {
  if (sol.status != lp::Status::kOptimal) return;
  if (!state.has_incumbent || sol.objective > state.best_objective) {
    state.best_objective = sol.objective;
    state.best_values = sol.values;
    state.has_incumbent = true;
  }
}

// Best-bound search that dives into the preferred child after every branch.
// Returns false when the node limit stopped the search.
bool BranchAndBound(const Milp& milp, SearchState& state, const SolverOptions& options) {
  struct Node {
    std::vector<std::pair<int, double>> fixes;
    double bound;
    bool operator<(const Node& o) const { return bound < o.bound; }
  };
  const lp::Problem& base = milp.problem;
  std::priority_queue<Node> open;
  std::optional<Node> dive = Node{{}, std::numeric_limits<double>::infinity()};
  auto pruned = [&](double bound) {
    return state.has_incumbent && bound <= state.best_objective + options.gap_tolerance;
  };
  for (;;) {
    if (!dive) {
      if (open.empty()) break;
      dive = open.top();
      open.pop();
    }
    Node node = std::move(*dive);
    dive.reset();
    if (pruned(node.bound)) continue;
    if (state.stats.nodes >= options.max_nodes) return false;
    ++state.stats.nodes;

    for (int var : milp.binaries) state.solver.SetBounds(var, base.lower[var], base.upper[var]);
    for (const auto& [var, value] : node.fixes) state.solver.SetBounds(var, value, value);
    state.solver.SetCutoff(state.has_incumbent ? state.best_objective + options.gap_tolerance
                                               : -lp::kInfinity);
    const lp::Solution sol = SolveRelaxation(state);
    if (sol.status != lp::Status::kOptimal || pruned(sol.objective)) continue;

    // Most fractional indicator within the first non-integral priority class.
    int branch = -1;
    for (const std::vector<int>& group : milp.branch_order) {
      double worst = kIntegralTolerance;
      for (int var : group) {
        const double frac = std::abs(sol.values[var] - std::round(sol.values[var]));
        if (frac > worst) {
          worst = frac;
          branch = var;
        }
      }
      if (branch >= 0) break;
    }
    if (branch < 0) {
      // Integral up to tolerance: re-solve with every indicator pinned.
      for (int var : milp.binaries) {
        const double v = std::round(sol.values[var]);
        state.solver.SetBounds(var, v, v);
      }
      state.solver.SetCutoff(-lp::kInfinity);
      Offer(state, SolveRelaxation(state));
      continue;
    }
    const double preferred = sol.values[branch] >= 0.5 ? 1.0 : 0.0;
    Node other{node.fixes, sol.objective};
    other.fixes.push_back({branch, 1.0 - preferred});
    node.fixes.push_back({branch, preferred});
    node.bound = sol.objective;
    open.push(std::move(other));
    dive = std::move(node);
  }
  return true;
}

// One LP per on/off pattern of every instance (and per segment choice when
// the segment encoding is used).
void Enumerate(const Milp& milp, SearchState& state) {
  std::vector<std::vector<std::vector<std::pair<int, double>>>> choices;
  double patterns = 1.0;
  for (const PairColumns& pc : milp.pairs) {
    if (pc.x_cpu >= 0) {
      std::vector<std::vector<std::pair<int, double>>> opts;
      std::vector<std::pair<int, double>> off{{pc.x_cpu, 0.0}};
      for (int y : pc.seg_y) off.push_back({y, 0.0});
      opts.push_back(off);
      if (pc.seg_y.empty()) {
        opts.push_back({{pc.x_cpu, 1.0}});
      } else {
        for (size_t k = 0; k < pc.seg_y.size(); ++k) {
          std::vector<std::pair<int, double>> on{{pc.x_cpu, 1.0}};
          for (size_t q = 0; q < pc.seg_y.size(); ++q) {
            on.push_back({pc.seg_y[q], q == k ? 1.0 : 0.0});
          }
          opts.push_back(std::move(on));
        }
      }
      patterns *= static_cast<double>(opts.size());
      choices.push_back(std::move(opts));
    }
    if (pc.x_gpu >= 0) {
      choices.push_back({{{pc.x_gpu, 0.0}}, {{pc.x_gpu, 1.0}}});
      patterns *= 2.0;
    }
  }
  if (patterns > kMaxEnumerationPatterns) {
    throw Error(ErrorCode::kInvalidArgument, "instance too large for enumeration");
  }
  std::function<void(size_t)> recurse = [&](size_t depth) {
    if (depth == choices.size()) {
      ++state.stats.nodes;
      Offer(state, SolveRelaxation(state));
      return;
    }
    for (const auto& fixes : choices[depth]) {
      for (const auto& [var, value] : fixes) state.solver.SetBounds(var, value, value);
      recurse(depth + 1);
    }
  };
  recurse(0);
}

DeploymentPlan EmptyPlan(int nm, int ns) {
  DeploymentPlan plan;
  plan.cpu_quota = PlanMatrix(nm, ns);
  plan.gpu_slice = PlanMatrix(nm, ns);
  return plan;
}

bool MemoryFits(const Satellite& s, double cpu_bytes, double gpu_bytes) {
  if (s.split_memory) {
    return cpu_bytes <= s.split_memory->cpu_bytes && gpu_bytes <= s.split_memory->gpu_bytes;
  }
  return cpu_bytes + gpu_bytes <= s.memory_bytes;
}

}  // namespace

std::string_view SolverStatusName(SolverStatus status) {
  switch (status) {
    case SolverStatus::kOptimal: return "Optimal";
    case SolverStatus::kFeasible: return "Feasible";
    case SolverStatus::kInfeasible: return "Infeasible";
  }
  return "Unknown";
}

std::string_view DeviceName(Device device) {
  return device == Device::kCpu ? "cpu" : "gpu";
}

std::vector<const FunctionProfile*> ResolveProfiles(const ValidatedApplication& app,
                                                    const ProfileRegistry& profiles) {
  std::vector<const FunctionProfile*> out;
  out.reserve(app.size());
  for (const AnalyticsFunction& f : app.functions()) {
    auto it = profiles.find(f.profile);
    if (it == profiles.end()) {
      throw Error(ErrorCode::kMissingProfile,
                  "function '" + f.name + "' references unknown profile '" + f.profile + "'");
    }
    out.push_back(&it->second);
  }
  return out;
}

DeploymentPlan SolveDeployment(const Constellation& constellation,
                               const ValidatedApplication& app,
                               const ProfileRegistry& profiles,
                               std::span<const double> workloads,
                               const SolverOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(app, profiles);
  const int nm = app.size();
  const int ns = constellation.size();
  if (static_cast<int>(workloads.size()) != nm) {
    throw Error(ErrorCode::kDimensionMismatch, "one workload per function is required");
  }

  const Milp milp = BuildMilp(constellation, prof, workloads, options);
  SearchState state(milp.problem);
  bool complete = true;
  if (options.method == SolveMethod::kEnumeration) {
    Enumerate(milp, state);
  } else {
    complete = BranchAndBound(milp, state, options);
  }

  DeploymentPlan plan = EmptyPlan(nm, ns);
  plan.stats = state.stats;
  if (!state.has_incumbent) {
    if (!complete) {
      throw Error(ErrorCode::kNumericFailure, "node limit reached before any feasible plan");
    }
    plan.status = SolverStatus::kInfeasible;
    plan.objective_margin = 0.0;
  } else {
    const std::vector<double>& x = state.best_values;
    for (int i = 0; i < nm; ++i) {
      for (int j = 0; j < ns; ++j) {
        const PairColumns& pc = milp.pairs[i * ns + j];
        if (pc.x_cpu >= 0 && x[pc.x_cpu] > 0.5) {
          double r = x[pc.r];
          // Keep r inside the chosen segment so a stepped profile is evaluated
          // on the same piece the solver used.
          for (size_t k = 0; k < pc.seg_y.size(); ++k) {
            if (x[pc.seg_y[k]] > 0.5) {
              r = std::max(r, prof[i]->cpu_speed.segments()[k].quota_lo);
            }
          }
          plan.cpu_quota(i, j) = std::clamp(r, prof[i]->min_cpu_quota,
                                            CpuCeiling(constellation, j, *prof[i]));
        }
        if (pc.x_gpu >= 0 && x[pc.x_gpu] > 0.5) {
          const double t = std::clamp(x[pc.t], options.min_gpu_slice_s,
                                      constellation.alpha * constellation.frame_deadline_s);
          plan.gpu_slice(i, j) = t < kCleanThreshold ? 0.0 : t;
        }
      }
    }
    const std::vector<double> margins =
        FunctionMargins(plan, constellation, app, profiles, workloads);
    plan.objective_margin =
        margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
    plan.status = complete ? SolverStatus::kOptimal : SolverStatus::kFeasible;
  }
  plan.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return plan;
}

double MaxAnalyzableTiles(const Constellation& constellation,
                          const ValidatedApplication& app,
                          const ProfileRegistry& profiles,
                          const SolverOptions& options, double tolerance) {
  const FlowTable flows = ComputeFlows(app);
  auto feasible = [&](double tiles) {
    const std::vector<double> workloads = ComputeFrameWorkloads(flows, tiles);
    return SolveDeployment(constellation, app, profiles, workloads, options).status !=
           SolverStatus::kInfeasible;
  };
  if (!feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw Error(ErrorCode::kNumericFailure, "analyzable tiles are unbounded");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<double> FunctionMargins(const DeploymentPlan& plan,
                                    const Constellation& constellation,
                                    const ValidatedApplication& app,
                                    const ProfileRegistry& profiles,
                                    std::span<const double> workloads) {
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(app, profiles);
  if (plan.num_functions() != app.size() || plan.num_satellites() != constellation.size() ||
      static_cast<int>(workloads.size()) != app.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "plan, application and constellation disagree");
  }
  std::vector<double> margins(app.size());
  for (int i = 0; i < app.size(); ++i) {
    const PiecewiseSpeedModel& f = prof[i]->cpu_speed;
    double capacity = 0.0;
    for (int j = 0; j < constellation.size(); ++j) {
      const double r = plan.cpu_quota(i, j);
      if (r > 0.0) {
        capacity += EvalSpeed(f, std::min(r, f.domain_hi())) * constellation.frame_deadline_s;
      }
      capacity += prof[i]->gpu_speed * plan.gpu_slice(i, j);
    }
    margins[i] = capacity - workloads[i];
  }
  return margins;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConstraintCheck& c) { return c.passed; });
}

const ConstraintCheck* VerificationReport::Find(std::string_view name) const {
  for (const ConstraintCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport VerifyPlan(const DeploymentPlan& plan,
                              const Constellation& constellation,
                              const ValidatedApplication& app,
                              const ProfileRegistry& profiles,
                              std::span<const double> workloads,
                              double tolerance) {
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(app, profiles);
  const int nm = app.size();
  const int ns = constellation.size();
  if (plan.num_functions() != nm || plan.num_satellites() != ns ||
      plan.gpu_slice.rows() != nm || plan.gpu_slice.cols() != ns ||
      static_cast<int>(workloads.size()) != nm) {
    throw Error(ErrorCode::kDimensionMismatch, "plan, application and constellation disagree");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double non_negative = kInf;
  double gpu_presence = 0.0;
  double gpu_time = kInf;
  double cpu = kInf;
  // Memory slack is checked relative to the budget.
  double memory = kInf;
  double memory_scaled = kInf;
  double min_quota = kInf;
  double domain = kInf;
  bool finite = true;

  for (int j = 0; j < ns; ++j) {
    const Satellite& s = constellation.satellites[j];
    double t_sum = 0.0;
    double r_sum = 0.0;
    double cmem = 0.0;
    double gmem = 0.0;
    for (int i = 0; i < nm; ++i) {
      const double r = plan.cpu_quota(i, j);
      const double t = plan.gpu_slice(i, j);
      finite = finite && std::isfinite(r) && std::isfinite(t);
      non_negative = std::min({non_negative, r, t});
      if (!s.has_gpu) gpu_presence = std::min(gpu_presence, -t);
      t_sum += t;
      r_sum += r;
      if (t > 0.0) {
        r_sum += prof[i]->gpu_base_cpu_quota;
        gmem += prof[i]->gpu_memory_bytes;
      }
      if (r > 0.0) {
        cmem += prof[i]->cpu_memory_bytes;
        min_quota = std::min(min_quota, r - prof[i]->min_cpu_quota);
        domain = std::min(domain, prof[i]->cpu_speed.domain_hi() - r);
      }
    }
    gpu_time = std::min(gpu_time, constellation.alpha * constellation.frame_deadline_s - t_sum);
    cpu = std::min(cpu, constellation.beta * s.cpu_cores - r_sum);
    auto note_memory = [&](double budget, double used) {
      const double slack = budget - used;
      memory = std::min(memory, slack);
      memory_scaled = std::min(memory_scaled, slack / std::max(1.0, budget));
    };
    if (s.split_memory) {
      note_memory(s.split_memory->cpu_bytes, cmem);
      note_memory(s.split_memory->gpu_bytes, gmem);
    } else {
      note_memory(s.memory_bytes, cmem + gmem);
    }
  }

  double workload = kInf;
  if (finite) {
    const std::vector<double> margins =
        FunctionMargins(plan, constellation, app, profiles, workloads);
    for (double m : margins) workload = std::min(workload, m);
  } else {
    workload = -kInf;
  }

  auto finish = [](double v) { return std::isfinite(v) || v < 0 ? v : 0.0; };
  VerificationReport report;
  auto add = [&](std::string name, double slack, bool ok) {
    report.checks.push_back({std::move(name), ok, finish(slack)});
  };
  add("non_negative", non_negative, finite && non_negative >= -tolerance);
  add("gpu_presence", gpu_presence, gpu_presence >= -tolerance);
  add("gpu_time", gpu_time, gpu_time >= -tolerance);
  add("workload", workload, workload >= -tolerance);
  add("cpu", cpu, cpu >= -tolerance);
  add("memory", memory, memory_scaled >= -tolerance);
  add("min_quota", min_quota, min_quota >= -tolerance);
  add("quota_domain", domain, domain >= -tolerance);
  return report;
}

InstanceCapacityTable InstanceCapacities(const DeploymentPlan& plan,
                                         const ValidatedApplication& app,
                                         const ProfileRegistry& profiles,
                                         double frame_deadline_s) {
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(app, profiles);
  if (plan.num_functions() != app.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "plan and application disagree");
  }
  InstanceCapacityTable table;
  for (int i = 0; i < plan.num_functions(); ++i) {
    for (int j = 0; j < plan.num_satellites(); ++j) {
      const double r = plan.cpu_quota(i, j);
      const double t = plan.gpu_slice(i, j);
      if (r > 0.0) {
        table[{i, j, Device::kCpu}] = EvalSpeed(prof[i]->cpu_speed, r) * frame_deadline_s;
      }
      if (t > 0.0) table[{i, j, Device::kGpu}] = t * prof[i]->gpu_speed;
    }
  }
  return table;
}

DeploymentPlan BaselineComputeParallel(const Constellation& constellation,
                                       const ValidatedApplication& app,
                                       const ProfileRegistry& profiles) {
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(app, profiles);
  const int nm = app.size();
  const int ns = constellation.size();
  if (nm > ns) {
    throw Error(ErrorCode::kNotEnoughSatellites,
                std::to_string(nm) + " functions need " + std::to_string(nm) +
                    " satellites, have " + std::to_string(ns));
  }
  DeploymentPlan plan = EmptyPlan(nm, ns);
  plan.objective_margin = std::numeric_limits<double>::quiet_NaN();
  plan.status = SolverStatus::kFeasible;
  for (int i = 0; i < nm; ++i) {
    const FunctionProfile& f = *prof[i];
    const Satellite& s = constellation.satellites[i];
    const double cpu_budget = constellation.beta * s.cpu_cores;
    bool gpu = GpuPossible(constellation, i, f);
    double r = 0.0;
    for (;;) {
      r = std::min(cpu_budget - (gpu ? f.gpu_base_cpu_quota : 0.0), f.cpu_speed.domain_hi());
      if (r < f.min_cpu_quota || !MemoryFits(s, f.cpu_memory_bytes, 0.0)) r = 0.0;
      const bool fits = MemoryFits(s, r > 0.0 ? f.cpu_memory_bytes : 0.0,
                                gpu ? f.gpu_memory_bytes : 0.0);
      if (fits || !gpu) break;
      gpu = false;
    }
    plan.cpu_quota(i, i) = r;
    plan.gpu_slice(i, i) = gpu ? constellation.alpha * constellation.frame_deadline_s : 0.0;
    if (r <= 0.0 && !gpu) plan.status = SolverStatus::kInfeasible;
  }
  if (plan.status == SolverStatus::kInfeasible) {
    DeploymentPlan empty = EmptyPlan(nm, ns);
    empty.objective_margin = plan.objective_margin;
    return empty;
  }
  return plan;
}

DeploymentPlan BaselineDataParallel(const Constellation& constellation,
                                    const ValidatedApplication& app,
                                    const ProfileRegistry& profiles) {
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(app, profiles);
  const int nm = app.size();
  const int ns = constellation.size();
  DeploymentPlan plan = EmptyPlan(nm, ns);
  plan.objective_margin = std::numeric_limits<double>::quiet_NaN();
  auto infeasible = [&]() {
    DeploymentPlan empty = EmptyPlan(nm, ns);
    empty.objective_margin = plan.objective_margin;
    empty.status = SolverStatus::kInfeasible;
    return empty;
  };
  if (nm == 0) {
    plan.status = SolverStatus::kFeasible;
    return plan;
  }
  std::vector<bool> placed(nm, false);
  for (int j = 0; j < ns; ++j) {
    const Satellite& s = constellation.satellites[j];
    std::vector<bool> gpu(nm, false);
    int gpu_count = 0;
    double reserved = 0.0;
    for (int i = 0; i < nm; ++i) {
      gpu[i] = s.has_gpu && prof[i]->gpu_speed > 0.0 &&
               constellation.alpha * constellation.frame_deadline_s > 0.0;
      if (gpu[i]) {
        ++gpu_count;
        reserved += prof[i]->gpu_base_cpu_quota;
      }
    }
    const double share = (constellation.beta * s.cpu_cores - reserved) / nm;
    double cmem = 0.0;
    double gmem = 0.0;
    for (int i = 0; i < nm; ++i) {
      const double r = std::min(share, prof[i]->cpu_speed.domain_hi());
      if (r >= prof[i]->min_cpu_quota) {
        plan.cpu_quota(i, j) = r;
        cmem += prof[i]->cpu_memory_bytes;
      }
      if (gpu[i]) {
        plan.gpu_slice(i, j) = constellation.alpha * constellation.frame_deadline_s / gpu_count;
        gmem += prof[i]->gpu_memory_bytes;
      }
      placed[i] = placed[i] || plan.cpu_quota(i, j) > 0.0 || gpu[i];
    }
    if (share < 0.0 || !MemoryFits(s, cmem, gmem)) return infeasible();
  }
  if (!std::all_of(placed.begin(), placed.end(), [](bool b) { return b; })) {
    return infeasible();
  }
  plan.status = SolverStatus::kFeasible;
  return plan;
}

}  // namespace orbitedge
