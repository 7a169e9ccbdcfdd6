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

// Domain types shared by every stage: the analytics application DAG, the
// leader-follower constellation, and the per-function workload derived from
// edge distribution ratios.
//
// Identifiers in files and reports are 1-based (function m_1..m_N, satellite
// s_1..s_N). In memory everything is indexed 0-based: function index
// `i == id - 1`, satellite index `j == id - 1`.

#ifndef ORBITEDGE_MODEL_H_
#define ORBITEDGE_MODEL_H_

#include <optional>
#include <string>
#include <vector>

namespace orbitedge {

struct AnalyticsFunction {
  int id = 0;  // 1-based
  std::string name;
  std::string profile;  // key into the profile registry
};

// Application edge in file form (1-based ids).
struct ApplicationEdge {
  int from = 0;
  int to = 0;
  double ratio = 1.0;  // distribution ratio, in (0, 1]
};

struct ApplicationGraph {
  std::vector<AnalyticsFunction> functions;
  std::vector<ApplicationEdge> edges;
};

// Edge between 0-based function indices.
struct Link {
  int from = 0;
  int to = 0;
  double ratio = 1.0;
};

// An application graph that passed ValidateApplication. Immutable.
class ValidatedApplication {
 public:
  int size() const { return static_cast<int>(functions_.size()); }
  const AnalyticsFunction& function(int index) const { return functions_[index]; }
  const std::vector<AnalyticsFunction>& functions() const { return functions_; }
  const std::vector<Link>& links() const { return links_; }

  // Every index appears after all of its upstream functions.
  const std::vector<int>& topological_order() const { return order_; }
  // Functions with in-degree zero, ascending.
  const std::vector<int>& heads() const { return heads_; }
  // Links leaving / entering a function, as indices into links().
  const std::vector<int>& downstream(int index) const { return out_[index]; }
  const std::vector<int>& upstream(int index) const { return in_[index]; }

  // Index of the function with the given name, or -1.
  int FindByName(const std::string& name) const;

 private:
  friend ValidatedApplication ValidateApplication(const ApplicationGraph& graph);

  std::vector<AnalyticsFunction> functions_;
  std::vector<Link> links_;
  std::vector<int> order_;
  std::vector<int> heads_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Checks ids are exactly 1..N, edge endpoints exist, ratios lie in (0, 1],
// and the graph is acyclic. Throws Error{kUnknownFunctionId, kInvalidRatio,
// kCycleDetected, kInvalidArgument}.
ValidatedApplication ValidateApplication(const ApplicationGraph& graph);

// Proportional workload per function when one unit enters every head.
// Indexed by function index. Fan-in functions sum their parents'
// contributions.
using FlowTable = std::vector<double>;

FlowTable ComputeFlows(const ValidatedApplication& app);

// N_{f,i} = tiles_per_frame * flows[i]. Real valued; nothing is rounded here.
std::vector<double> ComputeFrameWorkloads(const FlowTable& flows,
                                          double tiles_per_frame);

struct SplitMemory {
  double cpu_bytes = 0.0;  // c_cmem
  double gpu_bytes = 0.0;  // c_gmem
};

struct Satellite {
  int id = 0;  // 1-based, movement order
  double cpu_cores = 0.0;
  double memory_bytes = 0.0;
  // When present, the RAM and VRAM budgets are enforced separately instead
  // of the combined memory_bytes budget.
  std::optional<SplitMemory> split_memory;
  bool has_gpu = false;
};

struct Constellation {
  std::vector<Satellite> satellites;
  double frame_deadline_s = 0.0;     // Δ_f
  double revisit_interval_s = 0.0;   // Δ_s
  double alpha = 1.0;                // GPU context-switch discount
  double beta = 1.0;                 // CPU discount

  int size() const { return static_cast<int>(satellites.size()); }
};

// Throws Error{kInvalidArgument} when an invariant does not hold.
void ValidateConstellation(const Constellation& constellation);

}  // namespace orbitedge

#endif  // ORBITEDGE_MODEL_H_
