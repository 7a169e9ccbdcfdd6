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

// Deterministic discrete-event simulation of sensing and in-orbit analytics.
//
// Satellite j (0-based) captures frame F at F·Δ_f + j·Δ_s. Every frame
// brings tiles_per_frame tiles, split across realization graphs in
// proportion to their loads. A tile visits one instance per function; each
// analyzed tile yields downstream tiles at the edge distribution ratio.
// Messages between satellites hop along the chain over FIFO links. An
// instance never touches frame F before its own satellite has captured F.
//
// Each instance has a static per-frame deadline
//
//   D(v, F) = max(capture_j(F), max_u D(u, F) + hops(u, v) · t_msg) + Δ_f
//
// over its upstream instances u, and a tile is dropped when it cannot be
// finished by D(v, F) + grace_s. The grace absorbs integer rounding of
// fractional per-frame loads.

#ifndef ORBITEDGE_SIMULATOR_H_
#define ORBITEDGE_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "orbitedge/model.h"
#include "orbitedge/planner.h"
#include "orbitedge/profile.h"
#include "orbitedge/routing.h"

namespace orbitedge {

struct SimScenario {
  Constellation constellation;
  ValidatedApplication app;
  ProfileRegistry profiles;
  DeploymentPlan deployment;
  RoutingPlan routing;
  int tiles_per_frame = 0;
  int num_frames = 1;
  double link_bandwidth_bps = 1e6;
  double request_bytes = 0.0;
  double response_bytes = 0.0;
  double background_noise = 0.0;  // fractional CPU slowdown in [0, 1)
  // Extra time after an instance's frame deadline before a tile is dropped.
  // Defaults to one Δ_f when unset.
  std::optional<double> grace_s;
};

struct FunctionCounts {
  int64_t received = 0;
  int64_t analyzed = 0;
};

// end_to_end_s runs from the first service start of the frame to the later
// of its last service completion and its last response delivery. revisit_s is
// (highest - lowest satellite that served the frame) · Δ_s; analysis_s is the
// remainder.
struct FrameLatency {
  int frame = 0;
  bool analyzed = false;  // false when no tile of the frame was analyzed
  double revisit_s = 0.0;
  double analysis_s = 0.0;
  double end_to_end_s = 0.0;
};

struct MetricsReport {
  std::vector<FunctionCounts> functions;  // by function index
  std::vector<FrameLatency> frames;
  double total_hop_bytes = 0.0;
  // Bytes per directed adjacent satellite pair (0-based from, to).
  std::map<std::pair<int, int>, double> link_bytes;
  std::vector<double> gpu_busy_s;  // per satellite, whole run
  // Largest GPU busy time of any satellite inside one Δ_f period.
  double max_gpu_busy_per_period_s = 0.0;
  int64_t dropped_tiles = 0;
  // Instances that processed frame F before their satellite captured F.
  int64_t causality_violations = 0;
};

// Throws Error{kPlanMismatch} when the routing references instances the
// deployment does not have or dimensions disagree, and Error{kInvalidArgument}
// for out-of-range scenario fields.
MetricsReport Run(const SimScenario& scenario);

struct CompletionRatios {
  std::vector<double> per_function;
  double application = 1.0;  // minimum over functions
};

// analyzed / received per function (1 when nothing was received).
CompletionRatios CompletionRatio(const MetricsReport& report);

// Frames in which at least one tile was analyzed.
std::vector<FrameLatency> LatencyBreakdown(const MetricsReport& report);

}  // namespace orbitedge

#endif  // ORBITEDGE_SIMULATOR_H_
