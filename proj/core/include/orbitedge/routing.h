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

// Realization graphs pick one deployed instance per analytics function; every
// tile of a frame is tagged with one graph and visits exactly those
// instances. The greedy router keeps consecutive functions on nearby
// satellites so that fewer messages cross inter-satellite links.

#ifndef ORBITEDGE_ROUTING_H_
#define ORBITEDGE_ROUTING_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "orbitedge/model.h"
#include "orbitedge/planner.h"

namespace orbitedge {

struct RealizationGraph {
  std::vector<InstanceKey> vertices;  // vertices[i].function == i
  std::vector<Link> links;            // mirrors the application edges
  FlowTable flows;
  double capacity = 0.0;  // σ, tiles per frame
  double load = 0.0;      // tiles per frame actually assigned
};

enum class RoutingStatus { kComplete, kIncomplete };

std::string_view RoutingStatusName(RoutingStatus status);

struct RoutingPlan {
  std::vector<RealizationGraph> graphs;
  InstanceCapacityTable residual_capacities;
  RoutingStatus status = RoutingStatus::kComplete;
  double requested_load = 0.0;  // N_0
  double unrouted_load = 0.0;   // N_0 - sum of loads
};

enum class HeadSelection {
  // Head instance with the largest residual capacity (lowest satellite on ties).
  kLargestResidual,
  // Head instance closest to the leader satellite.
  kNearestLeader,
};

struct RoutingOptions {
  HeadSelection head_selection = HeadSelection::kLargestResidual;
};

struct GraphCapacity {
  double sigma = 0.0;
  FlowTable flows;
};

// σ = min_i capacity(vertex_i) / Flows[i]. Throws Error{kMissingVertex} when
// a function has no vertex (or more than one) or a vertex has no capacity
// entry.
GraphCapacity RealizationGraphCapacity(std::span<const InstanceKey> vertices,
                                       const InstanceCapacityTable& capacities,
                                       const ValidatedApplication& app);

RoutingPlan GreedyRoute(const InstanceCapacityTable& capacities,
                        const Constellation& constellation,
                        const ValidatedApplication& app, double tiles_per_frame,
                        const RoutingOptions& options = {});

// Same loop as GreedyRoute with every instance drawn uniformly among those
// with residual capacity.
RoutingPlan RandomRoute(const InstanceCapacityTable& capacities,
                        const Constellation& constellation,
                        const ValidatedApplication& app, double tiles_per_frame,
                        uint64_t seed);

// Bytes per frame crossing inter-satellite links, counted once per hop. Each
// downstream tile costs one request and one response.
double TotalHopTraffic(const RoutingPlan& plan, double request_bytes, double response_bytes);

}  // namespace orbitedge

#endif  // ORBITEDGE_ROUTING_H_
