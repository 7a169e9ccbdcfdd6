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

#include "orbitedge/routing.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "orbitedge/error.h"

namespace orbitedge {
namespace {

constexpr double kLoadEpsilon = 1e-9;

using Chooser = std::function<std::optional<InstanceKey>(
    int function, std::optional<int> upstream_satellite)>;

std::vector<InstanceKey> Candidates(const InstanceCapacityTable& residual, int function) {
  std::vector<InstanceKey> out;
  for (auto it = residual.lower_bound({function, 0, Device::kCpu});
       it != residual.end() && it->first.function == function; ++it) {
    if (it->second > kLoadEpsilon) out.push_back(it->first);
  }
  return out;
}

// Algorithm skeleton shared by the greedy and random routers.
RoutingPlan Route(const InstanceCapacityTable& capacities, const Constellation& constellation,
                  const ValidatedApplication& app, double tiles_per_frame,
                  InstanceCapacityTable& residual, const Chooser& choose) {
  if (!(tiles_per_frame >= 0.0) || !std::isfinite(tiles_per_frame)) {
    throw Error(ErrorCode::kInvalidArgument, "tiles per frame must be finite and >= 0");
  }
  for (const auto& [key, cap] : capacities) {
    if (key.function < 0 || key.function >= app.size() || key.satellite < 0 ||
        key.satellite >= constellation.size() || !(cap >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "capacity table does not match the scenario");
    }
  }
  RoutingPlan plan;
  plan.requested_load = tiles_per_frame;
  double remaining = tiles_per_frame;
  const FlowTable flows = ComputeFlows(app);

  while (remaining > kLoadEpsilon && app.size() > 0) {
    std::vector<std::optional<InstanceKey>> chosen(app.size());
    std::deque<int> queue;
    bool stuck = false;
    for (int h : app.heads()) {
      chosen[h] = choose(h, std::nullopt);
      if (!chosen[h]) {
        stuck = true;
        break;
      }
      queue.push_back(h);
    }
    while (!stuck && !queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int l : app.downstream(u)) {
        const int v = app.links()[l].to;
        if (chosen[v]) continue;
        chosen[v] = choose(v, chosen[u]->satellite);
        if (!chosen[v]) {
          stuck = true;
          break;
        }
        queue.push_back(v);
      }
    }
    if (stuck) break;

    RealizationGraph graph;
    for (const auto& key : chosen) graph.vertices.push_back(*key);
    graph.links = app.links();
    graph.flows = flows;
    graph.capacity = std::numeric_limits<double>::infinity();
    for (int i = 0; i < app.size(); ++i) {
      graph.capacity = std::min(graph.capacity, residual.at(graph.vertices[i]) / flows[i]);
    }
    if (!(graph.capacity > kLoadEpsilon)) break;
    graph.load = std::min(graph.capacity, remaining);
    remaining -= graph.load;
    for (int i = 0; i < app.size(); ++i) {
      double& r = residual.at(graph.vertices[i]);
      r -= graph.load * flows[i];
      if (r <= kLoadEpsilon * std::max(1.0, capacities.at(graph.vertices[i]))) r = 0.0;
    }
    plan.graphs.push_back(std::move(graph));
  }

  if (remaining <= kLoadEpsilon) remaining = 0.0;
  plan.unrouted_load = remaining;
  plan.status = remaining > 0.0 ? RoutingStatus::kIncomplete : RoutingStatus::kComplete;
  plan.residual_capacities = residual;
  return plan;
}

}  // namespace

std::string_view RoutingStatusName(RoutingStatus status) {
  return status == RoutingStatus::kComplete ? "Complete" : "Incomplete";
}

GraphCapacity RealizationGraphCapacity(std::span<const InstanceKey> vertices,
                                       const InstanceCapacityTable& capacities,
                                       const ValidatedApplication& app) {
  std::vector<const InstanceKey*> by_function(app.size(), nullptr);
  for (const InstanceKey& v : vertices) {
    if (v.function < 0 || v.function >= app.size() || by_function[v.function] != nullptr) {
      throw Error(ErrorCode::kMissingVertex,
                  "vertex for function " + std::to_string(v.function + 1) +
                      " is out of range or duplicated");
    }
    by_function[v.function] = &v;
  }
  GraphCapacity out;
  out.flows = ComputeFlows(app);
  out.sigma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < app.size(); ++i) {
    if (by_function[i] == nullptr) {
      throw Error(ErrorCode::kMissingVertex,
                  "function " + std::to_string(i + 1) + " has no instance");
    }
    auto it = capacities.find(*by_function[i]);
    if (it == capacities.end()) {
      throw Error(ErrorCode::kMissingVertex,
                  "function " + std::to_string(i + 1) + " instance is not deployed");
    }
    out.sigma = std::min(out.sigma, it->second / out.flows[i]);
  }
  if (app.size() == 0) out.sigma = 0.0;
  return out;
}

RoutingPlan GreedyRoute(const InstanceCapacityTable& capacities,
                        const Constellation& constellation,
                        const ValidatedApplication& app, double tiles_per_frame,
                        const RoutingOptions& options) {
  InstanceCapacityTable residual = capacities;
  // Smaller is better: hop distance, then larger residual, CPU before GPU,
  // lower satellite.
  auto choose = [&](int function, std::optional<int> upstream) -> std::optional<InstanceKey> {
    std::optional<InstanceKey> best;
    double best_distance = 0.0;
    for (const InstanceKey& key : Candidates(residual, function)) {
      double distance = 0.0;
      if (upstream) {
        distance = std::abs(key.satellite - *upstream);
      } else if (options.head_selection == HeadSelection::kNearestLeader) {
        distance = key.satellite;
      }
      bool better = !best;
      if (!better) {
        const double rk = residual.at(key);
        const double rb = residual.at(*best);
        if (upstream || options.head_selection == HeadSelection::kNearestLeader) {
          better = distance < best_distance ||
                   (distance == best_distance &&
                    (rk > rb || (rk == rb && (key.device < best->device ||
                                              (key.device == best->device &&
                                               key.satellite < best->satellite)))));
        } else {
          better = rk > rb || (rk == rb && (key.satellite < best->satellite ||
                                            (key.satellite == best->satellite &&
                                             key.device < best->device)));
        }
      }
      if (better) {
        best = key;
        best_distance = distance;
      }
    }
    return best;
  };
  return Route(capacities, constellation, app, tiles_per_frame, residual, choose);
}

RoutingPlan RandomRoute(const InstanceCapacityTable& capacities,
                        const Constellation& constellation,
                        const ValidatedApplication& app, double tiles_per_frame,
                        uint64_t seed) {
  InstanceCapacityTable residual = capacities;
  std::mt19937_64 rng(seed);
  auto choose = [&](int function, std::optional<int>) -> std::optional<InstanceKey> {
    const std::vector<InstanceKey> pool = Candidates(residual, function);
    if (pool.empty()) return std::nullopt;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
  };
  return Route(capacities, constellation, app, tiles_per_frame, residual, choose);
}

double TotalHopTraffic(const RoutingPlan& plan, double request_bytes, double response_bytes) {
  double bytes = 0.0;
  for (const RealizationGraph& g : plan.graphs) {
    for (const Link& l : g.links) {
      const int hops = std::abs(g.vertices[l.from].satellite - g.vertices[l.to].satellite);
      bytes += g.load * g.flows[l.from] * l.ratio * (request_bytes + response_bytes) * hops;
    }
  }
  return bytes;
}

}  // namespace orbitedge
