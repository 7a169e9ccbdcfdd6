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

#include "orbitedge/model.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "orbitedge/error.h"

namespace orbitedge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kUnknownFunctionId: return "UnknownFunctionId";
    case ErrorCode::kInvalidRatio: return "InvalidRatio";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kNonMonotoneFit: return "NonMonotoneFit";
    case ErrorCode::kQuotaAboveDomain: return "QuotaAboveDomain";
    case ErrorCode::kMissingProfile: return "MissingProfile";
    case ErrorCode::kNumericFailure: return "NumericFailure";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotEnoughSatellites: return "NotEnoughSatellites";
    case ErrorCode::kMissingVertex: return "MissingVertex";
    case ErrorCode::kPlanMismatch: return "PlanMismatch";
    case ErrorCode::kTooFewContacts: return "TooFewContacts";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

int ValidatedApplication::FindByName(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (functions_[i].name == name) return i;
  }
  return -1;
}

ValidatedApplication ValidateApplication(const ApplicationGraph& graph) {
  const int n = static_cast<int>(graph.functions.size());
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "application has no functions");
  }

  ValidatedApplication app;
  app.functions_.resize(n);
  std::vector<bool> seen(n, false);
  for (const AnalyticsFunction& f : graph.functions) {
    if (f.id < 1 || f.id > n || seen[f.id - 1]) {
      throw Error(ErrorCode::kUnknownFunctionId,
                  "function ids must be exactly 1.." + std::to_string(n) +
                      ", got " + std::to_string(f.id));
    }
    seen[f.id - 1] = true;
    app.functions_[f.id - 1] = f;
  }

  app.out_.assign(n, {});
  app.in_.assign(n, {});
  std::set<std::pair<int, int>> unique_edges;
  for (const ApplicationEdge& e : graph.edges) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      throw Error(ErrorCode::kUnknownFunctionId,
                  "edge " + std::to_string(e.from) + "->" +
                      std::to_string(e.to) + " references an unknown function");
    }
    if (!(e.ratio > 0.0 && e.ratio <= 1.0)) {
      throw Error(ErrorCode::kInvalidRatio,
                  "edge " + std::to_string(e.from) + "->" +
                      std::to_string(e.to) + " has ratio " +
                      std::to_string(e.ratio) + " outside (0, 1]");
    }
    if (e.from == e.to) {
      throw Error(ErrorCode::kCycleDetected,
                  "self loop on function " + std::to_string(e.from));
    }
    if (!unique_edges.insert({e.from, e.to}).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate edge " + std::to_string(e.from) + "->" +
                      std::to_string(e.to));
    }
    const int index = static_cast<int>(app.links_.size());
    app.links_.push_back({e.from - 1, e.to - 1, e.ratio});
    app.out_[e.from - 1].push_back(index);
    app.in_[e.to - 1].push_back(index);
  }

  // Kahn's algorithm, smallest index first so the order is canonical.
  std::vector<int> indegree(n, 0);
  for (const Link& l : app.links_) ++indegree[l.to];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) {
      ready.push(i);
      app.heads_.push_back(i);
    }
  }
  while (!ready.empty()) {
    const int i = ready.top();
    ready.pop();
    app.order_.push_back(i);
    for (int li : app.out_[i]) {
      if (--indegree[app.links_[li].to] == 0) ready.push(app.links_[li].to);
    }
  }
  if (static_cast<int>(app.order_.size()) != n) {
    throw Error(ErrorCode::kCycleDetected, "application graph has a cycle");
  }
  return app;
}

FlowTable ComputeFlows(const ValidatedApplication& app) {
  FlowTable flows(app.size(), 0.0);
  for (int i : app.heads()) flows[i] = 1.0;
  for (int i : app.topological_order()) {
    for (int li : app.downstream(i)) {
      const Link& l = app.links()[li];
      flows[l.to] += l.ratio * flows[i];
    }
  }
  return flows;
}

std::vector<double> ComputeFrameWorkloads(const FlowTable& flows,
                                          double tiles_per_frame) {
  if (!(tiles_per_frame >= 0.0) || !std::isfinite(tiles_per_frame)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tiles per frame must be finite and non-negative");
  }
  std::vector<double> workloads(flows.size());
  std::transform(flows.begin(), flows.end(), workloads.begin(),
                 [&](double f) { return tiles_per_frame * f; });
  return workloads;
}

void ValidateConstellation(const Constellation& c) {
  if (c.satellites.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "constellation has no satellites");
  }
  for (int j = 0; j < c.size(); ++j) {
    const Satellite& s = c.satellites[j];
    if (s.id != j + 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "satellites must be listed in movement order with ids 1..N");
    }
    if (!(s.cpu_cores > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "satellite " + std::to_string(s.id) + " needs cpu_cores > 0");
    }
    if (s.split_memory) {
      if (!(s.split_memory->cpu_bytes > 0.0) ||
          !(s.split_memory->gpu_bytes >= 0.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "satellite " + std::to_string(s.id) +
                        " has an invalid split memory budget");
      }
    } else if (!(s.memory_bytes > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "satellite " + std::to_string(s.id) + " needs memory > 0");
    }
  }
  if (!(c.frame_deadline_s > 0.0) || !(c.revisit_interval_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame deadline and revisit interval must be positive");
  }
  if (!(c.alpha > 0.0 && c.alpha <= 1.0) || !(c.beta > 0.0 && c.beta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha and beta must lie in (0, 1]");
  }
}

}  // namespace orbitedge
