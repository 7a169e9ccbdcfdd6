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

// Brute-force reference computations for the tests.

#ifndef ORBITEDGE_TESTS_SUPPORT_ORACLES_H_
#define ORBITEDGE_TESTS_SUPPORT_ORACLES_H_

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "orbitedge/model.h"
#include "orbitedge/planner.h"
#include "orbitedge/profile.h"
#include "orbitedge/routing.h"

namespace orbitedge::testing {

// Best min-margin over every CPU/GPU indicator pattern (and every segment
// choice for active CPU instances), one reference LP per pattern. nullopt
// when no pattern covers the workloads.
std::optional<double> EnumerateDeploymentOptimum(const Constellation& constellation,
                                                 const ValidatedApplication& app,
                                                 const ProfileRegistry& profiles,
                                                 std::span<const double> workloads,
                                                 double min_gpu_slice_s = 1e-6);

// Sum over head-to-node paths of the product of edge ratios, straight from
// the file-form graph (1-based ids). Indexed by id - 1.
std::vector<double> PathEnumerationFlows(const ApplicationGraph& graph);

// min over vertices of capacity / flow, by linear scan.
double MinScanCapacity(std::span<const InstanceKey> vertices,
                       const InstanceCapacityTable& capacities,
                       std::span<const double> flows);

// Random DAG on n functions. Ids are shuffled so they need not follow the
// topological order. Profile keys are "p<id>".
ApplicationGraph RandomApplication(std::mt19937_64& rng, int n, double edge_probability);

// Concave, continuous two-segment model.
FunctionProfile RandomConcaveProfile(std::mt19937_64& rng, const std::string& name);
// Two segments with an upward jump at the breakpoint and a free second slope.
FunctionProfile RandomSteppedProfile(std::mt19937_64& rng, const std::string& name);

Constellation RandomConstellation(std::mt19937_64& rng, int satellites,
                                  double gpu_probability);

// Replaces every edge ratio.
ApplicationGraph WithRatio(ApplicationGraph graph, double ratio);

}  // namespace orbitedge::testing

#endif  // ORBITEDGE_TESTS_SUPPORT_ORACLES_H_
