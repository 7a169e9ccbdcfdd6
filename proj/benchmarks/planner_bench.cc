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


#include <benchmark/benchmark.h>

#include <string>

#include "orbitedge/io.h"
#include "orbitedge/planner.h"

namespace {

using namespace orbitedge;

Scenario Bundled(const char* name) {
  return LoadScenario(std::string(ORBITEDGE_DATA_DIR) + "/scenarios/" + name + ".json");
}

void BM_SolveBundled(benchmark::State& state, const char* name) {
  const Scenario sc = Bundled(name);
  const auto w = ComputeFrameWorkloads(ComputeFlows(sc.app), sc.workload.tiles_per_frame);
  int64_t nodes = 0;
  for (auto _ : state) {
    const DeploymentPlan plan = SolveDeployment(sc.constellation, sc.app, sc.profiles, w);
    nodes = plan.stats.nodes;
    benchmark::DoNotOptimize(plan.objective_margin);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK_CAPTURE(BM_SolveBundled, jetson3, "jetson3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveBundled, pi4, "pi4")->Unit(benchmark::kMillisecond);

// Replicated satellites: N functions on N identical satellites.
void BM_SolveScaled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Scenario sc = Bundled("pi4");
  ApplicationGraph g;
  for (int id = 1; id <= n; ++id) {
    g.functions.push_back({id, "m" + std::to_string(id), id % 2 ? "cloud" : "landuse"});
    if (id > 1) g.edges.push_back({id - 1, id, 0.8});
  }
  const auto app = ValidateApplication(g);
  Constellation c = sc.constellation;
  c.satellites.clear();
  for (int id = 1; id <= n; ++id) c.satellites.push_back({id, 4.0, 8.0 * (1 << 30), std::nullopt, false});
  const auto w = ComputeFrameWorkloads(ComputeFlows(app), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveDeployment(c, app, sc.profiles, w).objective_margin);
  }
}
BENCHMARK(BM_SolveScaled)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_MaxAnalyzableTiles(benchmark::State& state) {
  const Scenario sc = Bundled("pi4");
  for (auto _ : state) {
    benchmark::DoNotOptimize(MaxAnalyzableTiles(sc.constellation, sc.app, sc.profiles));
  }
}
BENCHMARK(BM_MaxAnalyzableTiles)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
