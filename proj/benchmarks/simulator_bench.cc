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
#include "orbitedge/routing.h"
#include "orbitedge/simulator.h"

namespace {

using namespace orbitedge;

SimScenario Prepare(const char* name) {
  const Scenario sc =
      LoadScenario(std::string(ORBITEDGE_DATA_DIR) + "/scenarios/" + name + ".json");
  SimScenario sim;
  sim.constellation = sc.constellation;
  sim.app = sc.app;
  sim.profiles = sc.profiles;
  const auto w = ComputeFrameWorkloads(ComputeFlows(sc.app), sc.workload.tiles_per_frame);
  sim.deployment = SolveDeployment(sc.constellation, sc.app, sc.profiles, w);
  const auto caps = InstanceCapacities(sim.deployment, sc.app, sc.profiles,
                                       sc.constellation.frame_deadline_s);
  sim.routing = GreedyRoute(caps, sc.constellation, sc.app, sc.workload.tiles_per_frame);
  sim.tiles_per_frame = sc.workload.tiles_per_frame;
  sim.num_frames = sc.workload.num_frames;
  sim.link_bandwidth_bps = sc.workload.link_bandwidth_bps;
  sim.request_bytes = sc.workload.request_bytes;
  sim.response_bytes = sc.workload.response_bytes;
  return sim;
}

void BM_Run(benchmark::State& state, const char* name) {
  SimScenario sim = Prepare(name);
  sim.num_frames = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const MetricsReport report = Run(sim);
    benchmark::DoNotOptimize(report.total_hop_bytes);
  }
  state.SetItemsProcessed(state.iterations() * sim.num_frames * sim.tiles_per_frame);
}
BENCHMARK_CAPTURE(BM_Run, jetson3, "jetson3")->Arg(96)->Arg(960)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Run, pi4, "pi4")->Arg(96)->Arg(960)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
