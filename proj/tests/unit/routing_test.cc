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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "orbitedge/error.h"
#include "support/oracles.h"

namespace orbitedge {
namespace {

constexpr Device kCpu = Device::kCpu;
constexpr Device kGpu = Device::kGpu;

ValidatedApplication Chain(int n, double ratio = 1.0) {
  ApplicationGraph g;
  for (int id = 1; id <= n; ++id) g.functions.push_back({id, "m" + std::to_string(id), "p"});
  for (int id = 1; id < n; ++id) g.edges.push_back({id, id + 1, ratio});
  return ValidateApplication(g);
}

ValidatedApplication FanOut() {
  ApplicationGraph g;
  for (int id = 1; id <= 4; ++id) g.functions.push_back({id, "m" + std::to_string(id), "p"});
  g.edges = {{1, 2, 0.5}, {2, 3, 0.5}, {2, 4, 0.5}};
  return ValidateApplication(g);
}

Constellation Satellites(int n) {
  Constellation c;
  for (int id = 1; id <= n; ++id) c.satellites.push_back({id, 4.0, 8e9, std::nullopt, true});
  c.frame_deadline_s = 10.0;
  c.revisit_interval_s = 10.0;
  return c;
}

double HopTiles(const RoutingPlan& plan) {
  return TotalHopTraffic(plan, 0.5, 0.5);
}

double RoutedLoad(const RoutingPlan& plan) {
  double s = 0.0;
  for (const auto& g : plan.graphs) s += g.load;
  return s;
}

TEST(GraphCapacityTest, Examples) {
  const auto app = FanOut();
  InstanceCapacityTable caps;
  std::vector<InstanceKey> v;
  for (int i = 0; i < 4; ++i) {
    v.push_back({i, 0, kCpu});
    caps[v.back()] = 10.0;
  }
  const GraphCapacity g = RealizationGraphCapacity(v, caps, app);
  EXPECT_EQ(g.sigma, 10.0);
  EXPECT_EQ(g.flows, (FlowTable{1.0, 0.5, 0.25, 0.25}));
  EXPECT_EQ(g.sigma, testing::MinScanCapacity(v, caps, g.flows));

  const std::vector<InstanceKey> single{{0, 0, kCpu}};
  EXPECT_EQ(RealizationGraphCapacity(single, {{{0, 0, kCpu}, 7.0}}, Chain(1)).sigma, 7.0);

  const std::vector<InstanceKey> pair{{0, 0, kCpu}, {1, 1, kGpu}};
  const InstanceCapacityTable pc{{{0, 0, kCpu}, 4.0}, {{1, 1, kGpu}, 1.0}};
  EXPECT_EQ(RealizationGraphCapacity(pair, pc, Chain(2, 0.5)).sigma, 2.0);
}

TEST(GraphCapacityTest, MissingVertex) {
  const std::vector<InstanceKey> one{{0, 0, kCpu}};
  const InstanceCapacityTable caps{{{0, 0, kCpu}, 1.0}};
  auto code = [&](std::span<const InstanceKey> v, const InstanceCapacityTable& c) {
    try {
      RealizationGraphCapacity(v, c, Chain(2));
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code(one, caps), ErrorCode::kMissingVertex);
  const std::vector<InstanceKey> dup{{0, 0, kCpu}, {0, 1, kCpu}};
  EXPECT_EQ(code(dup, caps), ErrorCode::kMissingVertex);
  const std::vector<InstanceKey> undeployed{{0, 0, kCpu}, {1, 0, kCpu}};
  EXPECT_EQ(code(undeployed, caps), ErrorCode::kMissingVertex);
}

TEST(GraphCapacityTest, MatchesMinScanOnRandomGraphs) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> cap(0.1, 50.0);
  for (int n = 0; n < 100; ++n) {
    const auto app = ValidateApplication(testing::RandomApplication(rng, 1 + n % 8, 0.4));
    InstanceCapacityTable caps;
    std::vector<InstanceKey> v;
    for (int i = 0; i < app.size(); ++i) {
      v.push_back({i, static_cast<int>(rng() % 5), rng() % 2 ? kCpu : kGpu});
      caps[v.back()] = cap(rng);
    }
    const GraphCapacity g = RealizationGraphCapacity(v, caps, app);
    EXPECT_EQ(g.sigma, testing::MinScanCapacity(v, caps, g.flows));
  }
}

TEST(GreedyRouteTest, LocalInstanceDominates) {
  const InstanceCapacityTable caps{
      {{0, 0, kCpu}, 20.0}, {{1, 0, kCpu}, 20.0}, {{1, 1, kCpu}, 20.0}};
  const RoutingPlan plan = GreedyRoute(caps, Satellites(2), Chain(2), 10.0);
  ASSERT_EQ(plan.status, RoutingStatus::kComplete);
  ASSERT_EQ(plan.graphs.size(), 1u);
  EXPECT_EQ(plan.graphs[0].vertices[1].satellite, 0);
  EXPECT_EQ(TotalHopTraffic(plan, 1000, 1000), 0.0);
}

TEST(GreedyRouteTest, ForcedTwoHopPath) {
  const InstanceCapacityTable caps{{{0, 0, kCpu}, 10.0}, {{1, 2, kCpu}, 10.0}};
  const RoutingPlan plan = GreedyRoute(caps, Satellites(3), Chain(2), 10.0);
  ASSERT_EQ(plan.status, RoutingStatus::kComplete);
  ASSERT_EQ(plan.graphs.size(), 1u);
  EXPECT_EQ(plan.graphs[0].vertices[0].satellite, 0);
  EXPECT_EQ(plan.graphs[0].vertices[1].satellite, 2);
  EXPECT_EQ(plan.graphs[0].load, 10.0);
  // 10 tiles, 1 KB request plus 1 KB response, two hops.
  EXPECT_EQ(TotalHopTraffic(plan, 1000, 1000), 40000.0);
}

// Fewest hop-tiles over every integer split of N_0 tiles across head
// instances; the single downstream instance sits on satellite 1.
double BruteForceHopTiles(const std::vector<double>& head_caps, int n0) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= n0; ++a) {
    const int b = n0 - a;
    if (a > head_caps[0] || b > head_caps[1]) continue;
    best = std::min(best, a * 1.0 + b * 0.0);
  }
  return best;
}

TEST(GreedyRouteTest, SplitAcrossHeadsMatchesBruteForce) {
  const InstanceCapacityTable caps{
      {{0, 0, kCpu}, 5.0}, {{0, 1, kCpu}, 5.0}, {{1, 1, kCpu}, 10.0}};
  const RoutingPlan plan = GreedyRoute(caps, Satellites(2), Chain(2), 10.0);
  ASSERT_EQ(plan.status, RoutingStatus::kComplete);
  EXPECT_EQ(plan.graphs.size(), 2u);
  EXPECT_EQ(HopTiles(plan), 5.0);
  EXPECT_EQ(HopTiles(plan), BruteForceHopTiles({5.0, 5.0}, 10));
}

TEST(GreedyRouteTest, IncompleteWhenCapacityRunsOut) {
  const InstanceCapacityTable caps{{{0, 0, kCpu}, 10.0}, {{1, 0, kCpu}, 4.0}};
  const RoutingPlan plan = GreedyRoute(caps, Satellites(1), Chain(2, 0.5), 10.0);
  EXPECT_EQ(plan.status, RoutingStatus::kIncomplete);
  EXPECT_NEAR(RoutedLoad(plan), 8.0, 1e-12);
  EXPECT_NEAR(plan.unrouted_load, 2.0, 1e-12);
  const RoutingPlan none = GreedyRoute({{{0, 0, kCpu}, 10.0}}, Satellites(1), Chain(2), 1.0);
  EXPECT_EQ(none.status, RoutingStatus::kIncomplete);
  EXPECT_TRUE(none.graphs.empty());
}

TEST(GreedyRouteTest, LoadCappedAtRequest) {
  const InstanceCapacityTable caps{{{0, 0, kCpu}, 100.0}, {{1, 0, kCpu}, 100.0}};
  const RoutingPlan plan = GreedyRoute(caps, Satellites(1), Chain(2), 10.0);
  ASSERT_EQ(plan.graphs.size(), 1u);
  EXPECT_EQ(plan.graphs[0].capacity, 100.0);
  EXPECT_EQ(plan.graphs[0].load, 10.0);
  EXPECT_EQ(plan.residual_capacities.at({0, 0, kCpu}), 90.0);
}

TEST(GreedyRouteTest, HeadSelection) {
  const InstanceCapacityTable caps{
      {{0, 0, kCpu}, 2.0}, {{0, 2, kCpu}, 8.0}, {{1, 0, kCpu}, 20.0}, {{1, 2, kCpu}, 20.0}};
  const RoutingPlan largest = GreedyRoute(caps, Satellites(3), Chain(2), 1.0);
  EXPECT_EQ(largest.graphs[0].vertices[0].satellite, 2);
  RoutingOptions nearest;
  nearest.head_selection = HeadSelection::kNearestLeader;
  const RoutingPlan leader = GreedyRoute(caps, Satellites(3), Chain(2), 1.0, nearest);
  EXPECT_EQ(leader.graphs[0].vertices[0].satellite, 0);
}

InstanceCapacityTable RandomCapacities(std::mt19937_64& rng, int nm, int ns) {
  InstanceCapacityTable caps;
  std::uniform_real_distribution<double> cap(1.0, 30.0);
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < ns; ++j) {
      if (rng() % 2) caps[{i, j, kCpu}] = cap(rng);
      if (rng() % 3 == 0) caps[{i, j, kGpu}] = cap(rng);
    }
    if (caps.lower_bound({i, 0, kCpu}) == caps.end() ||
        caps.lower_bound({i, 0, kCpu})->first.function != i) {
      caps[{i, static_cast<int>(rng() % ns), kCpu}] = cap(rng);
    }
  }
  return caps;
}

TEST(GreedyRouteTest, ConservesCapacityAndIsLocallyGreedy) {
  std::mt19937_64 rng(22);
  for (int n = 0; n < 60; ++n) {
    const auto app = ValidateApplication(testing::RandomApplication(rng, 1 + n % 5, 0.5));
    const int ns = 1 + n % 4;
    const auto caps = RandomCapacities(rng, app.size(), ns);
    const RoutingPlan plan = GreedyRoute(caps, Satellites(ns), app, 40.0);
    InstanceCapacityTable used;
    InstanceCapacityTable residual = caps;
    for (const auto& g : plan.graphs) {
      ASSERT_EQ(static_cast<int>(g.vertices.size()), app.size());
      for (int i = 0; i < app.size(); ++i) EXPECT_EQ(g.vertices[i].function, i);
      // Replay: every single-parent choice was a nearest candidate with residual.
      for (const Link& l : app.links()) {
        if (app.upstream(l.to).size() != 1) continue;
        const int up = g.vertices[l.from].satellite;
        const int dist = std::abs(g.vertices[l.to].satellite - up);
        for (const auto& [key, r] : residual) {
          if (key.function == l.to && r > 1e-9) EXPECT_GE(std::abs(key.satellite - up), dist);
        }
      }
      for (int i = 0; i < app.size(); ++i) {
        used[g.vertices[i]] += g.load * g.flows[i];
        residual[g.vertices[i]] -= g.load * g.flows[i];
      }
    }
    for (const auto& [key, cap] : caps) {
      const double r = plan.residual_capacities.at(key);
      EXPECT_GE(r, -1e-9);
      EXPECT_NEAR(cap - r, used.count(key) ? used.at(key) : 0.0, 1e-9 * std::max(1.0, cap));
    }
    if (plan.status == RoutingStatus::kComplete) EXPECT_NEAR(RoutedLoad(plan), 40.0, 1e-9);
  }
}

TEST(RandomRouteTest, SingleInstanceMatchesGreedy) {
  const InstanceCapacityTable caps{{{0, 0, kCpu}, 10.0}, {{1, 2, kGpu}, 10.0}};
  const RoutingPlan g = GreedyRoute(caps, Satellites(3), Chain(2), 6.0);
  const RoutingPlan r = RandomRoute(caps, Satellites(3), Chain(2), 6.0, 5);
  ASSERT_EQ(g.graphs.size(), r.graphs.size());
  for (size_t k = 0; k < g.graphs.size(); ++k) {
    EXPECT_EQ(g.graphs[k].vertices, r.graphs[k].vertices);
    EXPECT_EQ(g.graphs[k].load, r.graphs[k].load);
  }
}

TEST(RandomRouteTest, DeterministicUnderSeed) {
  std::mt19937_64 rng(23);
  const auto caps = RandomCapacities(rng, 3, 4);
  const auto app = Chain(3, 0.7);
  const RoutingPlan a = RandomRoute(caps, Satellites(4), app, 30.0, 77);
  const RoutingPlan b = RandomRoute(caps, Satellites(4), app, 30.0, 77);
  ASSERT_EQ(a.graphs.size(), b.graphs.size());
  for (size_t k = 0; k < a.graphs.size(); ++k) {
    EXPECT_EQ(a.graphs[k].vertices, b.graphs[k].vertices);
    EXPECT_EQ(a.graphs[k].load, b.graphs[k].load);
  }
}

TEST(RandomRouteTest, MeanHopsNotBelowGreedy) {
  InstanceCapacityTable caps;
  for (int j = 0; j < 3; ++j) {
    caps[{0, j, kCpu}] = 5.0;
    caps[{1, j, kCpu}] = 5.0;
  }
  const auto c = Satellites(3);
  const double greedy = HopTiles(GreedyRoute(caps, c, Chain(2), 15.0));
  double sum = 0.0;
  for (uint64_t seed = 1; seed <= 100; ++seed) sum += HopTiles(RandomRoute(caps, c, Chain(2), 15.0, seed));
  EXPECT_EQ(greedy, 0.0);
  EXPECT_GE(sum / 100, greedy);
  EXPECT_GT(sum / 100, 0.0);
}

TEST(TotalHopTrafficTest, CountsFlowsAndBothMessages) {
  RoutingPlan plan;
  RealizationGraph g;
  g.vertices = {{0, 0, kCpu}, {1, 1, kCpu}, {2, 3, kGpu}, {3, 0, kCpu}};
  g.links = FanOut().links();
  g.flows = {1.0, 0.5, 0.25, 0.25};
  g.load = 8.0;
  plan.graphs.push_back(g);
  // m2: 8·0.5·1 hop; m3: 8·0.25·2 hops; m4: 8·0.25·1 hop.
  EXPECT_DOUBLE_EQ(TotalHopTraffic(plan, 100, 60), (4.0 + 4.0 + 2.0) * 160);
  EXPECT_EQ(TotalHopTraffic(plan, 0, 0), 0.0);
}

}  // namespace
}  // namespace orbitedge
