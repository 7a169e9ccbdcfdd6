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

#include "orbitedge/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "orbitedge/error.h"

namespace orbitedge {
namespace {

constexpr double kTimeEpsilon = 1e-9;
constexpr double kNever = std::numeric_limits<double>::infinity();

struct Tile {
  int frame = 0;
  int graph = 0;
  int from_satellite = -1;  // -1 for tiles that enter at a head
  int64_t seq = 0;

  bool operator>(const Tile& o) const {
    return std::tie(frame, seq) > std::tie(o.frame, o.seq);
  }
};

struct Instance {
  InstanceKey key;
  double rate = 0.0;  // tiles per second while running
  double deadline_offset = -kNever;
  // GPU slice [origin + k·Δ_f + offset, ... + length).
  double slice_offset = 0.0;
  double slice_length = 0.0;
  std::priority_queue<Tile, std::vector<Tile>, std::greater<>> queue;
  bool busy = false;
};

struct Message {
  Tile tile;
  int to_instance = -1;  // -1 for responses
  int at = 0;            // current satellite
  int dest = 0;
  double bytes = 0.0;
};

enum class EventType { kCapture, kServiceDone, kLinkArrive, kRelease };

struct Event {
  double time = 0.0;
  int64_t seq = 0;
  EventType type = EventType::kCapture;
  int a = 0;  // satellite, instance or message index
  int b = 0;  // frame
  Tile tile;

  bool operator>(const Event& o) const {
    return std::tie(time, seq) > std::tie(o.time, o.seq);
  }
};

struct GpuPiece {
  int period = 0;
  double seconds = 0.0;
};

struct FrameStats {
  double first_start = kNever;
  double last_end = -kNever;
  int min_satellite = std::numeric_limits<int>::max();
  int max_satellite = -1;
};

class Simulation {
 public:
  explicit Simulation(const SimScenario& s) : s_(s) {}

  MetricsReport Run();

 private:
  void Validate() const;
  void BuildInstances();
  void ComputeDeadlines();
  void ComputeDispatch();
  void Schedule(double time, EventType type, int a, int b = 0, Tile tile = {});
  double Capture(int satellite, int frame) const {
    return frame * s_.constellation.frame_deadline_s +
           satellite * s_.constellation.revisit_interval_s;
  }
  void OnCapture(int satellite, int frame);
  void Enqueue(int instance, const Tile& tile);
  void TryStart(int instance);
  // Start and finish of one tile on a GPU instance starting no earlier than
  // `now`; nullopt when it cannot finish by `limit`.
  std::optional<std::pair<double, double>> GpuWindow(const Instance& inst, double now,
                                                     double limit,
                                                     std::vector<GpuPiece>* pieces) const;
  void OnServiceDone(int instance, const Tile& tile);
  void Send(Message message);
  void OnLinkArrive(int message);
  void OnRelease(int message);

  const SimScenario& s_;
  std::vector<Instance> instances_;
  std::map<InstanceKey, int> index_;
  // graph_instance_[k][i]: instance index of function i in graph k.
  std::vector<std::vector<int>> graph_instance_;
  std::vector<std::vector<double>> carry_;  // [graph][link]
  // dispatch_[F][k] tiles per graph; last column is unrouted.
  std::vector<std::vector<int>> dispatch_;
  std::vector<Message> messages_;
  std::map<std::pair<int, int>, double> link_free_;
  std::map<std::pair<int, int>, double> gpu_period_busy_;
  std::vector<FrameStats> frames_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  int64_t event_seq_ = 0;
  int64_t tile_seq_ = 0;
  double now_ = 0.0;
  double grace_ = 0.0;
  double message_time_ = 0.0;
  MetricsReport report_;
};

void Simulation::Validate() const {
  const int nm = s_.app.size();
  const int ns = s_.constellation.size();
  if (s_.num_frames < 1) throw Error(ErrorCode::kInvalidArgument, "num_frames must be >= 1");
  if (!(s_.link_bandwidth_bps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "link bandwidth must be > 0");
  }
  if (!(s_.request_bytes >= 0.0) || !(s_.response_bytes >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "message sizes must be >= 0");
  }
  if (!(s_.background_noise >= 0.0 && s_.background_noise < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "background noise must lie in [0, 1)");
  }
  if (s_.tiles_per_frame < 0) {
    throw Error(ErrorCode::kInvalidArgument, "tiles per frame must be >= 0");
  }
  if (s_.grace_s && !(*s_.grace_s >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grace must be >= 0");
  }
  const DeploymentPlan& d = s_.deployment;
  if (d.num_functions() != nm || d.num_satellites() != ns || d.gpu_slice.rows() != nm ||
      d.gpu_slice.cols() != ns) {
    throw Error(ErrorCode::kPlanMismatch, "deployment dimensions do not match the scenario");
  }
  for (size_t k = 0; k < s_.routing.graphs.size(); ++k) {
    const RealizationGraph& g = s_.routing.graphs[k];
    if (static_cast<int>(g.vertices.size()) != nm ||
        static_cast<int>(g.flows.size()) != nm) {
      throw Error(ErrorCode::kPlanMismatch,
                  "graph " + std::to_string(k + 1) + " does not have one vertex per function");
    }
    for (int i = 0; i < nm; ++i) {
      const InstanceKey& v = g.vertices[i];
      const bool deployed =
          v.function == i && v.satellite >= 0 && v.satellite < ns &&
          (v.device == Device::kCpu ? d.cpu_quota(i, v.satellite) > 0.0
                                    : d.gpu_slice(i, v.satellite) > 0.0);
      if (!deployed) {
        throw Error(ErrorCode::kPlanMismatch, "graph " + std::to_string(k + 1) +
                                                  " uses an instance the deployment lacks");
      }
    }
  }
}

void Simulation::BuildInstances() {
  const std::vector<const FunctionProfile*> prof = ResolveProfiles(s_.app, s_.profiles);
  const DeploymentPlan& d = s_.deployment;
  for (int j = 0; j < s_.constellation.size(); ++j) {
    double offset = 0.0;
    for (int i = 0; i < s_.app.size(); ++i) {
      if (d.cpu_quota(i, j) > 0.0) {
        Instance inst;
        inst.key = {i, j, Device::kCpu};
        inst.rate = EvalSpeed(prof[i]->cpu_speed, d.cpu_quota(i, j)) *
                    (1.0 - s_.background_noise);
        index_[inst.key] = static_cast<int>(instances_.size());
        instances_.push_back(std::move(inst));
      }
      if (d.gpu_slice(i, j) > 0.0) {
        Instance inst;
        inst.key = {i, j, Device::kGpu};
        inst.rate = prof[i]->gpu_speed;
        inst.slice_offset = offset;
        inst.slice_length = d.gpu_slice(i, j);
        offset += inst.slice_length;
        index_[inst.key] = static_cast<int>(instances_.size());
        instances_.push_back(std::move(inst));
      }
    }
  }
  for (const RealizationGraph& g : s_.routing.graphs) {
    std::vector<int> ids;
    for (const InstanceKey& v : g.vertices) ids.push_back(index_.at(v));
    graph_instance_.push_back(std::move(ids));
    carry_.emplace_back(g.links.size(), 0.0);
  }
}

void Simulation::ComputeDeadlines() {
  const double df = s_.constellation.frame_deadline_s;
  for (int i : s_.app.topological_order()) {
    for (size_t k = 0; k < s_.routing.graphs.size(); ++k) {
      const RealizationGraph& g = s_.routing.graphs[k];
      Instance& inst = instances_[graph_instance_[k][i]];
      double ready = Capture(inst.key.satellite, 0);
      for (const Link& l : g.links) {
        if (l.to != i) continue;
        const Instance& up = instances_[graph_instance_[k][l.from]];
        const int hops = std::abs(up.key.satellite - inst.key.satellite);
        ready = std::max(ready, up.deadline_offset + hops * message_time_);
      }
      inst.deadline_offset = std::max(inst.deadline_offset, ready + df);
    }
  }
}

void Simulation::ComputeDispatch() {
  const size_t ng = s_.routing.graphs.size();
  std::vector<double> weight(ng + 1, 0.0);
  double total = 0.0;
  for (size_t k = 0; k < ng; ++k) weight[k] = std::max(0.0, s_.routing.graphs[k].load);
  weight[ng] = std::max(0.0, s_.routing.unrouted_load);
  for (double w : weight) total += w;
  if (!(total > 0.0)) {
    std::fill(weight.begin(), weight.end(), 0.0);
    weight[ng] = 1.0;
    total = 1.0;
  }
  const int n = s_.tiles_per_frame;
  std::vector<double> acc(ng + 1, 0.0);
  dispatch_.assign(s_.num_frames, std::vector<int>(ng + 1, 0));
  for (int f = 0; f < s_.num_frames; ++f) {
    std::vector<int>& out = dispatch_[f];
    int assigned = 0;
    for (size_t k = 0; k <= ng; ++k) {
      acc[k] += n * weight[k] / total;
      out[k] = std::max(0, static_cast<int>(std::floor(acc[k] + kTimeEpsilon)));
      assigned += out[k];
    }
    // Largest remainders first, lower graph index on ties.
    std::vector<size_t> order(ng + 1);
    for (size_t k = 0; k <= ng; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return acc[a] - out[a] > acc[b] - out[b];
    });
    for (size_t q = 0; assigned < n; q = (q + 1) % order.size()) {
      if (weight[order[q]] > 0.0) {
        ++out[order[q]];
        ++assigned;
      }
    }
    for (size_t q = order.size(); assigned > n && q-- > 0;) {
      const size_t k = order[q];
      const int take = std::min(out[k], assigned - n);
      out[k] -= take;
      assigned -= take;
    }
    for (size_t k = 0; k <= ng; ++k) acc[k] -= out[k];
  }
}

void Simulation::Schedule(double time, EventType type, int a, int b, Tile tile) {
  events_.push({time, event_seq_++, type, a, b, tile});
}

void Simulation::OnCapture(int satellite, int frame) {
  const std::vector<int>& counts = dispatch_[frame];
  const size_t ng = s_.routing.graphs.size();
  if (satellite == 0 && counts[ng] > 0) {
    for (int h : s_.app.heads()) {
      report_.functions[h].received += counts[ng];
      report_.dropped_tiles += counts[ng];
    }
  }
  for (size_t k = 0; k < ng; ++k) {
    for (int h : s_.app.heads()) {
      const int id = graph_instance_[k][h];
      if (instances_[id].key.satellite != satellite) continue;
      report_.functions[h].received += counts[k];
      for (int t = 0; t < counts[k]; ++t) {
        Enqueue(id, {frame, static_cast<int>(k), -1, tile_seq_++});
      }
    }
  }
}

void Simulation::Enqueue(int instance, const Tile& tile) {
  instances_[instance].queue.push(tile);
  if (!instances_[instance].busy) TryStart(instance);
}

std::optional<std::pair<double, double>> Simulation::GpuWindow(
    const Instance& inst, double now, double limit, std::vector<GpuPiece>* pieces) const {
  const double df = s_.constellation.frame_deadline_s;
  const double origin = Capture(inst.key.satellite, 0);
  double work = 1.0 / inst.rate;
  int period = std::max(0, static_cast<int>(std::floor((now - origin) / df)) - 1);
  double start = kNever;
  for (;;) {
    const double open = origin + period * df + inst.slice_offset;
    const double close = open + inst.slice_length;
    if (open > limit) return std::nullopt;
    const double from = std::max(now, open);
    if (from < close) {
      const double piece = std::min(close - from, work);
      if (start == kNever) start = from;
      if (pieces) pieces->push_back({period, piece});
      work -= piece;
      if (work <= kTimeEpsilon * (1.0 / inst.rate)) {
        const double finish = from + piece;
        if (finish > limit + kTimeEpsilon) return std::nullopt;
        return std::make_pair(start, finish);
      }
    }
    ++period;
  }
}

void Simulation::TryStart(int id) {
  Instance& inst = instances_[id];
  const double df = s_.constellation.frame_deadline_s;
  while (!inst.queue.empty()) {
    const Tile tile = inst.queue.top();
    inst.queue.pop();
    const double expiry = tile.frame * df + inst.deadline_offset + grace_;
    if (now_ + kTimeEpsilon < Capture(inst.key.satellite, tile.frame)) {
      ++report_.causality_violations;
    }
    double start = now_;
    double finish = kNever;
    if (inst.rate > 0.0) {
      if (inst.key.device == Device::kCpu) {
        finish = now_ + 1.0 / inst.rate;
      } else if (auto w = GpuWindow(inst, now_, expiry, nullptr)) {
        std::tie(start, finish) = *w;
      }
    }
    if (finish > expiry + kTimeEpsilon) {
      ++report_.dropped_tiles;
      continue;
    }
    inst.busy = true;
    FrameStats& fs = frames_[tile.frame];
    fs.first_start = std::min(fs.first_start, start);
    if (inst.key.device == Device::kGpu) {
      std::vector<GpuPiece> pieces;
      GpuWindow(inst, now_, expiry, &pieces);
      for (const GpuPiece& p : pieces) {
        gpu_period_busy_[{inst.key.satellite, p.period}] += p.seconds;
        report_.gpu_busy_s[inst.key.satellite] += p.seconds;
      }
    }
    Schedule(finish, EventType::kServiceDone, id, 0, tile);
    return;
  }
  inst.busy = false;
}

void Simulation::OnServiceDone(int id, const Tile& tile) {
  Instance& inst = instances_[id];
  const int i = inst.key.function;
  const int sat = inst.key.satellite;
  ++report_.functions[i].analyzed;
  FrameStats& fs = frames_[tile.frame];
  fs.last_end = std::max(fs.last_end, now_);
  fs.min_satellite = std::min(fs.min_satellite, sat);
  fs.max_satellite = std::max(fs.max_satellite, sat);

  const RealizationGraph& g = s_.routing.graphs[tile.graph];
  for (size_t l = 0; l < g.links.size(); ++l) {
    if (g.links[l].from != i) continue;
    double& carry = carry_[tile.graph][l];
    carry += g.links[l].ratio;
    const int emit = static_cast<int>(std::floor(carry + kTimeEpsilon));
    carry -= emit;
    const int to = graph_instance_[tile.graph][g.links[l].to];
    for (int n = 0; n < emit; ++n) {
      Message m;
      m.tile = {tile.frame, tile.graph, sat, tile_seq_++};
      m.to_instance = to;
      m.at = sat;
      m.dest = instances_[to].key.satellite;
      m.bytes = s_.request_bytes;
      Send(m);
    }
  }
  if (tile.from_satellite >= 0 && tile.from_satellite != sat) {
    Message m;
    m.tile = tile;
    m.at = sat;
    m.dest = tile.from_satellite;
    m.bytes = s_.response_bytes;
    Send(m);
  }
  inst.busy = false;
  TryStart(id);
}

void Simulation::Send(Message m) {
  const int index = static_cast<int>(messages_.size());
  messages_.push_back(m);
  if (m.at == m.dest) {
    if (m.to_instance >= 0) OnRelease(index);
    return;
  }
  const int next = m.at + (m.dest > m.at ? 1 : -1);
  double& free = link_free_[{m.at, next}];
  const double start = std::max(now_, free);
  free = start + m.bytes * 8.0 / s_.link_bandwidth_bps;
  report_.link_bytes[{m.at, next}] += m.bytes;
  report_.total_hop_bytes += m.bytes;
  Schedule(free, EventType::kLinkArrive, index);
}

void Simulation::OnLinkArrive(int index) {
  Message m = messages_[index];
  m.at += m.dest > m.at ? 1 : -1;
  if (m.at != m.dest) {
    Send(m);
  } else if (m.to_instance >= 0) {
    messages_[index] = m;
    OnRelease(index);
  } else {
    // Results are back where the tile came from.
    FrameStats& fs = frames_[m.tile.frame];
    fs.last_end = std::max(fs.last_end, now_);
  }
}

void Simulation::OnRelease(int index) {
  const Message& m = messages_[index];
  const double ready = Capture(m.dest, m.tile.frame);
  if (now_ + kTimeEpsilon < ready) {
    Schedule(ready, EventType::kRelease, index);
    return;
  }
  report_.functions[instances_[m.to_instance].key.function].received += 1;
  Enqueue(m.to_instance, m.tile);
}

MetricsReport Simulation::Run() {
  Validate();
  grace_ = s_.grace_s.value_or(s_.constellation.frame_deadline_s);
  message_time_ = s_.request_bytes * 8.0 / s_.link_bandwidth_bps;
  report_.functions.assign(s_.app.size(), {});
  report_.gpu_busy_s.assign(s_.constellation.size(), 0.0);
  frames_.assign(s_.num_frames, {});
  BuildInstances();
  ComputeDeadlines();
  ComputeDispatch();

  for (int f = 0; f < s_.num_frames; ++f) {
    for (int j = 0; j < s_.constellation.size(); ++j) {
      Schedule(Capture(j, f), EventType::kCapture, j, f);
    }
  }
  while (!events_.empty()) {
    const Event e = events_.top();
    events_.pop();
    now_ = e.time;
    switch (e.type) {
      case EventType::kCapture: OnCapture(e.a, e.b); break;
      case EventType::kServiceDone: OnServiceDone(e.a, e.tile); break;
      case EventType::kLinkArrive: OnLinkArrive(e.a); break;
      case EventType::kRelease: OnRelease(e.a); break;
    }
  }

  for (const auto& [key, busy] : gpu_period_busy_) {
    report_.max_gpu_busy_per_period_s = std::max(report_.max_gpu_busy_per_period_s, busy);
  }
  for (int f = 0; f < s_.num_frames; ++f) {
    const FrameStats& fs = frames_[f];
    FrameLatency row;
    row.frame = f;
    if (fs.max_satellite >= 0) {
      row.analyzed = true;
      row.end_to_end_s = fs.last_end - fs.first_start;
      row.revisit_s = (fs.max_satellite - fs.min_satellite) * s_.constellation.revisit_interval_s;
      row.analysis_s = row.end_to_end_s - row.revisit_s;
    }
    report_.frames.push_back(row);
  }
  return std::move(report_);
}

}  // namespace

MetricsReport Run(const SimScenario& scenario) {
  ValidateConstellation(scenario.constellation);
  Simulation sim(scenario);
  return sim.Run();
}

CompletionRatios CompletionRatio(const MetricsReport& report) {
  CompletionRatios out;
  for (const FunctionCounts& c : report.functions) {
    const double r = c.received == 0 ? 1.0
                                     : static_cast<double>(c.analyzed) /
                                           static_cast<double>(c.received);
    out.per_function.push_back(r);
    out.application = std::min(out.application, r);
  }
  return out;
}

std::vector<FrameLatency> LatencyBreakdown(const MetricsReport& report) {
  std::vector<FrameLatency> out;
  for (const FrameLatency& f : report.frames) {
    if (f.analyzed) out.push_back(f);
  }
  return out;
}

}  // namespace orbitedge
