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

#include "orbitedge/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <utility>

#include "orbitedge/error.h"

namespace orbitedge {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kPlanFormat = "orbitedge.plan/1";
constexpr std::string_view kRoutingFormat = "orbitedge.routing/1";

[[noreturn]] void Fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

Json Parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string(what) + ": " + e.what());
  }
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) Fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double Number(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number()) Fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double NumberOr(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? Number(j, key) : fallback;
}

int Integer(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) Fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string String(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_string()) Fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& Array(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_array()) Fail(std::string("field '") + key + "' must be an array");
  return v;
}

Json NumberOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double NumberOrNan(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) Fail(std::string("field '") + key + "' must be a number or null");
  return v.get<double>();
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Device ParseDevice(const std::string& s) {
  if (s == "cpu") return Device::kCpu;
  if (s == "gpu") return Device::kGpu;
  Fail("unknown device '" + s + "'");
}

Json InstanceJson(const InstanceKey& k) {
  return Json{{"function", k.function + 1},
              {"satellite", k.satellite + 1},
              {"device", std::string(DeviceName(k.device))}};
}

InstanceKey InstanceFromJson(const Json& j) {
  return {Integer(j, "function") - 1, Integer(j, "satellite") - 1,
          ParseDevice(String(j, "device"))};
}

FunctionProfile ProfileFromJson(const Json& j) {
  FunctionProfile p;
  p.name = String(j, "name");
  std::vector<SpeedSegment> segments;
  for (const Json& s : Array(j, "segments")) {
    segments.push_back({Number(s, "quota_lo"), Number(s, "quota_hi"), Number(s, "slope"),
                        Number(s, "intercept")});
  }
  p.cpu_speed = PiecewiseSpeedModel::Create(std::move(segments));
  p.gpu_speed = NumberOr(j, "gpu_speed", 0.0);
  p.cpu_memory_bytes = Number(j, "cpu_memory_bytes");
  p.gpu_memory_bytes = NumberOr(j, "gpu_memory_bytes", 0.0);
  p.gpu_base_cpu_quota = NumberOr(j, "gpu_base_cpu_quota", 0.0);
  p.min_cpu_quota = NumberOr(j, "min_cpu_quota", p.cpu_speed.domain_lo());
  ValidateProfile(p);
  return p;
}

Json SegmentsJson(const PiecewiseSpeedModel& model) {
  Json out = Json::array();
  for (const SpeedSegment& s : model.segments()) {
    out.push_back({{"quota_lo", s.quota_lo},
                   {"quota_hi", s.quota_hi},
                   {"slope", s.slope},
                   {"intercept", s.intercept}});
  }
  return out;
}

Json ProfileJson(const FunctionProfile& p) {
  return Json{{"name", p.name},
              {"segments", SegmentsJson(p.cpu_speed)},
              {"gpu_speed", p.gpu_speed},
              {"cpu_memory_bytes", p.cpu_memory_bytes},
              {"gpu_memory_bytes", p.gpu_memory_bytes},
              {"gpu_base_cpu_quota", p.gpu_base_cpu_quota},
              {"min_cpu_quota", p.min_cpu_quota}};
}

ProfileRegistry ProfilesFromJson(const Json& j) {
  ProfileRegistry registry;
  for (const Json& p : Array(j, "profiles")) {
    FunctionProfile profile = ProfileFromJson(p);
    const std::string name = profile.name;
    if (!registry.emplace(name, std::move(profile)).second) {
      Fail("duplicate profile '" + name + "'");
    }
  }
  return registry;
}

Json MatrixJson(const PlanMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

PlanMatrix MatrixFromJson(const Json& rows, int nm, int ns, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != nm) {
    Fail(std::string(what) + " must have one row per function");
  }
  PlanMatrix m(nm, ns);
  for (int i = 0; i < nm; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != ns) {
      Fail(std::string(what) + " must have one column per satellite");
    }
    for (int j = 0; j < ns; ++j) {
      if (!rows[i][j].is_number()) Fail(std::string(what) + " entries must be numbers");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return m;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  for (;;) {
    const size_t comma = line.find(',', pos);
    out.push_back(Trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double ParseDouble(std::string_view s, int line) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    Fail("line " + std::to_string(line) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

// Header-keyed CSV reader. Lines starting with '#' go to `comment`.
class CsvTable {
 public:
  CsvTable(std::string_view text, std::vector<std::string> required,
           const std::function<void(std::string_view)>& comment) {
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      const std::string_view line = Trim(text.substr(pos, nl - pos));
      pos = nl + 1;
      ++line_no;
      if (line.empty()) continue;
      if (line.front() == '#') {
        comment(line);
        continue;
      }
      std::vector<std::string_view> cells = SplitCsv(line);
      if (columns_.empty()) {
        for (size_t c = 0; c < cells.size(); ++c) columns_[std::string(cells[c])] = c;
        for (const std::string& name : required) {
          if (!columns_.count(name)) Fail("CSV header lacks column '" + name + "'");
        }
        continue;
      }
      if (cells.size() != columns_.size()) {
        Fail("line " + std::to_string(line_no) + ": expected " +
             std::to_string(columns_.size()) + " fields");
      }
      rows_.push_back(std::move(cells));
      line_numbers_.push_back(line_no);
    }
    if (columns_.empty()) Fail("CSV input has no header");
  }

  size_t size() const { return rows_.size(); }
  std::string_view Text(size_t row, const std::string& column) const {
    return rows_[row][columns_.at(column)];
  }
  double Value(size_t row, const std::string& column) const {
    return ParseDouble(Text(row, column), line_numbers_[row]);
  }

 private:
  std::map<std::string, size_t> columns_;
  std::vector<std::vector<std::string_view>> rows_;
  std::vector<int> line_numbers_;
};

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path.string() + "'");
  out << contents;
}

Scenario ParseScenario(std::string_view text, const std::filesystem::path& base_dir) {
  const Json doc = Parse(text, "scenario");
  Scenario s;
  try {
    const Json& app = Field(doc, "application");
    for (const Json& f : Array(app, "functions")) {
      AnalyticsFunction fn;
      fn.id = Integer(f, "id");
      fn.name = String(f, "name");
      fn.profile = f.contains("profile") ? String(f, "profile") : fn.name;
      s.graph.functions.push_back(std::move(fn));
    }
    if (app.contains("edges")) {
      for (const Json& e : Array(app, "edges")) {
        s.graph.edges.push_back({Integer(e, "from"), Integer(e, "to"), Number(e, "ratio")});
      }
    }

    const Json& con = Field(doc, "constellation");
    for (const Json& sat : Array(con, "satellites")) {
      Satellite x;
      x.id = Integer(sat, "id");
      x.cpu_cores = Number(sat, "cpu_cores");
      x.has_gpu = sat.contains("has_gpu") && Field(sat, "has_gpu").get<bool>();
      const bool split = sat.contains("cpu_memory_bytes") || sat.contains("gpu_memory_bytes");
      if (split) {
        x.split_memory = SplitMemory{Number(sat, "cpu_memory_bytes"),
                                     Number(sat, "gpu_memory_bytes")};
        x.memory_bytes = NumberOr(sat, "memory_bytes",
                                  x.split_memory->cpu_bytes + x.split_memory->gpu_bytes);
      } else {
        x.memory_bytes = Number(sat, "memory_bytes");
      }
      s.constellation.satellites.push_back(x);
    }
    s.constellation.frame_deadline_s = Number(con, "frame_deadline_s");
    s.constellation.revisit_interval_s = Number(con, "revisit_interval_s");
    s.constellation.alpha = NumberOr(con, "alpha", 1.0);
    s.constellation.beta = NumberOr(con, "beta", 1.0);

    const Json& w = Field(doc, "workload");
    s.workload.tiles_per_frame = Integer(w, "tiles_per_frame");
    s.workload.request_bytes = NumberOr(w, "request_bytes", 0.0);
    s.workload.response_bytes = NumberOr(w, "response_bytes", 0.0);
    s.workload.link_bandwidth_bps = NumberOr(w, "link_bandwidth_bps", 1e6);
    s.workload.background_noise = NumberOr(w, "background_noise", 0.0);
    s.workload.num_frames = w.contains("num_frames") ? Integer(w, "num_frames") : 1;

    const Json& p = Field(doc, "profiles");
    if (p.is_string()) {
      s.profiles = LoadProfiles(base_dir / p.get<std::string>());
    } else {
      s.profiles = ProfilesFromJson(p);
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string("scenario: ") + e.what());
  }
  if (s.workload.tiles_per_frame < 0) Fail("tiles_per_frame must be >= 0");
  s.app = ValidateApplication(s.graph);
  ValidateConstellation(s.constellation);
  ResolveProfiles(s.app, s.profiles);
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  return ParseScenario(ReadFile(path), path.parent_path());
}

std::string ScenarioToJson(const Scenario& s) {
  Json functions = Json::array();
  for (const AnalyticsFunction& f : s.graph.functions) {
    functions.push_back({{"id", f.id}, {"name", f.name}, {"profile", f.profile}});
  }
  Json edges = Json::array();
  for (const ApplicationEdge& e : s.graph.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"ratio", e.ratio}});
  }
  Json sats = Json::array();
  for (const Satellite& x : s.constellation.satellites) {
    Json j{{"id", x.id}, {"cpu_cores", x.cpu_cores}, {"memory_bytes", x.memory_bytes},
           {"has_gpu", x.has_gpu}};
    if (x.split_memory) {
      j["cpu_memory_bytes"] = x.split_memory->cpu_bytes;
      j["gpu_memory_bytes"] = x.split_memory->gpu_bytes;
    }
    sats.push_back(std::move(j));
  }
  Json profiles = Json::array();
  for (const auto& [name, p] : s.profiles) profiles.push_back(ProfileJson(p));
  const Json doc{
      {"application", {{"functions", functions}, {"edges", edges}}},
      {"constellation",
       {{"satellites", sats},
        {"frame_deadline_s", s.constellation.frame_deadline_s},
        {"revisit_interval_s", s.constellation.revisit_interval_s},
        {"alpha", s.constellation.alpha},
        {"beta", s.constellation.beta}}},
      {"workload",
       {{"tiles_per_frame", s.workload.tiles_per_frame},
        {"request_bytes", s.workload.request_bytes},
        {"response_bytes", s.workload.response_bytes},
        {"link_bandwidth_bps", s.workload.link_bandwidth_bps},
        {"background_noise", s.workload.background_noise},
        {"num_frames", s.workload.num_frames}}},
      {"profiles", {{"profiles", profiles}}}};
  return Dump(doc);
}

ProfileRegistry ParseProfiles(std::string_view text) {
  const Json doc = Parse(text, "profiles");
  try {
    return ProfilesFromJson(doc);
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string("profiles: ") + e.what());
  }
}

ProfileRegistry LoadProfiles(const std::filesystem::path& path) {
  return ParseProfiles(ReadFile(path));
}

std::string ProfilesToJson(const ProfileRegistry& profiles) {
  Json list = Json::array();
  for (const auto& [name, p] : profiles) list.push_back(ProfileJson(p));
  return Dump(Json{{"profiles", list}});
}

std::map<std::string, std::vector<SpeedSample>> ParseSamplesCsv(std::string_view csv) {
  const CsvTable table(csv, {"function", "quota", "speed"}, [](std::string_view) {});
  std::map<std::string, std::vector<SpeedSample>> out;
  for (size_t r = 0; r < table.size(); ++r) {
    out[std::string(table.Text(r, "function"))].push_back(
        {table.Value(r, "quota"), table.Value(r, "speed")});
  }
  return out;
}

std::string FitsToJson(std::span<const NamedFit> fits, std::span<const double> breakpoints,
                       FitMode mode) {
  Json list = Json::array();
  for (const NamedFit& f : fits) {
    list.push_back({{"name", f.function},
                    {"segments", SegmentsJson(f.fit.model)},
                    {"r2", f.fit.r2}});
  }
  return Dump(Json{{"mode", mode == FitMode::kContinuous ? "continuous" : "independent"},
                   {"breakpoints", std::vector<double>(breakpoints.begin(), breakpoints.end())},
                   {"fits", list}});
}

ContactTrace ParseContactTraceCsv(std::string_view csv) {
  ContactTrace trace;
  const CsvTable table(csv, {"sat_id", "start_s", "end_s", "rate_bps"},
                       [&](std::string_view comment) {
                         constexpr std::string_view kKey = "horizon_s=";
                         const size_t at = comment.find(kKey);
                         if (at != std::string_view::npos) {
                           trace.horizon_s = ParseDouble(Trim(comment.substr(at + kKey.size())), 0);
                         }
                       });
  for (size_t r = 0; r < table.size(); ++r) {
    const double id = table.Value(r, "sat_id");
    if (id != std::floor(id)) Fail("sat_id must be an integer");
    trace.contacts.push_back({static_cast<int>(id), table.Value(r, "start_s"),
                              table.Value(r, "end_s"), table.Value(r, "rate_bps")});
  }
  ValidateTrace(trace);
  return trace;
}

std::string PlanToJson(const DeploymentPlan& plan, const ValidatedApplication& app,
                       const Constellation& constellation, std::string_view input_digest) {
  Json functions = Json::array();
  for (const AnalyticsFunction& f : app.functions()) functions.push_back(f.name);
  Json sats = Json::array();
  for (const Satellite& s : constellation.satellites) sats.push_back(s.id);
  const Json doc{{"format", kPlanFormat},
                 {"input_digest", input_digest},
                 {"status", SolverStatusName(plan.status)},
                 {"objective_margin", NumberOrNull(plan.objective_margin)},
                 {"functions", functions},
                 {"satellites", sats},
                 {"cpu_quota", MatrixJson(plan.cpu_quota)},
                 {"gpu_slice", MatrixJson(plan.gpu_slice)},
                 {"stats",
                  {{"nodes", plan.stats.nodes}, {"lp_iterations", plan.stats.lp_iterations}}}};
  return Dump(doc);
}

DeploymentPlan PlanFromJson(std::string_view text) {
  const Json doc = Parse(text, "plan");
  try {
    if (String(doc, "format") != kPlanFormat) Fail("not a plan document");
    DeploymentPlan plan;
    const int nm = static_cast<int>(Array(doc, "functions").size());
    const int ns = static_cast<int>(Array(doc, "satellites").size());
    plan.cpu_quota = MatrixFromJson(Field(doc, "cpu_quota"), nm, ns, "cpu_quota");
    plan.gpu_slice = MatrixFromJson(Field(doc, "gpu_slice"), nm, ns, "gpu_slice");
    plan.objective_margin = NumberOrNan(doc, "objective_margin");
    const std::string status = String(doc, "status");
    if (status == "Optimal") {
      plan.status = SolverStatus::kOptimal;
    } else if (status == "Feasible") {
      plan.status = SolverStatus::kFeasible;
    } else if (status == "Infeasible") {
      plan.status = SolverStatus::kInfeasible;
    } else {
      Fail("unknown plan status '" + status + "'");
    }
    if (doc.contains("stats")) {
      const Json& st = doc.at("stats");
      plan.stats.nodes = Field(st, "nodes").get<int64_t>();
      plan.stats.lp_iterations = Field(st, "lp_iterations").get<int64_t>();
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string("plan: ") + e.what());
  }
}

std::string RoutingToJson(const RoutingPlan& plan, std::string_view input_digest) {
  Json graphs = Json::array();
  for (size_t k = 0; k < plan.graphs.size(); ++k) {
    const RealizationGraph& g = plan.graphs[k];
    Json vertices = Json::array();
    for (const InstanceKey& v : g.vertices) vertices.push_back(InstanceJson(v));
    Json links = Json::array();
    for (const Link& l : g.links) {
      links.push_back({{"from", l.from + 1}, {"to", l.to + 1}, {"ratio", l.ratio}});
    }
    graphs.push_back({{"k", k + 1},
                      {"capacity", g.capacity},
                      {"load", g.load},
                      {"vertices", vertices},
                      {"links", links},
                      {"flows", g.flows}});
  }
  Json residual = Json::array();
  for (const auto& [key, cap] : plan.residual_capacities) {
    Json entry = InstanceJson(key);
    entry["capacity"] = cap;
    residual.push_back(std::move(entry));
  }
  const Json doc{{"format", kRoutingFormat},
                 {"input_digest", input_digest},
                 {"status", RoutingStatusName(plan.status)},
                 {"requested_load", plan.requested_load},
                 {"unrouted_load", plan.unrouted_load},
                 {"graphs", graphs},
                 {"residual_capacities", residual}};
  return Dump(doc);
}

RoutingPlan RoutingFromJson(std::string_view text) {
  const Json doc = Parse(text, "routing");
  try {
    if (String(doc, "format") != kRoutingFormat) Fail("not a routing document");
    RoutingPlan plan;
    const std::string status = String(doc, "status");
    if (status == "Complete") {
      plan.status = RoutingStatus::kComplete;
    } else if (status == "Incomplete") {
      plan.status = RoutingStatus::kIncomplete;
    } else {
      Fail("unknown routing status '" + status + "'");
    }
    plan.requested_load = Number(doc, "requested_load");
    plan.unrouted_load = Number(doc, "unrouted_load");
    for (const Json& g : Array(doc, "graphs")) {
      RealizationGraph graph;
      graph.capacity = Number(g, "capacity");
      graph.load = Number(g, "load");
      for (const Json& v : Array(g, "vertices")) graph.vertices.push_back(InstanceFromJson(v));
      for (const Json& l : Array(g, "links")) {
        graph.links.push_back({Integer(l, "from") - 1, Integer(l, "to") - 1, Number(l, "ratio")});
      }
      for (const Json& f : Array(g, "flows")) graph.flows.push_back(f.get<double>());
      plan.graphs.push_back(std::move(graph));
    }
    if (doc.contains("residual_capacities")) {
      for (const Json& r : Array(doc, "residual_capacities")) {
        plan.residual_capacities[InstanceFromJson(r)] = Number(r, "capacity");
      }
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string("routing: ") + e.what());
  }
}

std::string MetricsCsv(const MetricsReport& report) {
  std::string out = "frame,revisit_s,analysis_s,end_to_end_s\n";
  for (const FrameLatency& f : report.frames) {
    if (!f.analyzed) continue;
    out += std::to_string(f.frame + 1) + "," + FormatDouble(f.revisit_s) + "," +
           FormatDouble(f.analysis_s) + "," + FormatDouble(f.end_to_end_s) + "\n";
  }
  return out;
}

std::string MetricsSummaryJson(const MetricsReport& report, const ValidatedApplication& app,
                               std::string_view input_digest) {
  const CompletionRatios ratios = CompletionRatio(report);
  Json functions = Json::array();
  for (size_t i = 0; i < report.functions.size(); ++i) {
    functions.push_back({{"id", static_cast<int>(i) + 1},
                         {"name", static_cast<int>(i) < app.size() ? app.function(i).name : ""},
                         {"received", report.functions[i].received},
                         {"analyzed", report.functions[i].analyzed},
                         {"completion_ratio", ratios.per_function[i]}});
  }
  Json links = Json::array();
  for (const auto& [pair, bytes] : report.link_bytes) {
    links.push_back({{"from", pair.first + 1}, {"to", pair.second + 1}, {"bytes", bytes}});
  }
  double latency_sum = 0.0;
  int analyzed_frames = 0;
  for (const FrameLatency& f : report.frames) {
    if (!f.analyzed) continue;
    latency_sum += f.end_to_end_s;
    ++analyzed_frames;
  }
  const Json doc{
      {"format", "orbitedge.metrics/1"},
      {"input_digest", input_digest},
      {"application_completion_ratio", ratios.application},
      {"functions", functions},
      {"total_hop_bytes", report.total_hop_bytes},
      {"links", links},
      {"gpu_busy_s", report.gpu_busy_s},
      {"dropped_tiles", report.dropped_tiles},
      {"frames", static_cast<int>(report.frames.size())},
      {"mean_end_to_end_s", analyzed_frames ? Json(latency_sum / analyzed_frames) : Json()}};
  return Dump(doc);
}

std::string CdfCsv(std::span<const CdfPoint> cdf) {
  std::string out = "interval_s,cumulative_fraction\n";
  for (const CdfPoint& p : cdf) {
    out += FormatDouble(p.value) + "," + FormatDouble(p.fraction) + "\n";
  }
  return out;
}

std::string RatiosCsv(std::span<const ContactRatio> ratios) {
  std::string out = "sat_id,start_s,previous_interval_s,ratio\n";
  for (const ContactRatio& r : ratios) {
    out += std::to_string(r.satellite_id) + "," + FormatDouble(r.start_s) + "," +
           FormatDouble(r.previous_interval_s) + "," + FormatDouble(r.ratio) + "\n";
  }
  return out;
}

std::string DocumentDigest(std::string_view text) {
  const Json doc = Parse(text, "document");
  if (!doc.is_object() || !doc.contains("input_digest") || !doc["input_digest"].is_string()) {
    return {};
  }
  return doc["input_digest"].get<std::string>();
}

}  // namespace orbitedge
