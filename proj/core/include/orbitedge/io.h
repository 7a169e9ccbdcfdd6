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

// Text formats. Structured documents (scenario, profiles, plan, routing,
// metrics summary) are JSON; tabular data (samples, contact traces, per-frame
// metrics, CDF and ratio series) is CSV with a header row. Ids in files are
// 1-based. Parse failures throw Error{kParseError}.

#ifndef ORBITEDGE_IO_H_
#define ORBITEDGE_IO_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitedge/groundlink.h"
#include "orbitedge/model.h"
#include "orbitedge/planner.h"
#include "orbitedge/profile.h"
#include "orbitedge/routing.h"
#include "orbitedge/simulator.h"

namespace orbitedge {

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

struct WorkloadSpec {
  int tiles_per_frame = 0;  // N_0
  double request_bytes = 0.0;
  double response_bytes = 0.0;
  double link_bandwidth_bps = 1e6;
  double background_noise = 0.0;
  int num_frames = 1;
};

struct Scenario {
  ApplicationGraph graph;
  ValidatedApplication app;
  Constellation constellation;
  WorkloadSpec workload;
  ProfileRegistry profiles;
};

// `profiles` is either an inline object or a path relative to `base_dir`.
Scenario ParseScenario(std::string_view json, const std::filesystem::path& base_dir);
Scenario LoadScenario(const std::filesystem::path& path);
std::string ScenarioToJson(const Scenario& scenario);

ProfileRegistry ParseProfiles(std::string_view json);
ProfileRegistry LoadProfiles(const std::filesystem::path& path);
std::string ProfilesToJson(const ProfileRegistry& profiles);

// Columns: function,quota,speed. Grouped by function name.
std::map<std::string, std::vector<SpeedSample>> ParseSamplesCsv(std::string_view csv);

struct NamedFit {
  std::string function;
  FitResult fit;
};
std::string FitsToJson(std::span<const NamedFit> fits, std::span<const double> breakpoints,
                       FitMode mode);

// Columns: sat_id,start_s,end_s,rate_bps. An optional "# horizon_s=<value>"
// comment line sets the observation horizon.
ContactTrace ParseContactTraceCsv(std::string_view csv);

std::string PlanToJson(const DeploymentPlan& plan, const ValidatedApplication& app,
                       const Constellation& constellation, std::string_view input_digest);
DeploymentPlan PlanFromJson(std::string_view json);

std::string RoutingToJson(const RoutingPlan& plan, std::string_view input_digest);
RoutingPlan RoutingFromJson(std::string_view json);

// One row per frame: frame,revisit_s,analysis_s,end_to_end_s (1-based frame).
std::string MetricsCsv(const MetricsReport& report);
std::string MetricsSummaryJson(const MetricsReport& report, const ValidatedApplication& app,
                               std::string_view input_digest);

std::string CdfCsv(std::span<const CdfPoint> cdf);
std::string RatiosCsv(std::span<const ContactRatio> ratios);

// "input_digest" field of a plan or routing document, empty when absent.
std::string DocumentDigest(std::string_view json);

}  // namespace orbitedge

#endif  // ORBITEDGE_IO_H_
