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

// orbitedge: fit -> plan -> route -> simulate, plus groundlink analysis.
//
// Exit codes: 0 success, 1 infeasible or incomplete, 2 input error,
// 3 internal error. Log verbosity comes from ORBITEDGE_LOG
// (trace|debug|info|warn|error|off).

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "orbitedge/error.h"
#include "orbitedge/groundlink.h"
#include "orbitedge/io.h"
#include "orbitedge/planner.h"
#include "orbitedge/routing.h"
#include "orbitedge/simulator.h"

namespace fs = std::filesystem;
using namespace orbitedge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string Sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) hex += fmt::format("{:02x}", md[k]);
  return hex;
}

// Digest over the concatenated contents of every input file.
std::string InputDigest(const std::vector<fs::path>& paths) {
  std::string all;
  for (const auto& p : paths) {
    all += ReadFile(p);
    all.push_back('\0');
  }
  return "sha256:" + Sha256Hex(all);
}

void Emit(const std::string& out, const std::string& contents) {
  if (out.empty() || out == "-") {
    std::cout << contents;
  } else {
    WriteFile(out, contents);
    spdlog::info("wrote {}", out);
  }
}

std::vector<double> Workloads(const Scenario& sc) {
  return ComputeFrameWorkloads(ComputeFlows(sc.app), sc.workload.tiles_per_frame);
}

// "4..16" (step from --sweep-step) or "4,8,16".
std::vector<double> ParseSweep(const std::string& spec, double step) {
  std::vector<double> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const double lo = std::stod(spec.substr(0, dots));
    const double hi = std::stod(spec.substr(dots + 2));
    if (!(step > 0.0) || !(lo > 0.0) || hi < lo) {
      throw Error(ErrorCode::kInvalidArgument, "bad sweep range '" + spec + "'");
    }
    for (double d = lo; d <= hi + 1e-9; d += step) out.push_back(d);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double d = std::stod(item);
    if (!(d > 0.0)) throw Error(ErrorCode::kInvalidArgument, "deadlines must be positive");
    out.push_back(d);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sweep");
  return out;
}

void PrintPlanSummary(const DeploymentPlan& plan, const Scenario& sc) {
  std::cerr << fmt::format("status: {}\n", SolverStatusName(plan.status));
  if (plan.status == SolverStatus::kInfeasible) return;
  std::cerr << fmt::format("objective margin: {:.4f} tiles\n", plan.objective_margin);
  std::cerr << fmt::format("nodes: {}  lp iterations: {}  wall: {:.3f}s\n", plan.stats.nodes,
                           plan.stats.lp_iterations, plan.stats.wall_time_s);
  const auto prof = ResolveProfiles(sc.app, sc.profiles);
  const Constellation& c = sc.constellation;
  for (int j = 0; j < c.size(); ++j) {
    double cpu = 0.0;
    double gpu = 0.0;
    for (int i = 0; i < sc.app.size(); ++i) {
      cpu += plan.cpu_quota(i, j);
      if (plan.gpu_slice(i, j) > 0.0) cpu += prof[i]->gpu_base_cpu_quota;
      gpu += plan.gpu_slice(i, j);
    }
    std::cerr << fmt::format("  satellite {}: cpu {:.3f}/{:.3f} cores", c.satellites[j].id, cpu,
                             c.beta * c.satellites[j].cpu_cores);
    if (c.satellites[j].has_gpu) {
      std::cerr << fmt::format("  gpu {:.3f}/{:.3f} s", gpu, c.alpha * c.frame_deadline_s);
    }
    std::cerr << "\n";
  }
}

int RunFit(const std::string& samples_path, const std::vector<double>& breakpoints,
           const std::string& mode_name, const std::string& out) {
  const FitMode mode = mode_name == "independent" ? FitMode::kIndependent : FitMode::kContinuous;
  const auto grouped = ParseSamplesCsv(ReadFile(samples_path));
  if (grouped.empty()) {
    throw Error(ErrorCode::kInsufficientSamples, "no samples in " + samples_path);
  }
  std::vector<NamedFit> fits;
  for (const auto& [name, samples] : grouped) {
    fits.push_back({name, FitPiecewiseLinear(samples, breakpoints, mode)});
    spdlog::debug("fitted {}", name);
  }
  Emit(out, FitsToJson(fits, breakpoints, mode));
  return kExitOk;
}

int RunPlan(const std::string& scenario_path, const std::string& out,
            const std::string& baseline, const std::string& sweep, double sweep_step,
            int64_t max_nodes) {
  const Scenario sc = LoadScenario(scenario_path);
  SolverOptions options;
  options.max_nodes = max_nodes;

  if (!sweep.empty()) {
    std::string table = "deadline_s,max_tiles\n";
    bool any = false;
    for (double d : ParseSweep(sweep, sweep_step)) {
      Constellation c = sc.constellation;
      c.frame_deadline_s = d;
      const double tiles = MaxAnalyzableTiles(c, sc.app, sc.profiles, options);
      any = any || tiles > 0.0;
      table += fmt::format("{},{:.6f}\n", d, tiles);
      spdlog::info("deadline {} s: {:.3f} tiles", d, tiles);
    }
    Emit(out, table);
    return any ? kExitOk : kExitDomain;
  }

  DeploymentPlan plan;
  if (baseline == "compute-parallel") {
    plan = BaselineComputeParallel(sc.constellation, sc.app, sc.profiles);
  } else if (baseline == "data-parallel") {
    plan = BaselineDataParallel(sc.constellation, sc.app, sc.profiles);
  } else {
    plan = SolveDeployment(sc.constellation, sc.app, sc.profiles, Workloads(sc), options);
    if (plan.status != SolverStatus::kInfeasible) {
      const VerificationReport report =
          VerifyPlan(plan, sc.constellation, sc.app, sc.profiles, Workloads(sc));
      if (!report.passed()) {
        for (const auto& check : report.checks) {
          if (!check.passed) spdlog::error("{} violated by {}", check.name, -check.worst_slack);
        }
        throw std::runtime_error("solver returned a plan that fails verification");
      }
    }
  }
  Emit(out, PlanToJson(plan, sc.app, sc.constellation, InputDigest({scenario_path})));
  PrintPlanSummary(plan, sc);
  return plan.status == SolverStatus::kInfeasible ? kExitDomain : kExitOk;
}

int RunRoute(const std::string& scenario_path, const std::string& plan_path,
             const std::string& strategy, uint64_t seed, const std::string& head,
             const std::string& out) {
  const Scenario sc = LoadScenario(scenario_path);
  const DeploymentPlan plan = PlanFromJson(ReadFile(plan_path));
  if (plan.num_functions() != sc.app.size() ||
      plan.num_satellites() != sc.constellation.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "plan does not match the scenario");
  }
  const InstanceCapacityTable caps =
      InstanceCapacities(plan, sc.app, sc.profiles, sc.constellation.frame_deadline_s);
  RoutingPlan routing;
  if (strategy == "random") {
    routing = RandomRoute(caps, sc.constellation, sc.app, sc.workload.tiles_per_frame, seed);
  } else {
    RoutingOptions options;
    if (head == "nearest-leader") options.head_selection = HeadSelection::kNearestLeader;
    routing = GreedyRoute(caps, sc.constellation, sc.app, sc.workload.tiles_per_frame, options);
  }
  Emit(out, RoutingToJson(routing, InputDigest({scenario_path, plan_path})));
  std::cerr << fmt::format("status: {}\n", RoutingStatusName(routing.status));
  std::cerr << fmt::format("realization graphs: {}\n", routing.graphs.size());
  std::cerr << fmt::format("unrouted load: {:.4f} tiles/frame\n", routing.unrouted_load);
  std::cerr << fmt::format(
      "hop traffic: {:.1f} bytes/frame\n",
      TotalHopTraffic(routing, sc.workload.request_bytes, sc.workload.response_bytes));
  return routing.status == RoutingStatus::kComplete ? kExitOk : kExitDomain;
}

int RunSimulate(const std::string& scenario_path, const std::string& plan_path,
                const std::string& routing_path, int frames, double bandwidth,
                const std::string& out, const std::string& summary_out) {
  const Scenario sc = LoadScenario(scenario_path);
  SimScenario sim;
  sim.constellation = sc.constellation;
  sim.app = sc.app;
  sim.profiles = sc.profiles;
  sim.deployment = PlanFromJson(ReadFile(plan_path));
  sim.routing = RoutingFromJson(ReadFile(routing_path));
  sim.tiles_per_frame = sc.workload.tiles_per_frame;
  sim.num_frames = frames > 0 ? frames : sc.workload.num_frames;
  sim.link_bandwidth_bps = bandwidth > 0.0 ? bandwidth : sc.workload.link_bandwidth_bps;
  sim.request_bytes = sc.workload.request_bytes;
  sim.response_bytes = sc.workload.response_bytes;
  sim.background_noise = sc.workload.background_noise;

  const MetricsReport report = Run(sim);
  const std::string digest = InputDigest({scenario_path, plan_path, routing_path});
  Emit(out, MetricsCsv(report));
  if (!summary_out.empty()) Emit(summary_out, MetricsSummaryJson(report, sc.app, digest));

  const CompletionRatios ratios = CompletionRatio(report);
  for (int i = 0; i < sc.app.size(); ++i) {
    std::cerr << fmt::format("  {}: received {} analyzed {} ratio {:.4f}\n",
                             sc.app.function(i).name, report.functions[i].received,
                             report.functions[i].analyzed, ratios.per_function[i]);
  }
  std::cerr << fmt::format("application completion ratio: {:.4f}\n", ratios.application);
  std::cerr << fmt::format("inter-satellite bytes: {:.0f}\n", report.total_hop_bytes);
  std::cerr << fmt::format("dropped tiles: {}\n", report.dropped_tiles);
  return kExitOk;
}

int RunGroundlink(const std::string& trace_path, double gen_rate, double filter,
                  const std::string& cdf_out, const std::string& ratio_out) {
  const ContactTrace trace = ParseContactTraceCsv(ReadFile(trace_path));
  ValidateTrace(trace);
  const auto cdf = ContactIntervalCdf(trace);
  const auto ratios = DownlinkableRatio(trace, gen_rate, filter);
  Emit(cdf_out, CdfCsv(cdf));
  if (!ratio_out.empty()) Emit(ratio_out, RatiosCsv(ratios));
  int full = 0;
  for (const auto& r : ratios) full += r.ratio >= 1.0;
  std::cerr << fmt::format("contacts: {}  intervals: {}\n", trace.contacts.size(),
                           ContactIntervals(trace).size());
  std::cerr << fmt::format("P(interval >= 1h): {:.3f}\n", 1.0 - CdfAt(cdf, 3600.0 - 1e-9));
  std::cerr << fmt::format("contacts that drain their backlog: {}/{}\n", full, ratios.size());
  return kExitOk;
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("orbitedge");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ORBITEDGE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App cli{"Deployment planning, routing and simulation of in-orbit analytics"};
  cli.require_subcommand(1);

  std::string scenario, plan_path, routing_path, out;

  auto* fit = cli.add_subcommand("fit", "Fit piecewise-linear CPU speed models to samples");
  std::string samples;
  std::vector<double> breakpoints{2.0};
  std::string mode = "continuous";
  fit->add_option("samples", samples, "CSV with function,quota,speed")->required();
  fit->add_option("-b,--breakpoints", breakpoints, "Interior breakpoints in cores");
  fit->add_option("--mode", mode, "continuous or independent")
      ->check(CLI::IsMember({"continuous", "independent"}));
  fit->add_option("-o,--out", out, "Output JSON (stdout when omitted)");

  auto* plan = cli.add_subcommand("plan", "Solve the deployment problem");
  std::string baseline = "none";
  std::string sweep;
  double sweep_step = 4.0;
  int64_t max_nodes = 500000;
  plan->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  plan->add_option("-o,--out", out, "Output plan JSON");
  plan->add_option("--baseline", baseline)
      ->check(CLI::IsMember({"none", "compute-parallel", "data-parallel"}));
  plan->add_option("--sweep-deadline", sweep,
                   "Max analyzable tiles per deadline, e.g. 4..16 or 4,8,16");
  plan->add_option("--sweep-step", sweep_step, "Step for range sweeps");
  plan->add_option("--max-nodes", max_nodes, "Branch-and-bound node limit");

  auto* route = cli.add_subcommand("route", "Build realization graphs for a plan");
  std::string strategy = "greedy";
  std::string head = "largest-residual";
  uint64_t seed = 1;
  route->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  route->add_option("plan", plan_path)->required()->check(CLI::ExistingFile);
  route->add_option("--strategy", strategy)->check(CLI::IsMember({"greedy", "random"}));
  route->add_option("--seed", seed);
  route->add_option("--head", head)
      ->check(CLI::IsMember({"largest-residual", "nearest-leader"}));
  route->add_option("-o,--out", out, "Output routing JSON");

  auto* simulate = cli.add_subcommand("simulate", "Run the discrete-event simulation");
  int frames = 0;
  double bandwidth = 0.0;
  std::string summary_out;
  simulate->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  simulate->add_option("plan", plan_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("routing", routing_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("--frames", frames, "Frames to simulate (scenario value when 0)");
  simulate->add_option("--bandwidth", bandwidth, "Inter-satellite link rate in bit/s");
  simulate->add_option("-o,--out", out, "Per-frame latency CSV");
  simulate->add_option("--summary", summary_out, "Summary JSON");

  auto* ground = cli.add_subcommand("groundlink", "Contact interval CDF and downlink ratios");
  std::string trace;
  double gen_rate = 0.0;
  double filter = 0.0;
  std::string ratio_out;
  ground->add_option("trace", trace)->required()->check(CLI::ExistingFile);
  ground->add_option("--gen-rate", gen_rate, "Sensed data in bytes/s")->required();
  ground->add_option("--filter", filter, "Fraction removed in orbit");
  ground->add_option("-o,--out", out, "CDF CSV");
  ground->add_option("--ratios", ratio_out, "Per-contact ratio CSV");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*fit) return RunFit(samples, breakpoints, mode, out);
    if (*plan) return RunPlan(scenario, out, baseline, sweep, sweep_step, max_nodes);
    if (*route) return RunRoute(scenario, plan_path, strategy, seed, head, out);
    if (*simulate) {
      return RunSimulate(scenario, plan_path, routing_path, frames, bandwidth, out,
                         summary_out);
    }
    if (*ground) return RunGroundlink(trace, gen_rate, filter, out, ratio_out);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return e.code() == ErrorCode::kNumericFailure ? kExitInternal : kExitInput;
  } catch (const std::invalid_argument& e) {
    spdlog::error("bad number: {}", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    spdlog::error("internal: {}", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
