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

#include "orbitedge/groundlink.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "orbitedge/error.h"

namespace orbitedge {
namespace {

std::map<int, std::vector<Contact>> BySatellite(const ContactTrace& trace) {
  std::map<int, std::vector<Contact>> out;
  for (const Contact& c : trace.contacts) out[c.satellite_id].push_back(c);
  for (auto& [id, list] : out) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Contact& a, const Contact& b) { return a.start_s < b.start_s; });
  }
  return out;
}

double Clamp01(double numerator, double denominator) {
  if (!(denominator > 0.0)) return 1.0;
  return std::min(1.0, numerator / denominator);
}

void CheckFilter(double filter_fraction) {
  if (!(filter_fraction >= 0.0 && filter_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "filter fraction must lie in [0, 1]");
  }
}

}  // namespace

void ValidateTrace(const ContactTrace& trace) {
  for (const Contact& c : trace.contacts) {
    if (!std::isfinite(c.start_s) || !std::isfinite(c.end_s) || !(c.start_s < c.end_s)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "contact of satellite " + std::to_string(c.satellite_id) +
                      " must have start < end");
    }
    if (!(c.rate_bps > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "contact rate must be > 0");
    }
  }
  for (const auto& [id, list] : BySatellite(trace)) {
    for (size_t k = 1; k < list.size(); ++k) {
      if (list[k].start_s < list[k - 1].end_s) {
        throw Error(ErrorCode::kInvalidArgument,
                    "contacts of satellite " + std::to_string(id) + " overlap");
      }
    }
  }
  if (!(trace.horizon_s >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 0");
  }
}

std::vector<double> ContactIntervals(const ContactTrace& trace) {
  std::vector<double> out;
  for (const auto& [id, list] : BySatellite(trace)) {
    for (size_t k = 1; k < list.size(); ++k) out.push_back(list[k].start_s - list[k - 1].end_s);
  }
  return out;
}

std::vector<CdfPoint> ContactIntervalCdf(const ContactTrace& trace) {
  std::vector<double> gaps = ContactIntervals(trace);
  if (gaps.empty()) {
    throw Error(ErrorCode::kTooFewContacts, "no satellite has two contacts");
  }
  std::sort(gaps.begin(), gaps.end());
  std::vector<CdfPoint> cdf;
  const double n = static_cast<double>(gaps.size());
  for (size_t k = 0; k < gaps.size(); ++k) {
    if (k + 1 < gaps.size() && gaps[k + 1] == gaps[k]) continue;
    cdf.push_back({gaps[k], static_cast<double>(k + 1) / n});
  }
  return cdf;
}

double CdfAt(std::span<const CdfPoint> cdf, double x) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), x,
                             [](double v, const CdfPoint& p) { return v < p.value; });
  return it == cdf.begin() ? 0.0 : std::prev(it)->fraction;
}

std::vector<ContactRatio> DownlinkableRatio(const ContactTrace& trace,
                                            double gen_rate_bytes_per_s,
                                            double filter_fraction) {
  if (!(gen_rate_bytes_per_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "data generation rate must be > 0");
  }
  CheckFilter(filter_fraction);
  std::vector<ContactRatio> out;
  for (const auto& [id, list] : BySatellite(trace)) {
    for (size_t k = 1; k < list.size(); ++k) {
      const Contact& c = list[k];
      const double gap = c.start_s - list[k - 1].end_s;
      const double down = (c.end_s - c.start_s) * c.rate_bps / 8.0;
      const double backlog = (1.0 - filter_fraction) * gen_rate_bytes_per_s * gap;
      out.push_back({id, c.start_s, gap, Clamp01(down, backlog)});
    }
  }
  return out;
}

double AggregateDownlinkableRatio(double downlinked_bytes, double generated_bytes,
                                  double filter_fraction) {
  CheckFilter(filter_fraction);
  if (!(downlinked_bytes >= 0.0) || !(generated_bytes >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "volumes must be >= 0");
  }
  return Clamp01(downlinked_bytes, (1.0 - filter_fraction) * generated_bytes);
}

}  // namespace orbitedge
