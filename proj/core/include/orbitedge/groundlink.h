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

// Ground-contact analysis on externally generated contact-window traces:
// how long satellites wait between ground connections and how much of the
// data sensed in the meantime a contact can bring down.

#ifndef ORBITEDGE_GROUNDLINK_H_
#define ORBITEDGE_GROUNDLINK_H_

#include <span>
#include <vector>

namespace orbitedge {

struct Contact {
  int satellite_id = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  double rate_bps = 0.0;  // downlink rate during the contact
};

struct ContactTrace {
  std::vector<Contact> contacts;
  double horizon_s = 0.0;  // 0 when unknown
};

// Throws Error{kInvalidArgument} unless start < end, rate > 0 and the
// contacts of each satellite do not overlap.
void ValidateTrace(const ContactTrace& trace);

struct CdfPoint {
  double value = 0.0;
  double fraction = 0.0;  // share of samples <= value
};

// Gaps between consecutive contacts of the same satellite, pooled over all
// satellites. Satellites with a single contact contribute nothing.
std::vector<double> ContactIntervals(const ContactTrace& trace);

// Empirical CDF of ContactIntervals, one point per distinct value. Throws
// Error{kTooFewContacts} when no satellite has two contacts.
std::vector<CdfPoint> ContactIntervalCdf(const ContactTrace& trace);

// Step-function value of an empirical CDF at x.
double CdfAt(std::span<const CdfPoint> cdf, double x);

struct ContactRatio {
  int satellite_id = 0;
  double start_s = 0.0;
  double previous_interval_s = 0.0;
  double ratio = 0.0;
};

// For every contact after a satellite's first:
//   min(1, duration · rate / 8 / ((1 - filter) · gen_rate · previous_gap)).
// A zero gap or filter == 1 leaves no backlog and yields 1. Throws
// Error{kInvalidArgument} when gen_rate_bytes_per_s <= 0 or filter is
// outside [0, 1].
std::vector<ContactRatio> DownlinkableRatio(const ContactTrace& trace,
                                            double gen_rate_bytes_per_s,
                                            double filter_fraction);

// Same clamp on aggregate volumes, e.g. bytes per day.
double AggregateDownlinkableRatio(double downlinked_bytes, double generated_bytes,
                                  double filter_fraction);

}  // namespace orbitedge

#endif  // ORBITEDGE_GROUNDLINK_H_
