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

// Textbook dictionary simplex with Bland's rule, kept separate from the
// library solver so tests can cross-check it.

#ifndef ORBITEDGE_TESTS_SUPPORT_REFERENCE_LP_H_
#define ORBITEDGE_TESTS_SUPPORT_REFERENCE_LP_H_

#include <vector>

namespace orbitedge::testing {

enum class RefStatus { kOptimal, kInfeasible, kUnbounded };

struct RefLpResult {
  RefStatus status = RefStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// maximize c.x  s.t.  A x <= b,  x >= 0.
RefLpResult SolveStandardForm(const std::vector<std::vector<double>>& a,
                              const std::vector<double>& b, const std::vector<double>& c);

}  // namespace orbitedge::testing

#endif  // ORBITEDGE_TESTS_SUPPORT_REFERENCE_LP_H_
