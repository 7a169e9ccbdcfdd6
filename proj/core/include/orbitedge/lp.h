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

// Small dense LP solver used for the relaxations inside the deployment
// branch-and-bound. Bounded-variable dual simplex on a dense tableau: the row
// set is fixed once, and later solves after bound changes restart from the
// previous optimal basis.

#ifndef ORBITEDGE_LP_H_
#define ORBITEDGE_LP_H_

#include <cstddef>
#include <limits>
#include <vector>

namespace orbitedge::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Row {
  std::vector<Term> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x  subject to rows and lower <= x <= upper.
struct Problem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  int AddVariable(double lo, double hi, double cost = 0.0) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return static_cast<int>(objective.size()) - 1;
  }
  void AddRow(std::vector<Term> terms, RowSense sense, double rhs) {
    rows.push_back({std::move(terms), sense, rhs});
  }
  int num_vars() const { return static_cast<int>(objective.size()); }
};

// kCutoff: the objective bound fell to or below the cutoff before optimality.
enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kCutoff };

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  int iterations = 0;
};

struct Options {
  int max_iterations = 50000;
  // Pivot and reduced-cost tolerance on row-scaled coefficients.
  double tolerance = 1e-9;
  // Allowed bound violation of row activities (row-scaled) and variables.
  double feasibility_tolerance = 1e-9;
  // Pivots between refactorizations of the tableau.
  int refactor_interval = 100;
};

// Keeps the tableau between calls. Only variable bounds may change.
class Solver {
 public:
  explicit Solver(const Problem& problem, const Options& options = {});

  void SetBounds(int var, double lo, double hi);
  // Stop early once the objective can no longer exceed `cutoff`.
  void SetCutoff(double cutoff) { cutoff_ = cutoff; }
  Solution Solve();

 private:
  enum class At : unsigned char { kLower, kUpper, kZero };

  double& T(int r, int c) { return tableau_[static_cast<size_t>(r) * cols_ + c]; }
  void ResetToSlackBasis();
  void Refactor();
  void Pivot(int r, int q);
  void PlaceNonbasic(int j);
  bool MakeDualFeasible();
  void ComputeBasics();
  Status DualSimplex(int& iterations);

  Options options_;
  int n_ = 0;     // structural variables
  int m_ = 0;     // rows
  int cols_ = 0;  // n_ + m_
  std::vector<double> a_;      // row-scaled constraint matrix, m_ x n_
  std::vector<double> cost_;   // per column
  std::vector<double> lo_;     // per column
  std::vector<double> hi_;
  std::vector<bool> artificial_;  // bound replaced by a large box
  std::vector<double> tableau_;   // B^-1 [A, -I]
  std::vector<double> d_;         // reduced costs
  std::vector<double> x_;
  std::vector<int> basis_;        // column basic in each row
  std::vector<int> row_of_;       // row of a basic column, -1 otherwise
  std::vector<At> at_;
  bool empty_row_infeasible_ = false;
  int pivots_since_refactor_ = 0;
  double cutoff_ = -kInfinity;
};

// One-shot solve from the slack basis.
Solution Solve(const Problem& problem, const Options& options = {});

}  // namespace orbitedge::lp

#endif  // ORBITEDGE_LP_H_
