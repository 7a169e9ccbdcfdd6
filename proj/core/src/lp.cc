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

#include "orbitedge/lp.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace orbitedge::lp {
namespace {

// Stand-in for an infinite bound that the dual simplex needs to be finite.
constexpr double kBig = 1e7;
// Reduced costs beyond this on an unbounded side call for an artificial box.
constexpr double kArtificialTolerance = 1e-7;

}  // namespace

Solver::Solver(const Problem& problem, const Options& options)
    : options_(options),
      n_(problem.num_vars()),
      m_(static_cast<int>(problem.rows.size())),
      cols_(n_ + m_) {
  a_.assign(static_cast<size_t>(m_) * n_, 0.0);
  cost_.assign(cols_, 0.0);
  lo_.assign(cols_, 0.0);
  hi_.assign(cols_, 0.0);
  for (int k = 0; k < n_; ++k) {
    cost_[k] = problem.objective[k];
    lo_[k] = problem.lower[k];
    hi_[k] = problem.upper[k];
  }
  for (int r = 0; r < m_; ++r) {
    const Row& row = problem.rows[r];
    double* dense = &a_[static_cast<size_t>(r) * n_];
    for (const Term& term : row.terms) dense[term.var] += term.coef;
    double scale = 0.0;
    for (int k = 0; k < n_; ++k) scale = std::max(scale, std::abs(dense[k]));
    const int s = n_ + r;
    if (scale <= 0.0) {
      const double tol = options_.feasibility_tolerance * std::max(1.0, std::abs(row.rhs));
      const bool ok = (row.sense == RowSense::kLessEqual && 0.0 <= row.rhs + tol) ||
                      (row.sense == RowSense::kGreaterEqual && 0.0 >= row.rhs - tol) ||
                      (row.sense == RowSense::kEqual && std::abs(row.rhs) <= tol);
      empty_row_infeasible_ = empty_row_infeasible_ || !ok;
      lo_[s] = -kInfinity;
      hi_[s] = kInfinity;
      continue;
    }
    for (int k = 0; k < n_; ++k) dense[k] /= scale;
    const double rhs = row.rhs / scale;
    lo_[s] = row.sense == RowSense::kLessEqual ? -kInfinity : rhs;
    hi_[s] = row.sense == RowSense::kGreaterEqual ? kInfinity : rhs;
  }
  ResetToSlackBasis();
}

void Solver::SetBounds(int var, double lo, double hi) {
  lo_[var] = lo;
  hi_[var] = hi;
}

void Solver::ResetToSlackBasis() {
  tableau_.assign(static_cast<size_t>(m_) * cols_, 0.0);
  for (int r = 0; r < m_; ++r) {
    for (int k = 0; k < n_; ++k) T(r, k) = -a_[static_cast<size_t>(r) * n_ + k];
    T(r, n_ + r) = 1.0;
  }
  basis_.resize(m_);
  row_of_.assign(cols_, -1);
  for (int r = 0; r < m_; ++r) {
    basis_[r] = n_ + r;
    row_of_[n_ + r] = r;
  }
  at_.assign(cols_, At::kLower);
  artificial_.assign(cols_, false);
  x_.assign(cols_, 0.0);
  d_ = cost_;
  for (int r = 0; r < m_; ++r) d_[n_ + r] = 0.0;
  pivots_since_refactor_ = 0;
}

void Solver::Pivot(int r, int q) {
  const double inv = 1.0 / T(r, q);
  double* prow = &T(r, 0);
  std::vector<int> nonzero;
  nonzero.reserve(cols_);
  for (int c = 0; c < cols_; ++c) {
    if (prow[c] != 0.0) {
      prow[c] *= inv;
      nonzero.push_back(c);
    }
  }
  prow[q] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &T(i, 0);
    const double f = row[q];
    if (f == 0.0) continue;
    for (int c : nonzero) row[c] -= f * prow[c];
    row[q] = 0.0;
  }
  const double fd = d_[q];
  if (fd != 0.0) {
    for (int c : nonzero) d_[c] -= fd * prow[c];
    d_[q] = 0.0;
  }
  row_of_[basis_[r]] = -1;
  basis_[r] = q;
  row_of_[q] = r;
  ++pivots_since_refactor_;
}

void Solver::Refactor() {
  const std::vector<int> target = basis_;
  const std::vector<At> at = at_;
  const std::vector<bool> artificial = artificial_;
  const std::vector<double> x = x_;
  ResetToSlackBasis();
  std::vector<bool> wanted(cols_, false);
  for (int b : target) wanted[b] = true;
  for (int b : target) {
    if (row_of_[b] >= 0) continue;
    int best = -1;
    double best_abs = options_.tolerance;
    for (int r = 0; r < m_; ++r) {
      if (wanted[basis_[r]]) continue;
      const double v = std::abs(T(r, b));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (best >= 0) Pivot(best, b);
  }
  for (int j = 0; j < cols_; ++j) {
    if (row_of_[j] >= 0) continue;
    at_[j] = at[j];
    artificial_[j] = artificial[j];
    x_[j] = x[j];
  }
  // Columns that could not re-enter become nonbasic at a bound.
  for (int j = 0; j < cols_; ++j) {
    if (row_of_[j] < 0 && wanted[j]) {
      artificial_[j] = false;
      at_[j] = std::isfinite(lo_[j]) ? At::kLower
               : std::isfinite(hi_[j]) ? At::kUpper
                                      : At::kZero;
      PlaceNonbasic(j);
    }
  }
  pivots_since_refactor_ = 0;
}

void Solver::PlaceNonbasic(int j) {
  switch (at_[j]) {
    case At::kLower: x_[j] = artificial_[j] ? -kBig : lo_[j]; break;
    case At::kUpper: x_[j] = artificial_[j] ? kBig : hi_[j]; break;
    case At::kZero: x_[j] = 0.0; break;
  }
}

bool Solver::MakeDualFeasible() {
  bool any_artificial = false;
  for (int j = 0; j < cols_; ++j) {
    if (row_of_[j] >= 0) continue;
    const bool has_lo = std::isfinite(lo_[j]);
    const bool has_hi = std::isfinite(hi_[j]);
    artificial_[j] = false;
    if (has_lo && has_hi && lo_[j] == hi_[j]) {
      at_[j] = At::kLower;
    } else if (d_[j] > options_.tolerance) {
      at_[j] = At::kUpper;
      artificial_[j] = !has_hi && d_[j] > kArtificialTolerance;
      if (!has_hi && !artificial_[j]) at_[j] = has_lo ? At::kLower : At::kZero;
    } else if (d_[j] < -options_.tolerance) {
      at_[j] = At::kLower;
      artificial_[j] = !has_lo && d_[j] < -kArtificialTolerance;
      if (!has_lo && !artificial_[j]) at_[j] = has_hi ? At::kUpper : At::kZero;
    } else if (!((at_[j] == At::kLower && has_lo) || (at_[j] == At::kUpper && has_hi))) {
      at_[j] = has_lo ? At::kLower : has_hi ? At::kUpper : At::kZero;
    }
    any_artificial = any_artificial || artificial_[j];
    PlaceNonbasic(j);
  }
  return any_artificial;
}

void Solver::ComputeBasics() {
  std::vector<int> moved;
  for (int j = 0; j < cols_; ++j) {
    if (row_of_[j] < 0 && x_[j] != 0.0) moved.push_back(j);
  }
  for (int r = 0; r < m_; ++r) {
    const double* row = &T(r, 0);
    double v = 0.0;
    for (int j : moved) v -= row[j] * x_[j];
    x_[basis_[r]] = v;
  }
}

Status Solver::DualSimplex(int& iterations) {
  const double ptol = options_.tolerance;
  int degenerate_streak = 0;
  for (;;) {
    if (pivots_since_refactor_ >= options_.refactor_interval) Refactor();
    ComputeBasics();
    const bool bland = degenerate_streak > 50;

    int leave = -1;
    double worst = 0.0;
    bool increase = false;
    for (int r = 0; r < m_; ++r) {
      const int j = basis_[r];
      const double v = x_[j];
      double viol = 0.0;
      bool up = false;
      if (v < lo_[j] - options_.feasibility_tolerance * std::max(1.0, std::abs(lo_[j]))) {
        viol = lo_[j] - v;
        up = true;
      } else if (v > hi_[j] + options_.feasibility_tolerance * std::max(1.0, std::abs(hi_[j]))) {
        viol = v - hi_[j];
      }
      if (viol <= 0.0) continue;
      if (leave < 0 || (bland ? j < basis_[leave] : viol > worst)) {
        leave = r;
        worst = viol;
        increase = up;
      }
    }
    if (leave < 0) return Status::kOptimal;
    if (iterations >= options_.max_iterations) return Status::kIterationLimit;
    if (cutoff_ > -kInfinity) {
      // With dual feasibility kept, c.x bounds the optimum from above.
      bool boxed = false;
      double bound = 0.0;
      for (int k = 0; k < n_; ++k) {
        bound += cost_[k] * x_[k];
        boxed = boxed || (row_of_[k] < 0 && artificial_[k]);
      }
      if (!boxed && bound <= cutoff_) return Status::kCutoff;
    }

    int enter = -1;
    double best_ratio = kInfinity;
    double best_alpha = 0.0;
    const double* row = &T(leave, 0);
    for (int q = 0; q < cols_; ++q) {
      if (row_of_[q] >= 0 || lo_[q] == hi_[q]) continue;
      const double alpha = row[q];
      if (std::abs(alpha) <= ptol) continue;
      // Unit increase of x_q moves the leaving basic by -alpha.
      const bool can_inc = at_[q] != At::kUpper;
      const bool can_dec = at_[q] != At::kLower;
      const bool helps_up = -alpha > 0.0 ? can_inc : can_dec;
      const bool helps_down = -alpha < 0.0 ? can_inc : can_dec;
      if (increase ? !helps_up : !helps_down) continue;
      const double ratio = std::abs(d_[q]) / std::abs(alpha);
      const bool better =
          ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 &&
           (bland ? q < enter : std::abs(alpha) > best_alpha));
      if (enter < 0 || better) {
        enter = q;
        best_ratio = ratio;
        best_alpha = std::abs(alpha);
      }
    }
    if (enter < 0) return Status::kInfeasible;

    const int out = basis_[leave];
    Pivot(leave, enter);
    artificial_[enter] = false;
    at_[out] = increase ? At::kLower : At::kUpper;
    artificial_[out] = false;
    PlaceNonbasic(out);
    ++iterations;
    degenerate_streak = best_ratio <= ptol ? degenerate_streak + 1 : 0;
  }
}

Solution Solver::Solve() {
  Solution solution;
  if (empty_row_infeasible_) return solution;
  for (int k = 0; k < n_; ++k) {
    if (hi_[k] < lo_[k] - options_.feasibility_tolerance) return solution;
  }
  int iterations = 0;
  MakeDualFeasible();
  Status status = DualSimplex(iterations);
  if (status == Status::kIterationLimit) {
    ResetToSlackBasis();
    MakeDualFeasible();
    int retry = 0;
    status = DualSimplex(retry);
    iterations += retry;
  }
  solution.iterations = iterations;
  if (status == Status::kOptimal) {
    for (int j = 0; j < cols_; ++j) {
      if (row_of_[j] < 0 && artificial_[j]) status = Status::kUnbounded;
    }
  }
  solution.status = status;
  if (status != Status::kOptimal) return solution;
  solution.values.assign(x_.begin(), x_.begin() + n_);
  for (int k = 0; k < n_; ++k) solution.objective += cost_[k] * x_[k];
  return solution;
}

Solution Solve(const Problem& problem, const Options& options) {
  Solver solver(problem, options);
  return solver.Solve();
}

}  // namespace orbitedge::lp
