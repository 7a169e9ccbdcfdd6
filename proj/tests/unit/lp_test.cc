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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support/reference_lp.h"

namespace orbitedge {
namespace {

using Matrix = std::vector<std::vector<double>>;

lp::Problem StandardForm(const Matrix& a, const std::vector<double>& b,
                         const std::vector<double>& c) {
  lp::Problem p;
  for (double cj : c) p.AddVariable(0.0, lp::kInfinity, cj);
  for (size_t r = 0; r < a.size(); ++r) {
    std::vector<lp::Term> terms;
    for (size_t j = 0; j < c.size(); ++j) {
      if (a[r][j] != 0.0) terms.push_back({static_cast<int>(j), a[r][j]});
    }
    p.AddRow(std::move(terms), lp::RowSense::kLessEqual, b[r]);
  }
  return p;
}

double Activity(const lp::Row& row, const std::vector<double>& x) {
  double s = 0.0;
  for (const lp::Term& t : row.terms) s += t.coef * x[t.var];
  return s;
}

void ExpectFeasible(const lp::Problem& p, const std::vector<double>& x, double tol) {
  for (int j = 0; j < p.num_vars(); ++j) {
    EXPECT_GE(x[j], p.lower[j] - tol);
    EXPECT_LE(x[j], p.upper[j] + tol);
  }
  for (const lp::Row& row : p.rows) {
    const double a = Activity(row, x);
    if (row.sense != lp::RowSense::kGreaterEqual) EXPECT_LE(a, row.rhs + tol);
    if (row.sense != lp::RowSense::kLessEqual) EXPECT_GE(a, row.rhs - tol);
  }
}

TEST(LpTest, TextbookExample) {
  // max 5x + 4y + 3z; 2x+3y+z<=5, 4x+y+2z<=11, 3x+4y+2z<=8.
  const auto p = StandardForm({{2, 3, 1}, {4, 1, 2}, {3, 4, 2}}, {5, 11, 8}, {5, 4, 3});
  const lp::Solution s = lp::Solve(p);
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.objective, 13.0, 1e-9);
  EXPECT_NEAR(s.values[0], 2.0, 1e-9);
  EXPECT_NEAR(s.values[2], 1.0, 1e-9);
}

TEST(LpTest, InfeasibleAndUnbounded) {
  lp::Problem inf;
  const int x = inf.AddVariable(0.0, 1.0, 1.0);
  inf.AddRow({{x, 1.0}}, lp::RowSense::kGreaterEqual, 2.0);
  EXPECT_EQ(lp::Solve(inf).status, lp::Status::kInfeasible);

  lp::Problem unb;
  const int u = unb.AddVariable(0.0, lp::kInfinity, 1.0);
  const int v = unb.AddVariable(0.0, lp::kInfinity, 0.0);
  unb.AddRow({{u, 1.0}, {v, -1.0}}, lp::RowSense::kLessEqual, 1.0);
  EXPECT_EQ(lp::Solve(unb).status, lp::Status::kUnbounded);
}

TEST(LpTest, EqualityAndFreeVariables) {
  // max z s.t. z <= x - 1, z <= 3 - x, x free, z free.
  lp::Problem p;
  const int x = p.AddVariable(-lp::kInfinity, lp::kInfinity);
  const int z = p.AddVariable(-lp::kInfinity, lp::kInfinity, 1.0);
  p.AddRow({{z, 1.0}, {x, -1.0}}, lp::RowSense::kLessEqual, -1.0);
  p.AddRow({{z, 1.0}, {x, 1.0}}, lp::RowSense::kLessEqual, 3.0);
  const lp::Solution s = lp::Solve(p);
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-9);
  EXPECT_NEAR(s.values[x], 2.0, 1e-9);

  p.AddRow({{x, 1.0}}, lp::RowSense::kEqual, 1.5);
  const lp::Solution t = lp::Solve(p);
  ASSERT_EQ(t.status, lp::Status::kOptimal);
  EXPECT_NEAR(t.objective, 0.5, 1e-9);
}

TEST(LpTest, MatchesReferenceOnRandomProblems) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coef(-1.0, 3.0);
  std::uniform_real_distribution<double> rhs(-2.0, 10.0);
  std::bernoulli_distribution sparse(0.3);
  int optimal = 0;
  for (int n = 0; n < 300; ++n) {
    const int m = 1 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % 7);
    Matrix a(m, std::vector<double>(k));
    std::vector<double> b(m), c(k);
    for (auto& row : a) {
      for (double& v : row) v = sparse(rng) ? 0.0 : coef(rng);
    }
    for (double& v : b) v = rhs(rng);
    for (double& v : c) v = coef(rng);
    const auto ref = testing::SolveStandardForm(a, b, c);
    const auto p = StandardForm(a, b, c);
    const lp::Solution s = lp::Solve(p);
    switch (ref.status) {
      case testing::RefStatus::kOptimal:
        ++optimal;
        ASSERT_EQ(s.status, lp::Status::kOptimal) << "problem " << n;
        EXPECT_NEAR(s.objective, ref.objective, 1e-7 * (1.0 + std::abs(ref.objective)));
        ExpectFeasible(p, s.values, 1e-7);
        break;
      case testing::RefStatus::kInfeasible:
        EXPECT_EQ(s.status, lp::Status::kInfeasible) << "problem " << n;
        break;
      case testing::RefStatus::kUnbounded:
        EXPECT_EQ(s.status, lp::Status::kUnbounded) << "problem " << n;
        break;
    }
  }
  EXPECT_GT(optimal, 100);
}

TEST(LpTest, WarmStartAfterBoundChangesMatchesColdSolve) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> coef(0.1, 2.0);
  for (int n = 0; n < 50; ++n) {
    lp::Problem p;
    const int k = 6;
    for (int j = 0; j < k; ++j) p.AddVariable(0.0, 1.0 + j, coef(rng));
    for (int r = 0; r < 4; ++r) {
      std::vector<lp::Term> terms;
      for (int j = 0; j < k; ++j) terms.push_back({j, coef(rng)});
      p.AddRow(std::move(terms), lp::RowSense::kLessEqual, 3.0 + r);
    }
    lp::Solver solver(p);
    ASSERT_EQ(solver.Solve().status, lp::Status::kOptimal);
    for (int step = 0; step < 8; ++step) {
      const int j = static_cast<int>(rng() % k);
      const double lo = (rng() % 3 == 0) ? 0.5 : 0.0;
      const double hi = (rng() % 2 == 0) ? lo : p.upper[j];
      solver.SetBounds(j, lo, hi);
      p.lower[j] = lo;
      p.upper[j] = hi;
      const lp::Solution warm = solver.Solve();
      const lp::Solution cold = lp::Solve(p);
      ASSERT_EQ(warm.status, cold.status);
      if (cold.status == lp::Status::kOptimal) {
        EXPECT_NEAR(warm.objective, cold.objective, 1e-9);
        ExpectFeasible(p, warm.values, 1e-8);
      }
    }
  }
}

TEST(LpTest, CutoffStopsEarly) {
  // Both boxed variables start at their upper bound, so the first bound is 20.
  lp::Problem p;
  const int x = p.AddVariable(0.0, 10.0, 1.0);
  const int y = p.AddVariable(0.0, 10.0, 1.0);
  p.AddRow({{x, 1.0}, {y, 1.0}}, lp::RowSense::kLessEqual, 5.0);
  lp::Solver solver(p);
  solver.SetCutoff(25.0);
  EXPECT_EQ(solver.Solve().status, lp::Status::kCutoff);
  solver.SetCutoff(-lp::kInfinity);
  const lp::Solution s = solver.Solve();
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.objective, 5.0, 1e-9);
}

}  // namespace
}  // namespace orbitedge
