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

#include "support/reference_lp.h"

#include <cmath>
#include <stdexcept>

namespace orbitedge::testing {
namespace {

constexpr double kEps = 1e-10;

// Dictionary: basic[r] = d[r][0] + sum_k d[r][k+1] * nonbasic[k].
struct Dictionary {
  int m = 0;
  int n = 0;
  std::vector<std::vector<long double>> rows;  // m rows, 1 + n columns
  std::vector<long double> obj;                // 1 + n
  std::vector<int> basic;                      // variable ids
  std::vector<int> nonbasic;

  void Pivot(int r, int k) {
    const long double coef = rows[r][k + 1];
    std::vector<long double> piv(n + 1);
    // Solve row r for nonbasic k.
    for (int c = 0; c <= n; ++c) piv[c] = -rows[r][c] / coef;
    piv[k + 1] = 1.0L / coef;
    std::swap(basic[r], nonbasic[k]);
    rows[r] = piv;
    auto substitute = [&](std::vector<long double>& row) {
      const long double f = row[k + 1];
      if (f == 0.0L) return;
      row[k + 1] = 0.0L;
      for (int c = 0; c <= n; ++c) row[c] += f * piv[c];
    };
    for (int i = 0; i < m; ++i) {
      if (i != r) substitute(rows[i]);
    }
    substitute(obj);
  }

  // Bland's rule. Returns false when unbounded.
  bool Optimize() {
    for (int guard = 0; guard < 1000000; ++guard) {
      int enter = -1;
      for (int k = 0; k < n; ++k) {
        if (obj[k + 1] > kEps && (enter < 0 || nonbasic[k] < nonbasic[enter])) enter = k;
      }
      if (enter < 0) return true;
      int leave = -1;
      long double best = 0.0L;
      for (int r = 0; r < m; ++r) {
        if (rows[r][enter + 1] < -kEps) {
          const long double ratio = rows[r][0] / -rows[r][enter + 1];
          if (leave < 0 || ratio < best - kEps ||
              (std::fabs(static_cast<double>(ratio - best)) <= kEps && basic[r] < basic[leave])) {
            leave = r;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
    throw std::runtime_error("reference simplex did not terminate");
  }
};

}  // namespace

RefLpResult SolveStandardForm(const std::vector<std::vector<double>>& a,
                              const std::vector<double>& b, const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  // Variables 0..n-1 original, n..n+m-1 slacks, n+m the auxiliary x0.
  const int x0 = n + m;
  Dictionary d;
  d.m = m;
  d.n = n + 1;
  d.rows.assign(m, std::vector<long double>(n + 2, 0.0L));
  for (int r = 0; r < m; ++r) {
    d.rows[r][0] = b[r];
    for (int k = 0; k < n; ++k) d.rows[r][k + 1] = -a[r][k];
    d.rows[r][n + 1] = 1.0L;  // + x0
    d.basic.push_back(n + r);
  }
  for (int k = 0; k < n; ++k) d.nonbasic.push_back(k);
  d.nonbasic.push_back(x0);

  // Phase one: maximize -x0.
  d.obj.assign(n + 2, 0.0L);
  d.obj[n + 1] = -1.0L;
  int most_negative = -1;
  for (int r = 0; r < m; ++r) {
    if (d.rows[r][0] < 0.0L && (most_negative < 0 || d.rows[r][0] < d.rows[most_negative][0])) {
      most_negative = r;
    }
  }
  if (most_negative >= 0) {
    d.Pivot(most_negative, n);
    d.Optimize();
    if (d.obj[0] < -1e-9L) return {RefStatus::kInfeasible, 0.0, {}};
  }
  // Drive x0 out of the basis if it is still there at level zero.
  for (int r = 0; r < m; ++r) {
    if (d.basic[r] != x0) continue;
    for (int k = 0; k < d.n; ++k) {
      if (std::fabs(static_cast<double>(d.rows[r][k + 1])) > kEps) {
        d.Pivot(r, k);
        break;
      }
    }
  }
  // Drop the x0 column.
  int col = -1;
  for (int k = 0; k < d.n; ++k) {
    if (d.nonbasic[k] == x0) col = k;
  }
  if (col < 0) throw std::runtime_error("auxiliary variable stuck in basis");
  for (auto& row : d.rows) row.erase(row.begin() + col + 1);
  d.nonbasic.erase(d.nonbasic.begin() + col);
  d.n -= 1;

  // Phase two objective expressed over the current nonbasics.
  d.obj.assign(d.n + 1, 0.0L);
  for (int k = 0; k < d.n; ++k) {
    if (d.nonbasic[k] < n) d.obj[k + 1] += c[d.nonbasic[k]];
  }
  for (int r = 0; r < m; ++r) {
    if (d.basic[r] < n) {
      for (int k = 0; k <= d.n; ++k) d.obj[k] += c[d.basic[r]] * d.rows[r][k];
    }
  }
  if (!d.Optimize()) return {RefStatus::kUnbounded, 0.0, {}};

  RefLpResult out;
  out.status = RefStatus::kOptimal;
  out.objective = static_cast<double>(d.obj[0]);
  out.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (d.basic[r] < n) out.x[d.basic[r]] = static_cast<double>(d.rows[r][0]);
  }
  return out;
}

}  // namespace orbitedge::testing
