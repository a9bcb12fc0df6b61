#pragma once

// Shared test-side LP helpers: a seeded random instance generator and an
// exhaustive vertex-enumeration oracle, independent of the simplex path.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "p2h/lp.hpp"

namespace p2h_test {

// All variables boxed, so every feasible instance has a vertex optimum and
// infeasibility is certified by exhausting all candidate vertices.
struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

inline OracleResult vertex_enumeration_oracle(const p2h::LinearProgram& lp) {
  const int n = lp.num_cols();
  const int m = lp.num_rows();
  OracleResult best;
  const double sense = lp.maximize ? -1.0 : 1.0;

  // dense matrix copy
  std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
  for (int k = 0; k < lp.num_entries(); ++k)
    a[lp.entry_row[k]][lp.entry_col[k]] += lp.entry_val[k];

  // candidate tight constraints: rows, lower bounds, upper bounds
  const int ncand = m + 2 * n;
  std::vector<int> pick(n);
  std::vector<int> comb;

  auto row_of = [&](int cand, std::vector<double>& coeff, double& rhs) {
    coeff.assign(n, 0.0);
    if (cand < m) {
      coeff = a[cand];
      rhs = lp.rhs[cand];
    } else if (cand < m + n) {
      coeff[cand - m] = 1.0;
      rhs = lp.col_lower[cand - m];
    } else {
      coeff[cand - m - n] = 1.0;
      rhs = lp.col_upper[cand - m - n];
    }
  };

  std::vector<std::vector<double>> sys(n, std::vector<double>(n + 1, 0.0));
  std::vector<double> coeff(n);
  std::vector<double> x(n);

  auto try_active_set = [&](const std::vector<int>& act) {
    for (int r = 0; r < n; ++r) {
      double rhs = 0.0;
      row_of(act[r], coeff, rhs);
      for (int c = 0; c < n; ++c) sys[r][c] = coeff[c];
      sys[r][n] = rhs;
    }
    // Gaussian elimination with partial pivoting
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      double mag = 1e-9;
      for (int r = c; r < n; ++r)
        if (std::abs(sys[r][c]) > mag) {
          mag = std::abs(sys[r][c]);
          piv = r;
        }
      if (piv < 0) return;  // singular active set
      std::swap(sys[c], sys[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == c || sys[r][c] == 0.0) continue;
        double f = sys[r][c] / sys[c][c];
        for (int cc = c; cc <= n; ++cc) sys[r][cc] -= f * sys[c][cc];
      }
    }
    for (int c = 0; c < n; ++c) x[c] = sys[c][n] / sys[c][c];
    // feasibility
    const double tol = 1e-7;
    for (int j = 0; j < n; ++j)
      if (x[j] < lp.col_lower[j] - tol || x[j] > lp.col_upper[j] + tol) return;
    for (int i = 0; i < m; ++i) {
      double act_i = 0.0;
      for (int j = 0; j < n; ++j) act_i += a[i][j] * x[j];
      double scale = 1.0 + std::abs(lp.rhs[i]);
      if (lp.row_sense[i] == 'L' && act_i > lp.rhs[i] + tol * scale) return;
      if (lp.row_sense[i] == 'G' && act_i < lp.rhs[i] - tol * scale) return;
      if (lp.row_sense[i] == 'E' && std::abs(act_i - lp.rhs[i]) > tol * scale) return;
    }
    double obj = lp.obj_constant;
    for (int j = 0; j < n; ++j) obj += lp.obj[j] * x[j];
    if (!best.feasible || sense * obj < sense * best.objective) {
      best.feasible = true;
      best.objective = obj;
      best.x = x;
    }
  };

  // iterate all n-subsets of candidates
  comb.resize(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  if (n > ncand) return best;
  while (true) {
    try_active_set(comb);
    int i = n - 1;
    while (i >= 0 && comb[i] == ncand - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

inline p2h::LinearProgram random_boxed_lp(std::mt19937& rng) {
  std::uniform_int_distribution<int> usize(1, 8);
  std::uniform_real_distribution<double> ucoef(-5.0, 5.0), u01(0.0, 1.0);
  std::uniform_real_distribution<double> ulb(-3.0, 0.0), uub(0.5, 4.0), ucost(-4.0, 4.0);

  p2h::LinearProgram lp;
  int n = usize(rng), m = usize(rng);
  for (int j = 0; j < n; ++j)
    lp.add_col("x" + std::to_string(j), ulb(rng), uub(rng), ucost(rng));
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j)
    x0[j] = lp.col_lower[j] + u01(rng) * (lp.col_upper[j] - lp.col_lower[j]);
  for (int i = 0; i < m; ++i) {
    double r = u01(rng);
    char sense = r < 0.2 ? 'E' : (r < 0.6 ? 'L' : 'G');
    std::vector<double> row(n, 0.0);
    double act = 0.0;
    bool any = false;
    for (int j = 0; j < n; ++j)
      if (u01(rng) < 0.7) {
        row[j] = std::round(ucoef(rng) * 2.0) / 2.0;
        if (row[j] != 0.0) any = true;
        act += row[j] * x0[j];
      }
    if (!any) {
      row[0] = 1.0;
      act = x0[0];
    }
    double shift = sense == 'E' ? (u01(rng) - 0.5) : (u01(rng) * 3.0 - 1.5);
    int idx = lp.add_row("r" + std::to_string(i), sense, act + shift);
    for (int j = 0; j < n; ++j)
      if (row[j] != 0.0) lp.add_entry(idx, j, row[j]);
  }
  lp.obj_constant = std::round(ucoef(rng) * 4.0) / 4.0;
  return lp;
}

}  // namespace p2h_test
