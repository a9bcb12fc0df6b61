#pragma once

// Sparse standard-form linear program: triplet matrix, row senses, RHS,
// variable bounds and a linear objective with optional constant term.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace p2h {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
  bool maximize = false;
  std::vector<double> obj;
  double obj_constant = 0.0;
  std::vector<double> col_lower, col_upper;
  std::vector<char> row_sense;  // 'L' <=, 'E' =, 'G' >=
  std::vector<double> rhs;
  std::vector<int> entry_row, entry_col;
  std::vector<double> entry_val;
  std::vector<std::string> col_names, row_names;

  int num_cols() const { return static_cast<int>(obj.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
  int num_entries() const { return static_cast<int>(entry_val.size()); }

  int add_col(std::string name, double lower, double upper, double cost) {
    col_names.push_back(std::move(name));
    col_lower.push_back(lower);
    col_upper.push_back(upper);
    obj.push_back(cost);
    return num_cols() - 1;
  }

  int add_row(std::string name, char sense, double rhs_value) {
    if (sense != 'L' && sense != 'E' && sense != 'G')
      throw std::invalid_argument("LinearProgram: row sense must be L, E or G");
    row_names.push_back(std::move(name));
    row_sense.push_back(sense);
    rhs.push_back(rhs_value);
    return num_rows() - 1;
  }

  void add_entry(int row, int col, double value) {
    if (row < 0 || row >= num_rows() || col < 0 || col >= num_cols())
      throw std::out_of_range("LinearProgram: entry references unknown row/column");
    if (value == 0.0) return;
    entry_row.push_back(row);
    entry_col.push_back(col);
    entry_val.push_back(value);
  }
};

// Column-compressed copy of the coefficient matrix. Rejects duplicate
// (row, col) pairs, which the assembly invariant forbids.
struct SparseColumns {
  int nrows = 0, ncols = 0;
  std::vector<int> col_start;  // size ncols+1
  std::vector<int> row_index;
  std::vector<double> value;

  explicit SparseColumns(const LinearProgram& lp) {
    nrows = lp.num_rows();
    ncols = lp.num_cols();
    const int nnz = lp.num_entries();
    std::vector<int> count(ncols + 1, 0);
    for (int k = 0; k < nnz; ++k) count[lp.entry_col[k] + 1]++;
    col_start.assign(ncols + 1, 0);
    for (int j = 0; j < ncols; ++j) col_start[j + 1] = col_start[j] + count[j + 1];
    row_index.assign(nnz, 0);
    value.assign(nnz, 0.0);
    std::vector<int> next(col_start.begin(), col_start.end() - 1);
    for (int k = 0; k < nnz; ++k) {
      int j = lp.entry_col[k];
      int slot = next[j]++;
      row_index[slot] = lp.entry_row[k];
      value[slot] = lp.entry_val[k];
    }
    // order rows within each column and detect duplicates
    for (int j = 0; j < ncols; ++j) {
      int lo = col_start[j], hi = col_start[j + 1];
      std::vector<std::pair<int, double>> tmp;
      tmp.reserve(hi - lo);
      for (int k = lo; k < hi; ++k) tmp.emplace_back(row_index[k], value[k]);
      std::sort(tmp.begin(), tmp.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (size_t i = 1; i < tmp.size(); ++i)
        if (tmp[i].first == tmp[i - 1].first)
          throw std::logic_error("LinearProgram: duplicate entry at row " +
                                 std::to_string(tmp[i].first) + ", col " + std::to_string(j));
      for (int k = lo; k < hi; ++k) {
        row_index[k] = tmp[k - lo].first;
        value[k] = tmp[k - lo].second;
      }
    }
  }
};

struct ResidualReport {
  std::vector<double> row_violation;    // by-row amount outside the sense/rhs
  std::vector<double> bound_violation;  // by-column amount outside [lb, ub]
  double max_row_violation = 0.0;
  double max_bound_violation = 0.0;
  int worst_row = -1, worst_col = -1;
  double objective = 0.0;  // recomputed c'x + constant

  bool within(double tol) const {
    return max_row_violation <= tol && max_bound_violation <= tol;
  }
};

// Solver-independent feasibility audit of a candidate point.
inline ResidualReport check_solution(const LinearProgram& lp, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != lp.num_cols())
    throw std::invalid_argument("check_solution: dimension mismatch");
  ResidualReport rep;
  std::vector<double> activity(lp.num_rows(), 0.0);
  for (int k = 0; k < lp.num_entries(); ++k)
    activity[lp.entry_row[k]] += lp.entry_val[k] * x[lp.entry_col[k]];
  rep.row_violation.assign(lp.num_rows(), 0.0);
  for (int i = 0; i < lp.num_rows(); ++i) {
    double a = activity[i], b = lp.rhs[i];
    double viol = 0.0;
    switch (lp.row_sense[i]) {
      case 'L': viol = std::max(0.0, a - b); break;
      case 'G': viol = std::max(0.0, b - a); break;
      default: viol = std::abs(a - b); break;
    }
    rep.row_violation[i] = viol;
    if (viol > rep.max_row_violation) {
      rep.max_row_violation = viol;
      rep.worst_row = i;
    }
  }
  rep.bound_violation.assign(lp.num_cols(), 0.0);
  for (int j = 0; j < lp.num_cols(); ++j) {
    double viol = std::max(0.0, std::max(lp.col_lower[j] - x[j], x[j] - lp.col_upper[j]));
    rep.bound_violation[j] = viol;
    if (viol > rep.max_bound_violation) {
      rep.max_bound_violation = viol;
      rep.worst_col = j;
    }
  }
  rep.objective = lp.obj_constant;
  for (int j = 0; j < lp.num_cols(); ++j) rep.objective += lp.obj[j] * x[j];
  return rep;
}

// Strength of a Farkas certificate y: positive value proves infeasibility.
// Rows are folded to equalities with sense-signed slacks, so y must satisfy
// y_i <= 0 on 'L' rows and y_i >= 0 on 'G' rows for the bound below to hold.
inline double infeasibility_gap(const LinearProgram& lp, const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != lp.num_rows())
    throw std::invalid_argument("infeasibility_gap: dimension mismatch");
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.row_sense[i] == 'L' && y[i] > 1e-7) return -kInf;
    if (lp.row_sense[i] == 'G' && y[i] < -1e-7) return -kInf;
  }
  std::vector<double> z(lp.num_cols(), 0.0);
  for (int k = 0; k < lp.num_entries(); ++k)
    z[lp.entry_col[k]] += y[lp.entry_row[k]] * lp.entry_val[k];
  double bound = 0.0;
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (z[j] > 0.0) {
      if (std::isinf(lp.col_upper[j])) return -kInf;
      bound += z[j] * lp.col_upper[j];
    } else if (z[j] < 0.0) {
      if (std::isinf(lp.col_lower[j])) return -kInf;
      bound += z[j] * lp.col_lower[j];
    }
  }
  double yb = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) yb += y[i] * lp.rhs[i];
  return yb - bound;
}

}  // namespace p2h
