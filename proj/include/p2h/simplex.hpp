#pragma once

// Bounded-variable revised simplex over sparse LPs.
//
// Rows are folded to equalities with sense-signed logical columns; the
// initial basis is the logical identity. Phase 1 minimizes the total bound
// violation of basic variables, phase 2 the true objective. The basis is
// held as a sparse LU factorization refreshed periodically, with
// product-form eta updates between refactorizations. Pricing is Dantzig
// (most violating reduced cost) with Bland's rule engaged by a cycling
// detector; tie-breaks are by lowest index, so runs are deterministic.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "p2h/lp.hpp"

namespace p2h {

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    default: return "iteration-limit";
  }
}

struct SolverOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  long max_iterations = 0;  // 0: derived from problem size
  bool scaling = true;      // power-of-two equilibration
  int refactor_interval = 100;
  long stall_trip = 0;      // degenerate pivots before Bland's rule; 0: derived
};

struct LPSolution {
  SolveStatus status = SolveStatus::iteration_limit;
  std::vector<double> x;              // structural primal values
  std::vector<double> row_duals;      // y, one per row
  std::vector<double> reduced_costs;  // one per structural column
  double objective = 0.0;
  long iterations = 0;
  double max_primal_residual = 0.0;
  double max_dual_residual = 0.0;
  // Farkas row multipliers when infeasible, primal ray when unbounded.
  std::vector<double> certificate;
  std::string message;
};

namespace detail {

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SolverOptions& opts)
      : lp_(lp), opts_(opts), cols_(lp) {
    m_ = lp.num_rows();
    n_ = lp.num_cols();
    ntot_ = n_ + m_;
    if (opts_.max_iterations <= 0)
      opts_.max_iterations = std::max<long>(20000, 50L * (m_ + n_));
    if (opts_.stall_trip <= 0) opts_.stall_trip = std::max<long>(500, m_);
  }

  LPSolution run() {
    LPSolution sol;
    for (int j = 0; j < n_; ++j)
      if (lp_.col_lower[j] > lp_.col_upper[j] + 1e-12) {
        sol.status = SolveStatus::infeasible;
        sol.message = "column " + std::to_string(j) + " has empty bound interval";
        sol.x.assign(n_, 0.0);
        return sol;
      }

    setup();
    if (!refactorize()) return fail(sol, 0, "basis factorization failed");
    recompute_basics();

    long iters = 0;
    bool bland = false;
    long stall = 0;
    int phase = 1;
    int cleanup_rounds = 0;

    std::vector<double> y(m_), d(m_, 0.0);

    while (true) {
      if (iters >= opts_.max_iterations) {
        finish(sol, SolveStatus::iteration_limit, iters, "iteration limit reached");
        return sol;
      }
      if (phase == 1 && max_violation() <= opts_.feasibility_tol) {
        phase = 2;
        stall = 0;
        bland = false;
      }

      btran_costs(phase, y);
      int q = -1, qdir = 0;
      price(phase, y, bland, q, qdir);

      if (q < 0) {
        if (phase == 1) {
          if (max_violation() <= opts_.feasibility_tol) { phase = 2; continue; }
          sol.certificate.assign(m_, 0.0);
          for (int i = 0; i < m_; ++i) sol.certificate[i] = y[i] * rscale_[i];
          finish(sol, SolveStatus::infeasible, iters, "phase 1 optimum is positive");
          return sol;
        }
        // claimed optimal: refresh factorization and re-verify before reporting
        if (!etas_.empty() && cleanup_rounds < 3) {
          ++cleanup_rounds;
          if (!refactorize()) return fail(sol, iters, "basis factorization failed");
          recompute_basics();
          if (max_violation() > opts_.feasibility_tol) phase = 1;
          continue;  // reprice with the fresh factorization
        }
        if (max_violation() > opts_.feasibility_tol) {
          if (cleanup_rounds < 6) {
            ++cleanup_rounds;
            phase = 1;
            continue;
          }
          finish(sol, SolveStatus::iteration_limit, iters,
                 "failed to reach the feasibility tolerance");
          return sol;
        }
        finish(sol, SolveStatus::optimal, iters, "");
        // the scaled loop can admit unscaled residuals above tolerance on
        // badly scaled data; verify on the original program before reporting
        if (sol.max_primal_residual > opts_.feasibility_tol * rhs_scale_) {
          if (cleanup_rounds < 6) {
            ++cleanup_rounds;
            phase = 1;
            continue;
          }
          sol.status = SolveStatus::iteration_limit;
          sol.message = "unscaled residual above tolerance";
        }
        return sol;
      }

      // entering column in basis-position space; retry once on a bad pivot
      double step = 0.0, leave_bound = 0.0;
      int leave_pos = -1;
      bool flip = false;
      for (int attempt = 0;; ++attempt) {
        ftran_column(q, d);
        double own_limit = upper_[q] - lower_[q];  // inf allowed
        struct Cand { int pos; double t, bound, mag; };
        static thread_local std::vector<Cand> cands;
        cands.clear();
        double row_best = kInf;
        for (int p : dsupport_) {
          double piv = d[p];
          if (std::abs(piv) <= 1e-11) continue;
          double rate = -qdir * piv;
          int v = basis_[p];
          double xv = xval_[v], lb = lower_[v], ub = upper_[v];
          double t = kInf, bound = 0.0;
          if (phase == 1 && xv < lb - opts_.feasibility_tol) {
            if (rate > 0) { t = (lb - xv) / rate; bound = lb; }
          } else if (phase == 1 && xv > ub + opts_.feasibility_tol) {
            if (rate < 0) { t = (ub - xv) / rate; bound = ub; }
          } else if (rate > 0 && !std::isinf(ub)) {
            t = (ub - xv) / rate; bound = ub;
          } else if (rate < 0 && !std::isinf(lb)) {
            t = (lb - xv) / rate; bound = lb;
          }
          if (std::isinf(t)) continue;
          if (t < 0) t = 0;
          cands.push_back({p, t, bound, std::abs(piv)});
          row_best = std::min(row_best, t);
        }
        if (std::isinf(own_limit) && std::isinf(row_best)) {
          if (phase == 2) {
            sol.certificate = build_ray(q, qdir, d);
            finish(sol, SolveStatus::unbounded, iters, "");
            return sol;
          }
          return fail(sol, iters, "unblocked phase-1 direction; numerical trouble");
        }
        leave_pos = -1;
        if (row_best < own_limit) {
          double win = row_best + 1e-9 * (1.0 + std::abs(row_best));
          double best_mag = -1.0;
          for (const auto& c : cands) {
            if (c.t > win) continue;
            bool take = leave_pos < 0;
            if (!take)
              take = bland ? basis_[c.pos] < basis_[leave_pos]
                           : (c.mag > best_mag || (c.mag == best_mag && c.pos < leave_pos));
            if (take) {
              leave_pos = c.pos;
              best_mag = c.mag;
              step = c.t;
              leave_bound = c.bound;
            }
          }
          flip = false;
          if (attempt == 0 && best_mag < 1e-7 && !etas_.empty()) {
            // weak pivot: refresh the factorization and retry the ratio test
            if (!refactorize()) return fail(sol, iters, "basis factorization failed");
            recompute_basics();
            continue;
          }
        } else {
          flip = true;
          step = own_limit;
        }
        break;
      }

      for (int p : dsupport_) xval_[basis_[p]] -= step * qdir * d[p];
      if (flip) {
        xval_[q] = qdir > 0 ? upper_[q] : lower_[q];
        stat_[q] = qdir > 0 ? AT_UPPER : AT_LOWER;
      } else {
        int out = basis_[leave_pos];
        xval_[q] += qdir * step;
        xval_[out] = leave_bound;
        stat_[out] = classify_bound(out, leave_bound);
        stat_[q] = BASIC;
        basis_[leave_pos] = q;
        pos_of_[q] = leave_pos;
        pos_of_[out] = -1;
        push_eta(leave_pos, d);
        if (static_cast<int>(etas_.size()) >= opts_.refactor_interval) {
          if (!refactorize()) return fail(sol, iters, "basis factorization failed");
          recompute_basics();
        }
      }
      ++iters;

      if (step <= 1e-10) {
        if (++stall > opts_.stall_trip) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
    }
  }

 private:
  enum Stat : unsigned char { BASIC, AT_LOWER, AT_UPPER, NB_FREE, NB_FIXED };

  const LinearProgram& lp_;
  SolverOptions opts_;
  SparseColumns cols_;  // values scaled in place
  int m_ = 0, n_ = 0, ntot_ = 0;

  std::vector<double> rscale_, cscale_;
  std::vector<double> lower_, upper_, cost_, xval_, rhs_;
  std::vector<Stat> stat_;
  std::vector<int> basis_, pos_of_;
  double cnorm2_ = 1.0;
  double rhs_scale_ = 1.0;  // 1 + max |rhs| of the original program

  // LU of the basis: step k pivots original row pivot_row_[k] for basis
  // position step_pos_[k]; L and U stored column-wise per step.
  std::vector<int> lstart_, lrow_;
  std::vector<double> lval_;
  std::vector<int> ustart_, ustep_;
  std::vector<double> uval_, udiag_;
  std::vector<int> pivot_row_, step_pos_, step_of_row_;
  struct Eta {
    int pos;
    double pivot;
    std::vector<std::pair<int, double>> entries;  // (position, value), pivot excluded
  };
  std::vector<Eta> etas_;
  std::vector<int> dsupport_;
  std::vector<double> wbuf_, zbuf_;
  std::vector<int> stamp_;
  int stamp_cur_ = 0;

  LPSolution fail(LPSolution& sol, long iters, const std::string& msg) {
    finish(sol, SolveStatus::iteration_limit, iters, msg);
    return sol;
  }

  void setup() {
    rscale_.assign(m_, 1.0);
    cscale_.assign(n_, 1.0);
    if (opts_.scaling) equilibrate();

    lower_.assign(ntot_, 0.0);
    upper_.assign(ntot_, 0.0);
    cost_.assign(ntot_, 0.0);
    xval_.assign(ntot_, 0.0);
    stat_.assign(ntot_, AT_LOWER);
    const double flip = lp_.maximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lp_.col_lower[j] / cscale_[j];
      upper_[j] = lp_.col_upper[j] / cscale_[j];
      cost_[j] = flip * lp_.obj[j] * cscale_[j];
    }
    cnorm2_ = 1.0;
    for (int j = 0; j < n_; ++j) cnorm2_ = std::max(cnorm2_, std::abs(cost_[j]));
    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) rhs_scale_ = std::max(rhs_scale_, std::abs(lp_.rhs[i]));
    rhs_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      rhs_[i] = lp_.rhs[i] * rscale_[i];
      int s = n_ + i;
      switch (lp_.row_sense[i]) {
        case 'L': lower_[s] = 0.0; upper_[s] = kInf; break;
        case 'G': lower_[s] = -kInf; upper_[s] = 0.0; break;
        default: lower_[s] = 0.0; upper_[s] = 0.0; break;
      }
    }
    basis_.assign(m_, 0);
    pos_of_.assign(ntot_, -1);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      pos_of_[n_ + i] = i;
      stat_[n_ + i] = BASIC;
    }
    for (int j = 0; j < n_; ++j) set_nonbasic_at_best(j);
    wbuf_.assign(m_, 0.0);
    zbuf_.assign(m_, 0.0);
    stamp_.assign(m_, -1);
    stamp_cur_ = 0;
  }

  void set_nonbasic_at_best(int v) {
    double lb = lower_[v], ub = upper_[v];
    if (lb == ub) { stat_[v] = NB_FIXED; xval_[v] = lb; return; }
    if (std::isinf(lb) && std::isinf(ub)) { stat_[v] = NB_FREE; xval_[v] = 0.0; return; }
    if (std::isinf(lb)) { stat_[v] = AT_UPPER; xval_[v] = ub; return; }
    if (std::isinf(ub)) { stat_[v] = AT_LOWER; xval_[v] = lb; return; }
    if (std::abs(lb) <= std::abs(ub)) { stat_[v] = AT_LOWER; xval_[v] = lb; }
    else { stat_[v] = AT_UPPER; xval_[v] = ub; }
  }

  static double pow2_near(double v) {
    if (v <= 0.0 || !std::isfinite(v)) return 1.0;
    return std::exp2(std::round(std::log2(v)));
  }

  // geometric-mean passes then a max-|a| pass, scales snapped to powers of
  // two so the scaling itself is exact in floating point
  void equilibrate() {
    std::vector<double> rmin(m_), rmax(m_), cmin(n_), cmax(n_);
    for (int round = 0; round < 4; ++round) {
      bool geometric = round < 3;
      std::fill(rmin.begin(), rmin.end(), kInf);
      std::fill(rmax.begin(), rmax.end(), 0.0);
      for (int j = 0; j < n_; ++j)
        for (int k = cols_.col_start[j]; k < cols_.col_start[j + 1]; ++k) {
          double a = std::abs(cols_.value[k]) * rscale_[cols_.row_index[k]] * cscale_[j];
          if (a == 0.0) continue;
          int i = cols_.row_index[k];
          rmin[i] = std::min(rmin[i], a);
          rmax[i] = std::max(rmax[i], a);
        }
      for (int i = 0; i < m_; ++i)
        if (rmax[i] > 0.0)
          rscale_[i] *= pow2_near(geometric ? 1.0 / std::sqrt(rmin[i] * rmax[i])
                                            : 1.0 / rmax[i]);
      std::fill(cmin.begin(), cmin.end(), kInf);
      std::fill(cmax.begin(), cmax.end(), 0.0);
      for (int j = 0; j < n_; ++j)
        for (int k = cols_.col_start[j]; k < cols_.col_start[j + 1]; ++k) {
          double a = std::abs(cols_.value[k]) * rscale_[cols_.row_index[k]] * cscale_[j];
          if (a == 0.0) continue;
          cmin[j] = std::min(cmin[j], a);
          cmax[j] = std::max(cmax[j], a);
        }
      for (int j = 0; j < n_; ++j)
        if (cmax[j] > 0.0)
          cscale_[j] *= pow2_near(geometric ? 1.0 / std::sqrt(cmin[j] * cmax[j])
                                            : 1.0 / cmax[j]);
    }
    for (int j = 0; j < n_; ++j)
      for (int k = cols_.col_start[j]; k < cols_.col_start[j + 1]; ++k)
        cols_.value[k] *= rscale_[cols_.row_index[k]] * cscale_[j];
  }

  Stat classify_bound(int v, double b) const {
    if (lower_[v] == upper_[v]) return NB_FIXED;
    return b == lower_[v] ? AT_LOWER : AT_UPPER;
  }

  double max_violation() const {
    double worst = 0.0;
    for (int p = 0; p < m_; ++p) {
      int v = basis_[p];
      worst = std::max(worst, std::max(lower_[v] - xval_[v], xval_[v] - upper_[v]));
    }
    return worst;
  }

  double phase1_cost(int v) const {
    if (xval_[v] < lower_[v] - opts_.feasibility_tol) return -1.0;
    if (xval_[v] > upper_[v] + opts_.feasibility_tol) return 1.0;
    return 0.0;
  }

  // ---- factorization -----------------------------------------------------

  bool refactorize() {
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (factorize_once()) {
        etas_.clear();
        return true;
      }
    }
    return false;
  }

  bool factorize_once() {
    lstart_.assign(1, 0);
    lrow_.clear();
    lval_.clear();
    ustart_.assign(1, 0);
    ustep_.clear();
    uval_.clear();
    udiag_.assign(m_, 0.0);
    pivot_row_.assign(m_, -1);
    step_pos_.assign(m_, -1);
    step_of_row_.assign(m_, -1);

    std::vector<int> order(m_);
    std::iota(order.begin(), order.end(), 0);
    auto col_nnz = [&](int pos) {
      int v = basis_[pos];
      return v >= n_ ? 1 : cols_.col_start[v + 1] - cols_.col_start[v];
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return col_nnz(a) < col_nnz(b); });

    std::vector<double> w(m_, 0.0);
    std::vector<int> touched;
    std::vector<char> intouch(m_, 0);
    std::vector<char> instep(m_, 0);
    std::vector<int> failed;

    for (int k = 0; k < m_; ++k) {
      int pos = order[k];
      int v = basis_[pos];
      touched.clear();
      std::priority_queue<int, std::vector<int>, std::greater<int>> steps;
      std::vector<int> pushed;
      auto scatter = [&](int row, double val) {
        if (!intouch[row]) {
          intouch[row] = 1;
          touched.push_back(row);
          w[row] = 0.0;
          int st = step_of_row_[row];
          if (st >= 0 && !instep[st]) {
            instep[st] = 1;
            pushed.push_back(st);
            steps.push(st);
          }
        }
        w[row] += val;
      };
      if (v >= n_) {
        scatter(v - n_, 1.0);
      } else {
        for (int kk = cols_.col_start[v]; kk < cols_.col_start[v + 1]; ++kk)
          scatter(cols_.row_index[kk], cols_.value[kk]);
      }
      size_t umark = ustep_.size();
      while (!steps.empty()) {
        int st = steps.top();
        steps.pop();
        int pr = pivot_row_[st];
        double val = w[pr];
        if (val != 0.0) {
          ustep_.push_back(st);
          uval_.push_back(val);
          for (int kk = lstart_[st]; kk < lstart_[st + 1]; ++kk)
            scatter(lrow_[kk], -lval_[kk] * val);
        }
      }
      for (int st : pushed) instep[st] = 0;

      int piv = -1;
      double pmag = 0.0;
      for (int row : touched) {
        if (step_of_row_[row] >= 0) continue;
        double a = std::abs(w[row]);
        if (a > pmag || (a == pmag && piv >= 0 && row < piv)) {
          pmag = a;
          piv = row;
        }
      }
      if (piv < 0 || pmag < 1e-11) {
        failed.push_back(pos);
        ustep_.resize(umark);
        uval_.resize(umark);
        lstart_.push_back(static_cast<int>(lrow_.size()));
        ustart_.push_back(static_cast<int>(ustep_.size()));
        for (int row : touched) intouch[row] = 0;
        continue;
      }
      double pv = w[piv];
      udiag_[k] = pv;
      pivot_row_[k] = piv;
      step_pos_[k] = pos;
      step_of_row_[piv] = k;
      for (int row : touched) {
        intouch[row] = 0;
        if (row == piv || step_of_row_[row] >= 0) continue;
        double lv = w[row] / pv;
        if (std::abs(lv) > 1e-14) {
          lrow_.push_back(row);
          lval_.push_back(lv);
        }
      }
      lstart_.push_back(static_cast<int>(lrow_.size()));
      ustart_.push_back(static_cast<int>(ustep_.size()));
    }

    if (failed.empty()) return true;
    // repair: dependent columns leave the basis for logicals of uncovered rows
    std::vector<int> free_rows;
    for (int r = 0; r < m_; ++r)
      if (step_of_row_[r] < 0 && pos_of_[n_ + r] < 0) free_rows.push_back(r);
    size_t fi = 0;
    for (int pos : failed) {
      if (fi >= free_rows.size()) return false;
      int v = basis_[pos];
      pos_of_[v] = -1;
      set_nonbasic_at_best(v);
      int r = free_rows[fi++];
      basis_[pos] = n_ + r;
      pos_of_[n_ + r] = pos;
      stat_[n_ + r] = BASIC;
    }
    return false;  // caller retries with the repaired basis
  }

  // solve B d = column(q); result indexed by basis position
  void ftran_column(int q, std::vector<double>& d) {
    std::fill(wbuf_.begin(), wbuf_.end(), 0.0);
    if (q >= n_) {
      wbuf_[q - n_] = 1.0;
    } else {
      for (int k = cols_.col_start[q]; k < cols_.col_start[q + 1]; ++k)
        wbuf_[cols_.row_index[k]] = cols_.value[k];
    }
    ftran(wbuf_, d);
  }

  void ftran(std::vector<double>& w, std::vector<double>& d) {
    for (int k = 0; k < m_; ++k) {
      int pr = pivot_row_[k];
      if (pr < 0) continue;
      double t = w[pr];
      if (t == 0.0) continue;
      for (int kk = lstart_[k]; kk < lstart_[k + 1]; ++kk) w[lrow_[kk]] -= lval_[kk] * t;
    }
    std::fill(zbuf_.begin(), zbuf_.end(), 0.0);
    for (int k = m_ - 1; k >= 0; --k) {
      int pr = pivot_row_[k];
      if (pr < 0) continue;
      double t = w[pr] / udiag_[k];
      zbuf_[k] = t;
      if (t != 0.0)
        for (int kk = ustart_[k]; kk < ustart_[k + 1]; ++kk)
          w[pivot_row_[ustep_[kk]]] -= uval_[kk] * t;
    }
    std::fill(d.begin(), d.end(), 0.0);
    for (int k = 0; k < m_; ++k)
      if (step_pos_[k] >= 0) d[step_pos_[k]] = zbuf_[k];
    for (const auto& e : etas_) {
      double t = d[e.pos] / e.pivot;
      d[e.pos] = t;
      if (t != 0.0)
        for (const auto& [p, v] : e.entries) d[p] -= v * t;
    }
    dsupport_.clear();
    for (int p = 0; p < m_; ++p)
      if (d[p] != 0.0) dsupport_.push_back(p);
  }

  // solve y^T B = c_B with c per basis position; y lands in row space
  void btran(std::vector<double>& c, std::vector<double>& y) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = c[it->pos];
      for (const auto& [p, v] : it->entries) acc -= v * c[p];
      c[it->pos] = acc / it->pivot;
    }
    std::fill(zbuf_.begin(), zbuf_.end(), 0.0);
    for (int k = 0; k < m_; ++k) {
      if (step_pos_[k] < 0) continue;
      double acc = c[step_pos_[k]];
      for (int kk = ustart_[k]; kk < ustart_[k + 1]; ++kk) acc -= uval_[kk] * zbuf_[ustep_[kk]];
      zbuf_[k] = acc / udiag_[k];
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (int k = m_ - 1; k >= 0; --k) {
      int pr = pivot_row_[k];
      if (pr < 0) continue;
      double acc = zbuf_[k];
      for (int kk = lstart_[k]; kk < lstart_[k + 1]; ++kk) acc -= lval_[kk] * y[lrow_[kk]];
      y[pr] = acc;
    }
  }

  void btran_costs(int phase, std::vector<double>& y) {
    std::vector<double> cb(m_, 0.0);
    for (int p = 0; p < m_; ++p)
      cb[p] = phase == 1 ? phase1_cost(basis_[p]) : cost_[basis_[p]];
    btran(cb, y);
  }

  void push_eta(int pos, const std::vector<double>& d) {
    Eta e;
    e.pos = pos;
    e.pivot = d[pos];
    e.entries.reserve(dsupport_.size());
    for (int p : dsupport_)
      if (p != pos) e.entries.emplace_back(p, d[p]);
    etas_.push_back(std::move(e));
  }

  void recompute_basics() {
    std::fill(wbuf_.begin(), wbuf_.end(), 0.0);
    for (int i = 0; i < m_; ++i) wbuf_[i] = rhs_[i];
    for (int j = 0; j < ntot_; ++j) {
      if (stat_[j] == BASIC || xval_[j] == 0.0) continue;
      if (j >= n_) {
        wbuf_[j - n_] -= xval_[j];
      } else {
        for (int k = cols_.col_start[j]; k < cols_.col_start[j + 1]; ++k)
          wbuf_[cols_.row_index[k]] -= cols_.value[k] * xval_[j];
      }
    }
    std::vector<double> d(m_, 0.0);
    ftran(wbuf_, d);
    for (int p = 0; p < m_; ++p) xval_[basis_[p]] = d[p];
  }

  double reduced_cost(int j, int phase, const std::vector<double>& y) const {
    double c = phase == 1 ? 0.0 : cost_[j];
    if (j >= n_) return c - y[j - n_];
    double dot = 0.0;
    for (int k = cols_.col_start[j]; k < cols_.col_start[j + 1]; ++k)
      dot += y[cols_.row_index[k]] * cols_.value[k];
    return c - dot;
  }

  void price(int phase, const std::vector<double>& y, bool bland, int& q, int& dir) {
    q = -1;
    dir = 0;
    double best = 0.0;
    const double tol = opts_.optimality_tol * (phase == 1 ? 1.0 : cnorm2_);
    for (int j = 0; j < ntot_; ++j) {
      Stat s = stat_[j];
      if (s == BASIC || s == NB_FIXED) continue;
      double dj = reduced_cost(j, phase, y);
      double v;
      int dr;
      if (s == AT_LOWER && dj < -tol) { v = -dj; dr = 1; }
      else if (s == AT_UPPER && dj > tol) { v = dj; dr = -1; }
      else if (s == NB_FREE && std::abs(dj) > tol) { v = std::abs(dj); dr = dj < 0 ? 1 : -1; }
      else continue;
      if (bland) { q = j; dir = dr; return; }
      if (q < 0 || v > best * (1.0 + 1e-12)) {
        q = j;
        best = v;
        dir = dr;
      }
    }
  }

  std::vector<double> build_ray(int q, int dir, const std::vector<double>& d) const {
    std::vector<double> ray(n_, 0.0);
    if (q < n_) ray[q] = dir * cscale_[q];
    for (int p : dsupport_) {
      int v = basis_[p];
      if (v < n_) ray[v] = -dir * d[p] * cscale_[v];
    }
    return ray;
  }

  void finish(LPSolution& sol, SolveStatus status, long iters, const std::string& msg) {
    sol.status = status;
    sol.iterations = iters;
    sol.message = msg;
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) sol.x[j] = xval_[j] * cscale_[j];

    std::vector<double> y(m_, 0.0);
    btran_costs(2, y);
    const double flip = lp_.maximize ? -1.0 : 1.0;
    sol.row_duals.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) sol.row_duals[i] = flip * y[i] * rscale_[i];
    sol.reduced_costs.assign(n_, 0.0);
    std::vector<double> acc(n_, 0.0);
    for (int k = 0; k < lp_.num_entries(); ++k)
      acc[lp_.entry_col[k]] += sol.row_duals[lp_.entry_row[k]] * lp_.entry_val[k];
    for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = lp_.obj[j] - acc[j];

    auto rep = check_solution(lp_, sol.x);
    sol.max_primal_residual = std::max(rep.max_row_violation, rep.max_bound_violation);
    sol.objective = rep.objective;

    double dres = 0.0;
    const double sgn = lp_.maximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      double dj = sgn * sol.reduced_costs[j];
      double lb = lp_.col_lower[j], ub = lp_.col_upper[j];
      if (lb == ub) continue;
      bool at_lb = sol.x[j] <= lb + 1e-6 * (1 + std::abs(lb));
      bool at_ub = sol.x[j] >= ub - 1e-6 * (1 + std::abs(ub));
      if (at_lb && at_ub) continue;
      if (at_lb) dres = std::max(dres, -dj);
      else if (at_ub) dres = std::max(dres, dj);
      else dres = std::max(dres, std::abs(dj));
    }
    sol.max_dual_residual = status == SolveStatus::optimal ? dres : 0.0;
  }
};

}  // namespace detail

inline LPSolution solve(const LinearProgram& lp, const SolverOptions& opts = {}) {
  detail::Simplex s(lp, opts);
  return s.run();
}

// Dual objective built from the reported duals and reduced costs; at an
// optimal point it matches the primal objective up to tolerances. Reduced
// costs on infinite bounds only contribute noise below `drop`.
inline double dual_objective(const LinearProgram& lp, const LPSolution& sol,
                             double drop = 1e-7) {
  double val = lp.obj_constant;
  for (int i = 0; i < lp.num_rows(); ++i) val += sol.row_duals[i] * lp.rhs[i];
  for (int j = 0; j < lp.num_cols(); ++j) {
    double dj = sol.reduced_costs[j];
    if (std::abs(dj) <= drop) continue;
    bool pick_lower = lp.maximize ? dj < 0 : dj > 0;
    double b = pick_lower ? lp.col_lower[j] : lp.col_upper[j];
    if (std::isinf(b)) continue;  // tolerance-level dual infeasibility
    val += dj * b;
  }
  return val;
}

}  // namespace p2h
