#pragma once

// KPI reports and the three sensitivity studies: plant location sweep,
// SNSP-level sweep (fixed demand or max producible H2) and bus-pair sweep.
// Every sweep solves one shared no-P2H baseline, then independent per-point
// models, optionally across worker threads with ordered result assembly.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "p2h/audit.hpp"
#include "p2h/aviation.hpp"
#include "p2h/formulation.hpp"

namespace p2h {

struct KpiReport {
  int days = 1;
  double daily_cost_eur = 0.0;
  double daily_cost_fuel_eur = 0.0;
  double daily_cost_emission_eur = 0.0;
  double daily_cost_shed_eur = 0.0;
  double daily_cost_curtail_eur = 0.0;
  double daily_cost_invest_eur = 0.0;
  double daily_curtailment_gwh = 0.0;
  double daily_power_co2_t = 0.0;
  double daily_aviation_co2_t = 0.0;
  double daily_shed_mwh = 0.0;
  double daily_discharged_mwh = 0.0;
  double daily_h2_demand_mwh = 0.0;
  double xi_mw = 0.0;
  std::vector<std::pair<int, double>> xi_per_bus;
  std::optional<double> h2_benefit_eur_per_mwh;
};

struct AnalysisOptions {
  FormulationOptions form;
  SolverOptions solver;
  int workers = 1;
  double max_h2_cost_headroom = 0.05;  // epsilon of the two-stage cost cap
  // when no baseline cost is supplied, solve the paired no-P2H case for the
  // H2 benefit; sweeps turn this off where the quantity is not meaningful
  bool paired_baseline_benefit = true;
};

// The no-P2H reference case: no plant variables anywhere and no hydrogen
// obligation (aviation stays on jet fuel).
inline FormulationOptions no_p2h_options(const FormulationOptions& base) {
  FormulationOptions o = base;
  o.mode = PlantMode::none;
  o.plant_buses.clear();
  o.fix_xi_mw.reset();
  o.h2_demand_override_mwh = 0.0;
  return o;
}

inline DispatchSolution solve_no_p2h_baseline(const Scenario& s, const AnalysisOptions& opts) {
  auto model = build(s, no_p2h_options(opts.form));
  auto sol = solve_dispatch(model, s, opts.solver);
  if (sol.status != SolveStatus::optimal)
    throw std::runtime_error(std::string("no-P2H baseline solve failed: ") +
                             to_string(sol.status));
  return sol;
}

inline KpiReport kpis(const DispatchSolution& sol, const Scenario& s, const FuelPlan& plan,
                      std::optional<double> baseline_daily_cost_eur = {},
                      const AnalysisOptions& opts = {}) {
  if (sol.status != SolveStatus::optimal)
    throw std::invalid_argument(std::string("kpis: solution status is ") +
                                to_string(sol.status));
  KpiReport k;
  k.days = s.profiles.num_days();
  const double days = k.days;
  const double tau = s.profiles.step_hours;
  k.daily_cost_fuel_eur = sol.cost_fuel_eur / days;
  k.daily_cost_emission_eur = sol.cost_emission_eur / days;
  k.daily_cost_shed_eur = sol.cost_shed_eur / days;
  k.daily_cost_curtail_eur = sol.cost_curtail_eur / days;
  k.daily_cost_invest_eur = sol.cost_invest_eur / days;
  k.daily_cost_eur = sol.total_cost_eur() / days;

  double curt_mwh = 0.0, shed_mwh = 0.0;
  for (const auto& series : sol.curtail_mw)
    for (double v : series) curt_mwh += v * tau;
  for (const auto& series : sol.shed_mw)
    for (double v : series) shed_mwh += v * tau;
  k.daily_curtailment_gwh = curt_mwh / 1000.0 / days;
  k.daily_shed_mwh = shed_mwh / days;

  double co2 = 0.0;
  for (size_t g = 0; g < sol.gen_mw.size(); ++g)
    for (double p : sol.gen_mw[g]) co2 += s.generators[g].emission_t_per_mwh * p * tau;
  k.daily_power_co2_t = co2 / days;

  const bool has_plants = !sol.plants.empty();
  k.daily_aviation_co2_t = has_plants ? 0.0 : plan.daily_co2_t;
  k.xi_mw = sol.total_xi_mw();
  for (const auto& p : sol.plants) k.xi_per_bus.emplace_back(p.bus, p.xi_mw);
  k.daily_discharged_mwh = discharged_energy_mwh(sol, tau) / days;
  k.daily_h2_demand_mwh = sol.daily_h2_demand_mwh;

  if (has_plants && k.daily_h2_demand_mwh > 0.0 &&
      (baseline_daily_cost_eur || opts.paired_baseline_benefit)) {
    double base;
    if (baseline_daily_cost_eur) {
      base = *baseline_daily_cost_eur;
    } else {
      auto baseline = solve_no_p2h_baseline(s, opts);
      base = baseline.total_cost_eur() / days;
    }
    k.h2_benefit_eur_per_mwh = (base - k.daily_cost_eur) / k.daily_h2_demand_mwh;
  }
  return k;
}

enum class SweepKind { location, snsp, pairs };
enum class SnspSweepMode { fixed_demand, max_h2 };
enum class PairObjective { curtailment, cost };

struct SweepPoint {
  std::string label;
  std::vector<int> buses;
  double snsp_level = std::numeric_limits<double>::quiet_NaN();
  SolveStatus status = SolveStatus::iteration_limit;
  std::optional<KpiReport> kpi;  // absent when the point did not solve
  double curtailment_reduction_gwh = 0.0;
  double producible_h2_mwh_per_day = 0.0;
};

struct SweepResult {
  SweepKind kind = SweepKind::location;
  std::string mode;
  std::optional<KpiReport> baseline;
  std::vector<SweepPoint> points;
  int best_index = -1;
};

namespace detail {

template <typename Fn>
void run_indexed(int count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  int nthreads = std::min(workers, count);
  pool.reserve(nthreads);
  for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline SweepResult sweep_location(const Scenario& s, const std::vector<int>& buses,
                                  const FuelPlan& plan, const AnalysisOptions& opts = {}) {
  for (int b : buses)
    if (s.bus_index(b) < 0)
      throw std::invalid_argument("sweep_location: unknown bus " + std::to_string(b));
  SweepResult res;
  res.kind = SweepKind::location;
  res.mode = "single-plant";
  auto baseline_sol = solve_no_p2h_baseline(s, opts);
  res.baseline = kpis(baseline_sol, s, plan);
  const double base_cost = res.baseline->daily_cost_eur;
  const double base_curt = res.baseline->daily_curtailment_gwh;

  res.points.resize(buses.size());
  detail::run_indexed(static_cast<int>(buses.size()), opts.workers, [&](int i) {
    SweepPoint pt;
    pt.label = "bus " + std::to_string(buses[i]);
    pt.buses = {buses[i]};
    FormulationOptions fo = opts.form;
    fo.mode = PlantMode::single;
    fo.plant_buses = {buses[i]};
    auto model = build(s, fo);
    auto sol = solve_dispatch(model, s, opts.solver);
    pt.status = sol.status;
    if (sol.status == SolveStatus::optimal) {
      pt.kpi = kpis(sol, s, plan, base_cost, opts);
      pt.curtailment_reduction_gwh = base_curt - pt.kpi->daily_curtailment_gwh;
    }
    res.points[i] = std::move(pt);
  });

  double best = kInf;
  for (size_t i = 0; i < res.points.size(); ++i)
    if (res.points[i].kpi && res.points[i].kpi->daily_cost_eur < best) {
      best = res.points[i].kpi->daily_cost_eur;
      res.best_index = static_cast<int>(i);
    }
  return res;
}

inline SweepResult sweep_snsp(const Scenario& s, const std::vector<double>& levels,
                              SnspSweepMode mode, const FuelPlan& plan,
                              const AnalysisOptions& opts = {}) {
  for (double v : levels)
    if (!(v > 0.0) || v > 1.0)
      throw std::invalid_argument("sweep_snsp: levels must lie in (0,1]");
  if (levels.empty()) throw std::invalid_argument("sweep_snsp: no levels");

  SweepResult res;
  res.kind = SweepKind::snsp;
  res.mode = mode == SnspSweepMode::fixed_demand ? "fixed-demand" : "max-h2";
  res.points.resize(levels.size());

  // sweep-wide cost cap for max-H2 mode: stage 1 at the tightest level, so
  // raising the level is a pure relaxation across the sweep
  double cost_cap = 0.0;
  std::vector<double> stage1_cost;
  if (mode == SnspSweepMode::max_h2) {
    double tightest = *std::min_element(levels.begin(), levels.end());
    FormulationOptions fo = opts.form;
    fo.omit_h2_coverage = true;
    fo.snsp_override = tightest;
    auto model = build(s, fo);
    auto lps = solve(model.lp, opts.solver);
    if (lps.status != SolveStatus::optimal)
      throw std::runtime_error(std::string("max-H2 stage 1 solve failed: ") +
                               to_string(lps.status));
    cost_cap = (1.0 + opts.max_h2_cost_headroom) * lps.objective;
  }

  detail::run_indexed(static_cast<int>(levels.size()), opts.workers, [&](int i) {
    SweepPoint pt;
    pt.snsp_level = levels[i];
    pt.label = "snsp " + std::to_string(levels[i]);
    AnalysisOptions point_opts = opts;
    point_opts.workers = 1;
    point_opts.paired_baseline_benefit = false;  // benefit is not a per-level notion here
    FormulationOptions fo = opts.form;
    fo.snsp_override = levels[i];
    if (mode == SnspSweepMode::fixed_demand) {
      auto model = build(s, fo);
      auto sol = solve_dispatch(model, s, opts.solver);
      pt.status = sol.status;
      if (sol.status == SolveStatus::optimal) {
        pt.kpi = kpis(sol, s, plan, std::nullopt, point_opts);
        pt.producible_h2_mwh_per_day = pt.kpi->daily_discharged_mwh;
      }
    } else {
      fo.omit_h2_coverage = true;
      auto model = build(s, fo);
      // stage 2: cap the cost, maximize discharged energy
      LinearProgram lp = model.lp;
      int cap_row = lp.add_row("costcap", 'L', cost_cap - lp.obj_constant);
      for (int j = 0; j < lp.num_cols(); ++j)
        if (lp.obj[j] != 0.0) lp.add_entry(cap_row, j, lp.obj[j]);
      std::fill(lp.obj.begin(), lp.obj.end(), 0.0);
      lp.obj_constant = 0.0;
      lp.maximize = true;
      for (int p = 0; p < model.idx.num_plants; ++p)
        for (int t = 0; t < model.idx.horizon; ++t)
          lp.obj[model.idx.pdch(p, t)] = s.profiles.step_hours;
      auto lps = solve(lp, opts.solver);
      pt.status = lps.status;
      if (lps.status == SolveStatus::optimal) {
        auto sol = extract(model, lps, s);
        sol.status = lps.status;
        pt.producible_h2_mwh_per_day = lps.objective / s.profiles.num_days();
        pt.kpi = kpis(sol, s, plan, std::nullopt, point_opts);
      }
    }
    res.points[i] = std::move(pt);
  });
  return res;
}

inline SweepResult sweep_pairs(const Scenario& s, const std::vector<int>& candidates,
                               PairObjective objective, const FuelPlan& plan,
                               const AnalysisOptions& opts = {}) {
  if (candidates.size() < 2)
    throw std::invalid_argument("sweep_pairs: need at least two candidate buses");
  for (int b : candidates)
    if (s.bus_index(b) < 0)
      throw std::invalid_argument("sweep_pairs: unknown bus " + std::to_string(b));
  for (size_t i = 0; i < candidates.size(); ++i)
    for (size_t j = i + 1; j < candidates.size(); ++j)
      if (candidates[i] == candidates[j])
        throw std::invalid_argument("sweep_pairs: duplicate candidate bus");

  SweepResult res;
  res.kind = SweepKind::pairs;
  res.mode = objective == PairObjective::curtailment ? "curtailment" : "cost";
  auto baseline_sol = solve_no_p2h_baseline(s, opts);
  res.baseline = kpis(baseline_sol, s, plan);
  const double base_cost = res.baseline->daily_cost_eur;
  const double base_curt = res.baseline->daily_curtailment_gwh;

  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < candidates.size(); ++i)
    for (size_t j = i + 1; j < candidates.size(); ++j)
      pairs.emplace_back(candidates[i], candidates[j]);
  res.points.resize(pairs.size());

  detail::run_indexed(static_cast<int>(pairs.size()), opts.workers, [&](int i) {
    SweepPoint pt;
    pt.buses = {pairs[i].first, pairs[i].second};
    pt.label =
        "b" + std::to_string(pairs[i].first) + "-b" + std::to_string(pairs[i].second);
    FormulationOptions fo = opts.form;
    fo.mode = PlantMode::pair;
    fo.plant_buses = pt.buses;
    auto model = build(s, fo);
    auto sol = solve_dispatch(model, s, opts.solver);
    pt.status = sol.status;
    if (sol.status == SolveStatus::optimal) {
      pt.kpi = kpis(sol, s, plan, base_cost, opts);
      pt.curtailment_reduction_gwh = base_curt - pt.kpi->daily_curtailment_gwh;
    }
    res.points[i] = std::move(pt);
  });

  double best = -kInf;
  for (size_t i = 0; i < res.points.size(); ++i) {
    if (!res.points[i].kpi) continue;
    double score = objective == PairObjective::curtailment
                       ? res.points[i].curtailment_reduction_gwh
                       : -res.points[i].kpi->daily_cost_eur;
    if (score > best) {
      best = score;
      res.best_index = static_cast<int>(i);
    }
  }
  return res;
}

}  // namespace p2h
