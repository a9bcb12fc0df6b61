#pragma once

// Post-solve audit: recomputes every model relation from the scenario data
// and the extracted trajectories, independent of how the LP was assembled
// or solved. Each field is the worst violation found, in natural units.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "p2h/formulation.hpp"
#include "p2h/scenario.hpp"

namespace p2h {

struct AuditReport {
  double nodal_balance_mw = 0.0;
  double flow_equation_mw = 0.0;
  double ramp_mw = 0.0;
  double soc_recursion_mwh = 0.0;
  double h2_coverage_mwh = 0.0;
  double snsp_ratio_excess = 0.0;  // above the limit, ratio units
  double wind_closure_mw = 0.0;
  double shed_above_load_mw = 0.0;
  double bound_mw = 0.0;           // negative series / segment overfill / line overload
  double segment_fill_gap_mw = 0.0;  // greedy-fill breach under strictly rising slopes
  double cost_decomposition_eur = 0.0;

  double worst_physical() const {
    double w = 0.0;
    for (double v : {nodal_balance_mw, flow_equation_mw, ramp_mw, soc_recursion_mwh,
                     h2_coverage_mwh, wind_closure_mw, shed_above_load_mw, bound_mw,
                     segment_fill_gap_mw})
      w = std::max(w, v);
    return w;
  }
  bool within(double tol, double ratio_tol = 1e-9, double cost_tol = 1e-6) const {
    return worst_physical() <= tol && snsp_ratio_excess <= ratio_tol &&
           cost_decomposition_eur <= cost_tol;
  }
  std::string to_string() const {
    std::ostringstream os;
    os << "nodal balance residual      " << nodal_balance_mw << " MW\n"
       << "flow equation residual      " << flow_equation_mw << " MW\n"
       << "ramp violation              " << ramp_mw << " MW\n"
       << "soc recursion residual      " << soc_recursion_mwh << " MWh\n"
       << "h2 coverage shortfall       " << h2_coverage_mwh << " MWh\n"
       << "snsp ratio excess           " << snsp_ratio_excess << "\n"
       << "wind closure residual       " << wind_closure_mw << " MW\n"
       << "shed above load             " << shed_above_load_mw << " MW\n"
       << "bound violation             " << bound_mw << " MW\n"
       << "segment fill gap            " << segment_fill_gap_mw << " MW\n"
       << "cost decomposition residual " << cost_decomposition_eur << " EUR\n";
    return os.str();
  }
};

inline AuditReport audit(const Scenario& s, const DispatchModel& m,
                         const DispatchSolution& sol) {
  AuditReport rep;
  const int T = m.idx.horizon, NG = m.idx.num_gens, NB = m.idx.num_buses,
            NL = m.idx.num_lines, K = m.idx.segments_per_gen;
  const double tau = s.profiles.step_hours;
  auto bump = [](double& slot, double v) { slot = std::max(slot, v); };

  // nodal balance: injections minus charging equal line exports
  for (int b = 0; b < NB; ++b) {
    int bus_id = s.buses[b].id;
    for (int t = 0; t < T; ++t) {
      double inj = 0.0;
      for (int g = 0; g < NG; ++g)
        if (s.generators[g].bus == bus_id) inj += sol.gen_mw[g][t];
      inj += sol.wind_mw[b][t] - s.demand_mw(b, t) + sol.shed_mw[b][t];
      for (const auto& p : sol.plants)
        if (p.bus == bus_id) inj -= p.pch_mw[t];
      if (m.opts.interconnector_bus && *m.opts.interconnector_bus == bus_id)
        inj += s.profiles.import_mw[t] - s.profiles.export_mw[t];
      double out = 0.0;
      for (int l = 0; l < NL; ++l) {
        if (s.lines[l].from_bus == bus_id) out += sol.flow_mw[l][0][t];
        if (s.lines[l].to_bus == bus_id) out += sol.flow_mw[l][1][t];
      }
      bump(rep.nodal_balance_mw, std::abs(inj - out));
    }
  }

  // flow equations and thermal limits
  for (int l = 0; l < NL; ++l) {
    const auto& ln = s.lines[l];
    double beff = ln.susceptance_pu * s.base_mva;
    int bi = s.bus_index(ln.from_bus), bj = s.bus_index(ln.to_bus);
    for (int t = 0; t < T; ++t) {
      double fwd = beff * (sol.angle_rad[bi][t] - sol.angle_rad[bj][t]);
      bump(rep.flow_equation_mw, std::abs(sol.flow_mw[l][0][t] - fwd));
      bump(rep.flow_equation_mw, std::abs(sol.flow_mw[l][1][t] + fwd));
      bump(rep.bound_mw, std::abs(sol.flow_mw[l][0][t]) - ln.thermal_limit_mw);
    }
  }

  // ramps between consecutive steps, day boundaries included
  for (int g = 0; g < NG; ++g)
    for (int t = 1; t < T; ++t) {
      double delta = sol.gen_mw[g][t] - sol.gen_mw[g][t - 1];
      bump(rep.ramp_mw, delta - s.generators[g].ramp_up_mw_per_h * tau);
      bump(rep.ramp_mw, -delta - s.generators[g].ramp_down_mw_per_h * tau);
    }

  // storage recursion and nonnegativity
  for (const auto& p : sol.plants) {
    double prev = s.storage.soc_initial_mwh;
    for (int t = 0; t < T; ++t) {
      double expect =
          prev + (s.storage.round_trip_efficiency * p.pch_mw[t] - p.pdch_mw[t]) * tau;
      bump(rep.soc_recursion_mwh, std::abs(p.soc_mwh[t] - expect));
      bump(rep.bound_mw, -p.soc_mwh[t]);
      bump(rep.bound_mw, -p.pch_mw[t]);
      bump(rep.bound_mw, -p.pdch_mw[t]);
      bump(rep.bound_mw, p.pdch_mw[t] - p.xi_mw);
      prev = p.soc_mwh[t];
    }
    bump(rep.bound_mw, -p.xi_mw);
    if (s.storage.cyclic_soc && T > 0)
      bump(rep.soc_recursion_mwh, std::abs(p.soc_mwh[T - 1] - s.storage.soc_initial_mwh));
  }

  // daily hydrogen coverage (literal step sums, tau = 1 h in bundled data)
  if (!m.opts.omit_h2_coverage && m.daily_h2_demand_mwh > 0.0) {
    int spd = s.profiles.steps_per_day;
    int days = (T + spd - 1) / spd;
    for (int d = 0; d < days; ++d) {
      double sum = 0.0;
      for (int t = d * spd; t < std::min(T, (d + 1) * spd); ++t)
        for (const auto& p : sol.plants) sum += p.pdch_mw[t];
      bump(rep.h2_coverage_mwh, m.daily_h2_demand_mwh - sum);
    }
  }

  // SNSP in ratio form
  for (int t = 0; t < T; ++t) {
    double wind_tot = 0.0, demand_tot = 0.0, pch_tot = 0.0;
    for (int b = 0; b < NB; ++b) {
      wind_tot += sol.wind_mw[b][t];
      demand_tot += s.demand_mw(b, t);
    }
    for (const auto& p : sol.plants) pch_tot += p.pch_mw[t];
    double denom = demand_tot + pch_tot + s.profiles.export_mw[t];
    if (denom > 0.0) {
      double ratio = (wind_tot + s.profiles.import_mw[t]) / denom;
      bump(rep.snsp_ratio_excess, ratio - m.snsp_limit);
    }
  }

  // wind closure and availability caps; shedding within load
  for (int b = 0; b < NB; ++b) {
    double cap = s.wind_capacity_at_bus(s.buses[b].id);
    for (int t = 0; t < T; ++t) {
      double avail = cap * s.profiles.wind_availability[t];
      double closure = sol.wind_mw[b][t] + sol.curtail_mw[b][t] - avail;
      if (m.opts.curtailment == CurtailmentMode::equality && cap > 0.0)
        bump(rep.wind_closure_mw, std::abs(closure));
      else
        bump(rep.wind_closure_mw, closure);
      bump(rep.bound_mw, -sol.wind_mw[b][t]);
      bump(rep.bound_mw, -sol.curtail_mw[b][t]);
      bump(rep.bound_mw, sol.wind_mw[b][t] - avail);
      bump(rep.shed_above_load_mw, sol.shed_mw[b][t] - s.demand_mw(b, t));
      bump(rep.shed_above_load_mw, -sol.shed_mw[b][t]);
    }
  }

  // greedy fill: with strictly increasing slopes a later segment may not be
  // used while an earlier one is slack
  for (int g = 0; g < NG; ++g) {
    const auto& pw = m.cost_curves[g];
    for (int k = 0; k + 1 < K; ++k) {
      if (pw.segments.empty()) break;
      double rise = pw.segments[k + 1].slope_eur_per_mwh - pw.segments[k].slope_eur_per_mwh;
      if (rise <= 1e-9) continue;
      for (int t = 0; t < T; ++t) {
        double slack = pw.segments[k].width_mw - sol.gen_segment_mw[g][k][t];
        double used_next = sol.gen_segment_mw[g][k + 1][t];
        if (used_next > 1e-9) bump(rep.segment_fill_gap_mw, std::min(slack, used_next));
      }
    }
  }

  // accounting identity against the solved objective
  rep.cost_decomposition_eur = std::abs(sol.total_cost_eur() - sol.lp_objective);
  return rep;
}

}  // namespace p2h
