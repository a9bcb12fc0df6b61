#pragma once

// Assembles the multi-period dispatch LP: piecewise-linear fuel costs,
// emission/shedding/curtailment penalties and amortized P2H investment in
// the objective; nodal balance, DC flow, ramps, storage dynamics, daily H2
// coverage, wind closure and the SNSP cap as rows. Generation appears as
// per-segment columns only; P_g = p_min_g + sum of its segment fills.
//
// Column layout (single plant):
//   N_G*K*T segments | N_B*T shed | N_B*T curtail | N_B*T wind | N_B*T angle
//   | 2*N_L*T directed flows | 3*T plant series (Pch, Pdch, SOC) | 1 xi
// Pair mode repeats the plant block per candidate bus.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p2h/linearize.hpp"
#include "p2h/lp.hpp"
#include "p2h/scenario.hpp"
#include "p2h/simplex.hpp"

namespace p2h {

struct VariableIndex {
  int num_gens = 0, num_buses = 0, num_lines = 0;
  int segments_per_gen = 0, horizon = 0, num_plants = 0;
  int seg_base = 0, shed_base = 0, curtail_base = 0, wind_base = 0, angle_base = 0,
      flow_base = 0, plant_base = 0, xi_base = 0;

  void layout() {
    seg_base = 0;
    shed_base = seg_base + num_gens * segments_per_gen * horizon;
    curtail_base = shed_base + num_buses * horizon;
    wind_base = curtail_base + num_buses * horizon;
    angle_base = wind_base + num_buses * horizon;
    flow_base = angle_base + num_buses * horizon;
    plant_base = flow_base + 2 * num_lines * horizon;
    xi_base = plant_base + 3 * horizon * num_plants;
  }
  int total() const { return xi_base + num_plants; }

  int seg(int g, int k, int t) const {
    return seg_base + (g * segments_per_gen + k) * horizon + t;
  }
  int shed(int b, int t) const { return shed_base + b * horizon + t; }
  int curtail(int b, int t) const { return curtail_base + b * horizon + t; }
  int wind(int b, int t) const { return wind_base + b * horizon + t; }
  int angle(int b, int t) const { return angle_base + b * horizon + t; }
  int flow(int l, int dir, int t) const { return flow_base + (l * 2 + dir) * horizon + t; }
  int pch(int p, int t) const { return plant_base + (3 * p + 0) * horizon + t; }
  int pdch(int p, int t) const { return plant_base + (3 * p + 1) * horizon + t; }
  int soc(int p, int t) const { return plant_base + (3 * p + 2) * horizon + t; }
  int xi(int p) const { return xi_base + p; }
};

enum class PlantMode { none, from_scenario, single, pair };
enum class CurtailmentMode { equality, inequality };

struct FormulationOptions {
  PlantMode mode = PlantMode::from_scenario;
  std::vector<int> plant_buses;  // bus ids, used by single/pair modes
  std::optional<double> fix_xi_mw;
  bool charge_capped_by_xi = false;          // optional Pch_t <= xi rows
  CurtailmentMode curtailment = CurtailmentMode::equality;
  int segments_per_generator = 10;
  std::optional<double> snsp_override;
  std::optional<double> h2_demand_override_mwh;  // per day
  bool omit_h2_coverage = false;                 // used by max-H2 stage 1
  std::optional<int> interconnector_bus;         // inject net import into balance
};

struct DispatchModel {
  LinearProgram lp;
  VariableIndex idx;
  std::vector<int> plant_buses;            // resolved bus ids, layout order
  std::vector<PiecewiseCost> cost_curves;  // one per generator
  FormulationOptions opts;
  double snsp_limit = 1.0;
  double daily_h2_demand_mwh = 0.0;
  double xi_price_eur_per_mw = 0.0;  // per horizon
};

inline std::vector<int> resolve_plant_buses(const Scenario& s, const FormulationOptions& o) {
  std::vector<int> buses;
  switch (o.mode) {
    case PlantMode::none:
      break;
    case PlantMode::from_scenario:
      for (const auto& b : s.buses)
        if (b.p2h_site) buses.push_back(b.id);
      break;
    case PlantMode::single:
      if (o.plant_buses.size() != 1)
        throw std::invalid_argument("single plant mode needs exactly one bus");
      buses = o.plant_buses;
      break;
    case PlantMode::pair:
      if (o.plant_buses.size() != 2 || o.plant_buses[0] == o.plant_buses[1])
        throw std::invalid_argument("pair mode needs two distinct buses");
      buses = o.plant_buses;
      break;
  }
  if (buses.size() > 2)
    throw std::invalid_argument("at most two P2H candidate buses are supported");
  for (int b : buses)
    if (s.bus_index(b) < 0)
      throw std::invalid_argument("P2H candidate bus " + std::to_string(b) + " not in scenario");
  return buses;
}

inline DispatchModel build(const Scenario& s, const FormulationOptions& o = {}) {
  DispatchModel m;
  m.opts = o;
  m.plant_buses = resolve_plant_buses(s, o);
  m.snsp_limit = o.snsp_override.value_or(s.economics.snsp_limit);
  m.daily_h2_demand_mwh = o.h2_demand_override_mwh.value_or(s.economics.daily_h2_demand_mwh);
  m.xi_price_eur_per_mw = s.p2h_invest_cost_eur_per_mw_horizon();

  const int T = s.profiles.horizon();
  const int NG = static_cast<int>(s.generators.size());
  const int NB = static_cast<int>(s.buses.size());
  const int NL = static_cast<int>(s.lines.size());
  const int K = o.segments_per_generator;
  const int NP = static_cast<int>(m.plant_buses.size());
  const double tau = s.profiles.step_hours;
  const auto& eco = s.economics;

  if (K < 1) throw std::invalid_argument("need at least one cost segment");
  if (T < 1) throw std::invalid_argument("empty horizon");

  auto& idx = m.idx;
  idx.num_gens = NG;
  idx.num_buses = NB;
  idx.num_lines = NL;
  idx.segments_per_gen = K;
  idx.horizon = T;
  idx.num_plants = NP;
  idx.layout();

  m.cost_curves.reserve(NG);
  for (const auto& g : s.generators) m.cost_curves.push_back(linearize(g, K));

  auto& lp = m.lp;
  lp.obj.reserve(idx.total());

  // ---- columns, in layout order ----
  for (int g = 0; g < NG; ++g)
    for (int k = 0; k < K; ++k) {
      const auto& pw = m.cost_curves[g];
      double width = pw.segments.empty() ? 0.0 : pw.segments[k].width_mw;
      double slope = pw.segments.empty() ? 0.0 : pw.segments[k].slope_eur_per_mwh;
      for (int t = 0; t < T; ++t) {
        std::string name = "seg_" + s.generators[g].id + "_k" + std::to_string(k + 1) + "_t" +
                           std::to_string(t + 1);
        lp.add_col(std::move(name), 0.0, width,
                   tau * (slope + eco.emission_cost_eur_per_mwh));
      }
    }
  for (int b = 0; b < NB; ++b)
    for (int t = 0; t < T; ++t)
      lp.add_col("shed_b" + std::to_string(s.buses[b].id) + "_t" + std::to_string(t + 1), 0.0,
                 s.demand_mw(b, t), tau * eco.shed_cost_eur_per_mwh);
  for (int b = 0; b < NB; ++b) {
    double cap = s.wind_capacity_at_bus(s.buses[b].id);
    for (int t = 0; t < T; ++t)
      lp.add_col("curt_b" + std::to_string(s.buses[b].id) + "_t" + std::to_string(t + 1), 0.0,
                 cap * s.profiles.wind_availability[t], tau * eco.curtail_cost_eur_per_mwh);
  }
  for (int b = 0; b < NB; ++b) {
    double cap = s.wind_capacity_at_bus(s.buses[b].id);
    for (int t = 0; t < T; ++t)
      lp.add_col("wind_b" + std::to_string(s.buses[b].id) + "_t" + std::to_string(t + 1), 0.0,
                 cap * s.profiles.wind_availability[t], 0.0);
  }
  for (int b = 0; b < NB; ++b) {
    bool ref = s.buses[b].id == s.reference_bus;
    for (int t = 0; t < T; ++t)
      lp.add_col("ang_b" + std::to_string(s.buses[b].id) + "_t" + std::to_string(t + 1),
                 ref ? 0.0 : s.buses[b].angle_min_rad, ref ? 0.0 : s.buses[b].angle_max_rad,
                 0.0);
  }
  for (int l = 0; l < NL; ++l)
    for (int dir = 0; dir < 2; ++dir)
      for (int t = 0; t < T; ++t) {
        const auto& ln = s.lines[l];
        int from = dir == 0 ? ln.from_bus : ln.to_bus;
        int to = dir == 0 ? ln.to_bus : ln.from_bus;
        lp.add_col("flow_" + std::to_string(from) + "_" + std::to_string(to) + "_t" +
                       std::to_string(t + 1),
                   -ln.thermal_limit_mw, ln.thermal_limit_mw, 0.0);
      }
  for (int p = 0; p < NP; ++p) {
    std::string suffix = "_p" + std::to_string(m.plant_buses[p]);
    for (int t = 0; t < T; ++t)
      lp.add_col("pch" + suffix + "_t" + std::to_string(t + 1), 0.0, kInf, 0.0);
    for (int t = 0; t < T; ++t)
      lp.add_col("pdch" + suffix + "_t" + std::to_string(t + 1), 0.0, kInf, 0.0);
    for (int t = 0; t < T; ++t)
      lp.add_col("soc" + suffix + "_t" + std::to_string(t + 1), 0.0,
                 s.storage.soc_max_mwh.value_or(kInf), 0.0);
  }
  for (int p = 0; p < NP; ++p) {
    double lb = 0.0, ub = kInf;
    if (o.fix_xi_mw) lb = ub = *o.fix_xi_mw;
    lp.add_col("xi_p" + std::to_string(m.plant_buses[p]), lb, ub, m.xi_price_eur_per_mw);
  }
  if (lp.num_cols() != idx.total())
    throw std::logic_error("variable layout mismatch");

  // objective constant: cost of all generators held at p_min plus their
  // emission charge at p_min
  double constant = 0.0;
  for (int g = 0; g < NG; ++g)
    constant += T * tau *
                (m.cost_curves[g].base_cost_eur_per_h +
                 eco.emission_cost_eur_per_mwh * s.generators[g].p_min_mw);
  lp.obj_constant = constant;

  // ---- rows ----
  // nodal balance (per bus, per step):
  //   sum_g segs + wind + shed - pch*zeta - sum outgoing flows
  //     = demand - sum_g p_min [- net import at the interconnector]
  for (int b = 0; b < NB; ++b) {
    int bus_id = s.buses[b].id;
    for (int t = 0; t < T; ++t) {
      double rhs = s.demand_mw(b, t);
      for (int g = 0; g < NG; ++g)
        if (s.generators[g].bus == bus_id) rhs -= s.generators[g].p_min_mw;
      if (o.interconnector_bus && *o.interconnector_bus == bus_id)
        rhs -= s.profiles.import_mw[t] - s.profiles.export_mw[t];
      int r = lp.add_row("bal_b" + std::to_string(bus_id) + "_t" + std::to_string(t + 1), 'E',
                         rhs);
      for (int g = 0; g < NG; ++g)
        if (s.generators[g].bus == bus_id)
          for (int k = 0; k < K; ++k) lp.add_entry(r, idx.seg(g, k, t), 1.0);
      lp.add_entry(r, idx.wind(b, t), 1.0);
      lp.add_entry(r, idx.shed(b, t), 1.0);
      for (int p = 0; p < NP; ++p)
        if (m.plant_buses[p] == bus_id) lp.add_entry(r, idx.pch(p, t), -1.0);
      for (int l = 0; l < NL; ++l) {
        if (s.lines[l].from_bus == bus_id) lp.add_entry(r, idx.flow(l, 0, t), -1.0);
        if (s.lines[l].to_bus == bus_id) lp.add_entry(r, idx.flow(l, 1, t), -1.0);
      }
    }
  }

  // directed flow definition: flow = B_eff * (angle_from - angle_to)
  for (int l = 0; l < NL; ++l) {
    const auto& ln = s.lines[l];
    double beff = ln.susceptance_pu * s.base_mva;  // MW per radian
    int bi = s.bus_index(ln.from_bus), bj = s.bus_index(ln.to_bus);
    for (int dir = 0; dir < 2; ++dir) {
      int from = dir == 0 ? bi : bj, to = dir == 0 ? bj : bi;
      for (int t = 0; t < T; ++t) {
        int r = lp.add_row("flowdef_l" + std::to_string(l + 1) + "_d" + std::to_string(dir) +
                               "_t" + std::to_string(t + 1),
                           'E', 0.0);
        lp.add_entry(r, idx.flow(l, dir, t), 1.0);
        lp.add_entry(r, idx.angle(from, t), -beff);
        lp.add_entry(r, idx.angle(to, t), beff);
      }
    }
  }

  // ramping between consecutive steps (segment sums; p_min cancels)
  for (int g = 0; g < NG; ++g) {
    const auto& gen = s.generators[g];
    for (int t = 1; t < T; ++t) {
      int up = lp.add_row("rampup_" + gen.id + "_t" + std::to_string(t + 1), 'L',
                          gen.ramp_up_mw_per_h * tau);
      int dn = lp.add_row("rampdn_" + gen.id + "_t" + std::to_string(t + 1), 'L',
                          gen.ramp_down_mw_per_h * tau);
      for (int k = 0; k < K; ++k) {
        lp.add_entry(up, idx.seg(g, k, t), 1.0);
        lp.add_entry(up, idx.seg(g, k, t - 1), -1.0);
        lp.add_entry(dn, idx.seg(g, k, t), -1.0);
        lp.add_entry(dn, idx.seg(g, k, t - 1), 1.0);
      }
    }
  }

  // storage dynamics, discharge cap, daily coverage
  for (int p = 0; p < NP; ++p) {
    const double eff = s.storage.round_trip_efficiency;
    for (int t = 0; t < T; ++t) {
      int r = lp.add_row("soc_p" + std::to_string(m.plant_buses[p]) + "_t" +
                             std::to_string(t + 1),
                         'E', t == 0 ? s.storage.soc_initial_mwh : 0.0);
      lp.add_entry(r, idx.soc(p, t), 1.0);
      if (t > 0) lp.add_entry(r, idx.soc(p, t - 1), -1.0);
      lp.add_entry(r, idx.pch(p, t), -eff * tau);
      lp.add_entry(r, idx.pdch(p, t), tau);
    }
    for (int t = 0; t < T; ++t) {
      int r = lp.add_row("dchcap_p" + std::to_string(m.plant_buses[p]) + "_t" +
                             std::to_string(t + 1),
                         'L', 0.0);
      lp.add_entry(r, idx.pdch(p, t), 1.0);
      lp.add_entry(r, idx.xi(p), -1.0);
    }
    if (o.charge_capped_by_xi)
      for (int t = 0; t < T; ++t) {
        int r = lp.add_row("chcap_p" + std::to_string(m.plant_buses[p]) + "_t" +
                               std::to_string(t + 1),
                           'L', 0.0);
        lp.add_entry(r, idx.pch(p, t), 1.0);
        lp.add_entry(r, idx.xi(p), -1.0);
      }
    if (s.storage.cyclic_soc) {
      int r = lp.add_row("soccyc_p" + std::to_string(m.plant_buses[p]), 'E',
                         s.storage.soc_initial_mwh);
      lp.add_entry(r, idx.soc(p, T - 1), 1.0);
    }
  }

  // daily hydrogen coverage over the day partition; emitted even with no
  // plant so an impossible demand is reported as infeasible by the solver
  if (!o.omit_h2_coverage && m.daily_h2_demand_mwh > 0.0) {
    int spd = s.profiles.steps_per_day;
    int days = (T + spd - 1) / spd;
    for (int dday = 0; dday < days; ++dday) {
      int r = lp.add_row("h2day_" + std::to_string(dday + 1), 'G', m.daily_h2_demand_mwh);
      for (int t = dday * spd; t < std::min(T, (dday + 1) * spd); ++t)
        for (int p = 0; p < NP; ++p) lp.add_entry(r, idx.pdch(p, t), 1.0);
    }
  }

  // SNSP cap, linear form:
  //   sum_b wind_b_t - limit * sum_p pch_p_t <= limit*(demand_t + export_t) - import_t
  for (int t = 0; t < T; ++t) {
    double demand_t = 0.0;
    for (int b = 0; b < NB; ++b) demand_t += s.demand_mw(b, t);
    double rhs = m.snsp_limit * (demand_t + s.profiles.export_mw[t]) - s.profiles.import_mw[t];
    int r = lp.add_row("snsp_t" + std::to_string(t + 1), 'L', rhs);
    for (int b = 0; b < NB; ++b)
      if (s.wind_capacity_at_bus(s.buses[b].id) > 0.0) lp.add_entry(r, idx.wind(b, t), 1.0);
    for (int p = 0; p < NP; ++p) lp.add_entry(r, idx.pch(p, t), -m.snsp_limit);
  }

  // wind closure at wind buses: wind + curtail {=,<=} availability * capacity
  for (int b = 0; b < NB; ++b) {
    double cap = s.wind_capacity_at_bus(s.buses[b].id);
    if (cap <= 0.0) continue;
    char sense = o.curtailment == CurtailmentMode::equality ? 'E' : 'L';
    for (int t = 0; t < T; ++t) {
      int r = lp.add_row("wclose_b" + std::to_string(s.buses[b].id) + "_t" +
                             std::to_string(t + 1),
                         sense, cap * s.profiles.wind_availability[t]);
      lp.add_entry(r, idx.wind(b, t), 1.0);
      lp.add_entry(r, idx.curtail(b, t), 1.0);
    }
  }

  return m;
}

// All decision-variable trajectories plus the objective decomposition,
// recomputed term by term from the trajectories themselves.
struct DispatchSolution {
  SolveStatus status = SolveStatus::iteration_limit;
  long iterations = 0;
  double max_primal_residual = 0.0;
  double lp_objective = 0.0;
  double daily_h2_demand_mwh = 0.0;  // the demand the model was built with

  std::vector<std::vector<double>> gen_mw;                            // [g][t]
  std::vector<std::vector<std::vector<double>>> gen_segment_mw;       // [g][k][t]
  std::vector<std::vector<double>> shed_mw, wind_mw, curtail_mw, angle_rad;  // [b][t]
  std::vector<std::array<std::vector<double>, 2>> flow_mw;            // [l][dir][t]
  struct PlantSeries {
    int bus = 0;
    double xi_mw = 0.0;
    std::vector<double> pch_mw, pdch_mw, soc_mwh;
  };
  std::vector<PlantSeries> plants;

  double cost_fuel_eur = 0.0, cost_emission_eur = 0.0, cost_shed_eur = 0.0,
         cost_curtail_eur = 0.0, cost_invest_eur = 0.0;
  double total_cost_eur() const {
    return cost_fuel_eur + cost_emission_eur + cost_shed_eur + cost_curtail_eur +
           cost_invest_eur;
  }
  double total_xi_mw() const {
    double v = 0.0;
    for (const auto& p : plants) v += p.xi_mw;
    return v;
  }
};

inline double discharged_energy_mwh(const DispatchSolution& sol, double tau) {
  double v = 0.0;
  for (const auto& p : sol.plants)
    for (double d : p.pdch_mw) v += d * tau;
  return v;
}

inline DispatchSolution extract(const DispatchModel& m, const LPSolution& lps,
                                const Scenario& s) {
  if (static_cast<int>(lps.x.size()) != m.lp.num_cols())
    throw std::invalid_argument("extract: solution size does not match program");
  const auto& idx = m.idx;
  const int T = idx.horizon, NG = idx.num_gens, NB = idx.num_buses, NL = idx.num_lines,
            K = idx.segments_per_gen, NP = idx.num_plants;
  const auto& x = lps.x;
  const double tau = s.profiles.step_hours;

  DispatchSolution sol;
  sol.status = lps.status;
  sol.iterations = lps.iterations;
  sol.max_primal_residual = lps.max_primal_residual;
  sol.lp_objective = lps.objective;
  sol.daily_h2_demand_mwh = m.daily_h2_demand_mwh;

  sol.gen_segment_mw.assign(NG, {});
  sol.gen_mw.assign(NG, std::vector<double>(T, 0.0));
  for (int g = 0; g < NG; ++g) {
    sol.gen_segment_mw[g].assign(K, std::vector<double>(T, 0.0));
    for (int t = 0; t < T; ++t) {
      double p = s.generators[g].p_min_mw;
      for (int k = 0; k < K; ++k) {
        double v = x[idx.seg(g, k, t)];
        sol.gen_segment_mw[g][k][t] = v;
        p += v;
      }
      sol.gen_mw[g][t] = p;
    }
  }
  auto take_bus = [&](auto col) {
    std::vector<std::vector<double>> out(NB, std::vector<double>(T, 0.0));
    for (int b = 0; b < NB; ++b)
      for (int t = 0; t < T; ++t) out[b][t] = x[col(b, t)];
    return out;
  };
  sol.shed_mw = take_bus([&](int b, int t) { return idx.shed(b, t); });
  sol.curtail_mw = take_bus([&](int b, int t) { return idx.curtail(b, t); });
  sol.wind_mw = take_bus([&](int b, int t) { return idx.wind(b, t); });
  sol.angle_rad = take_bus([&](int b, int t) { return idx.angle(b, t); });
  sol.flow_mw.assign(NL, {});
  for (int l = 0; l < NL; ++l)
    for (int dir = 0; dir < 2; ++dir) {
      sol.flow_mw[l][dir].assign(T, 0.0);
      for (int t = 0; t < T; ++t) sol.flow_mw[l][dir][t] = x[idx.flow(l, dir, t)];
    }
  sol.plants.resize(NP);
  for (int p = 0; p < NP; ++p) {
    auto& ps = sol.plants[p];
    ps.bus = m.plant_buses[p];
    ps.xi_mw = x[idx.xi(p)];
    ps.pch_mw.assign(T, 0.0);
    ps.pdch_mw.assign(T, 0.0);
    ps.soc_mwh.assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
      ps.pch_mw[t] = x[idx.pch(p, t)];
      ps.pdch_mw[t] = x[idx.pdch(p, t)];
      ps.soc_mwh[t] = x[idx.soc(p, t)];
    }
  }

  // objective decomposition from trajectories
  const auto& eco = s.economics;
  for (int g = 0; g < NG; ++g) {
    const auto& pw = m.cost_curves[g];
    for (int t = 0; t < T; ++t) {
      double c = pw.base_cost_eur_per_h;
      for (int k = 0; k < K; ++k)
        if (!pw.segments.empty())
          c += pw.segments[k].slope_eur_per_mwh * sol.gen_segment_mw[g][k][t];
      sol.cost_fuel_eur += tau * c;
      sol.cost_emission_eur += tau * eco.emission_cost_eur_per_mwh * sol.gen_mw[g][t];
    }
  }
  for (int b = 0; b < NB; ++b)
    for (int t = 0; t < T; ++t) {
      sol.cost_shed_eur += tau * eco.shed_cost_eur_per_mwh * sol.shed_mw[b][t];
      sol.cost_curtail_eur += tau * eco.curtail_cost_eur_per_mwh * sol.curtail_mw[b][t];
    }
  sol.cost_invest_eur = m.xi_price_eur_per_mw * sol.total_xi_mw();
  return sol;
}

inline DispatchSolution solve_dispatch(const DispatchModel& m, const Scenario& s,
                                       const SolverOptions& sopts = {}) {
  auto lps = solve(m.lp, sopts);
  if (lps.status != SolveStatus::optimal) {
    DispatchSolution sol;
    sol.status = lps.status;
    sol.iterations = lps.iterations;
    sol.lp_objective = lps.objective;
    return sol;
  }
  return extract(m, lps, s);
}

}  // namespace p2h
