#pragma once

// Scenario schema: network, generators, wind, profiles and economics for one
// multi-period dispatch problem instance.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace p2h {

struct Bus {
  int id = 0;
  double peak_demand_mw = 0.0;
  double angle_min_rad = -0.5;
  double angle_max_rad = 0.5;
  bool p2h_site = false;  // zeta flag: hosts the P2H charging load
};

struct Line {
  int from_bus = 0;
  int to_bus = 0;
  double susceptance_pu = 0.0;
  double thermal_limit_mw = 0.0;
};

struct Generator {
  std::string id;
  int bus = 0;
  double cost_a_eur_per_mw2h = 0.0;  // quadratic coefficient
  double cost_b_eur_per_mwh = 0.0;
  double cost_c_eur_per_h = 0.0;
  double p_min_mw = 0.0;
  double p_max_mw = 0.0;
  double ramp_up_mw_per_h = 0.0;
  double ramp_down_mw_per_h = 0.0;
  double emission_t_per_mwh = 0.0;
};

struct WindFarm {
  int bus = 0;
  double capacity_mw = 0.0;
};

struct Profiles {
  double step_hours = 1.0;  // tau, uniform across the horizon
  int steps_per_day = 24;
  std::vector<double> demand_factor;      // d_t, fraction of peak
  std::vector<double> wind_availability;  // w_t in [0,1]
  std::vector<double> import_mw;          // exogenous, SNSP numerator
  std::vector<double> export_mw;          // exogenous, SNSP denominator

  int horizon() const { return static_cast<int>(demand_factor.size()); }
  int num_days() const {
    return steps_per_day > 0 ? (horizon() + steps_per_day - 1) / steps_per_day : 0;
  }
};

struct Economics {
  double emission_cost_eur_per_mwh = 0.0;   // lambda_e
  double shed_cost_eur_per_mwh = 0.0;       // lambda_D
  double curtail_cost_eur_per_mwh = 0.0;    // lambda_W
  double p2h_capital_cost_eur_per_mw = 0.0; // capital figure behind Xi
  double p2h_amortization_years = 20.0;
  double snsp_limit = 1.0;
  double daily_h2_demand_mwh = 0.0;         // D_H2
};

struct StorageParams {
  double soc_initial_mwh = 0.0;
  std::optional<double> soc_max_mwh;  // unbounded when absent
  double round_trip_efficiency = 1.0; // applied on charge
  bool cyclic_soc = false;            // force SOC back to initial at horizon end
};

struct Scenario {
  std::string name;
  std::string description;
  double base_mva = 100.0;
  int reference_bus = 0;
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  std::vector<WindFarm> wind;
  Profiles profiles;
  Economics economics;
  StorageParams storage;
  std::vector<std::string> notes;

  int bus_index(int bus_id) const {
    for (size_t i = 0; i < buses.size(); ++i)
      if (buses[i].id == bus_id) return static_cast<int>(i);
    return -1;
  }

  // Per-horizon amortized investment price Xi (capital spread over plant life).
  double p2h_invest_cost_eur_per_mw_horizon() const {
    double years = economics.p2h_amortization_years;
    if (years <= 0.0) return economics.p2h_capital_cost_eur_per_mw;
    double per_day = economics.p2h_capital_cost_eur_per_mw / (years * 365.0);
    return per_day * profiles.num_days();
  }

  double demand_mw(int bus_idx, int t) const {
    return buses[bus_idx].peak_demand_mw * profiles.demand_factor[t];
  }

  double wind_capacity_at_bus(int bus_id) const {
    for (const auto& w : wind)
      if (w.bus == bus_id) return w.capacity_mw;
    return 0.0;
  }

  // First `steps` profile entries only; used for reduced-horizon runs.
  Scenario with_horizon(int steps) const {
    if (steps <= 0 || steps > profiles.horizon())
      throw std::invalid_argument("with_horizon: steps out of range");
    Scenario s = *this;
    auto cut = [steps](std::vector<double>& v) {
      if (!v.empty()) v.resize(static_cast<size_t>(steps));
    };
    cut(s.profiles.demand_factor);
    cut(s.profiles.wind_availability);
    cut(s.profiles.import_mw);
    cut(s.profiles.export_mw);
    return s;
  }
};

inline double peak_demand_total_mw(const Scenario& s) {
  double sum = 0.0;
  for (const auto& b : s.buses) sum += b.peak_demand_mw;
  return sum;
}

// One entry per violated invariant; empty means the scenario is sound.
inline std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> v;
  auto err = [&v](const std::string& m) { v.push_back(m); };

  std::map<int, int> bus_count;
  for (const auto& b : s.buses) bus_count[b.id]++;
  for (const auto& [id, n] : bus_count)
    if (n > 1) err("bus " + std::to_string(id) + ": duplicate id");
  for (const auto& b : s.buses) {
    if (b.peak_demand_mw < 0) err("bus " + std::to_string(b.id) + ": negative peak demand");
    if (b.angle_min_rad > b.angle_max_rad)
      err("bus " + std::to_string(b.id) + ": angle_min > angle_max");
  }
  if (s.buses.empty()) err("scenario has no buses");
  if (!s.buses.empty() && s.bus_index(s.reference_bus) < 0)
    err("reference bus " + std::to_string(s.reference_bus) + ": unknown bus");

  for (size_t i = 0; i < s.lines.size(); ++i) {
    const auto& l = s.lines[i];
    std::string tag = "line " + std::to_string(i + 1);
    if (l.from_bus == l.to_bus) err(tag + ": from_bus equals to_bus");
    if (s.bus_index(l.from_bus) < 0) err(tag + ": unknown bus " + std::to_string(l.from_bus));
    if (s.bus_index(l.to_bus) < 0) err(tag + ": unknown bus " + std::to_string(l.to_bus));
    if (l.susceptance_pu == 0.0) err(tag + ": zero susceptance");
    if (!(l.thermal_limit_mw > 0.0)) err(tag + ": thermal limit must be > 0");
  }

  for (const auto& g : s.generators) {
    std::string tag = "generator " + g.id;
    if (s.bus_index(g.bus) < 0) err(tag + ": unknown bus " + std::to_string(g.bus));
    if (g.p_min_mw < 0 || g.p_min_mw > g.p_max_mw) err(tag + ": need 0 <= p_min <= p_max");
    if (g.cost_a_eur_per_mw2h < 0) err(tag + ": negative quadratic cost coefficient");
    if (!(g.ramp_up_mw_per_h > 0) || !(g.ramp_down_mw_per_h > 0))
      err(tag + ": ramp rates must be > 0");
    if (g.emission_t_per_mwh < 0) err(tag + ": negative emission rate");
  }
  {
    std::map<std::string, int> gid;
    for (const auto& g : s.generators) gid[g.id]++;
    for (const auto& [id, n] : gid)
      if (n > 1) err("generator " + id + ": duplicate id");
  }

  std::map<int, int> wind_count;
  for (const auto& w : s.wind) {
    std::string tag = "wind farm at bus " + std::to_string(w.bus);
    if (s.bus_index(w.bus) < 0) err(tag + ": unknown bus");
    if (!(w.capacity_mw > 0)) err(tag + ": capacity must be > 0");
    if (++wind_count[w.bus] == 2) err(tag + ": duplicate wind bus");
  }

  const auto& p = s.profiles;
  int T = p.horizon();
  if (T == 0) err("profiles: empty horizon");
  if (!(p.step_hours > 0)) err("profiles: step_hours must be > 0");
  if (p.steps_per_day <= 0) err("profiles: steps_per_day must be > 0");
  else if (T % p.steps_per_day != 0)
    err("profiles: horizon " + std::to_string(T) + " not a multiple of steps_per_day " +
        std::to_string(p.steps_per_day));
  auto len_check = [&](const std::vector<double>& series, const char* name) {
    if (static_cast<int>(series.size()) != T)
      err(std::string("profiles: ") + name + " length " + std::to_string(series.size()) +
          " != horizon " + std::to_string(T));
  };
  len_check(p.wind_availability, "wind_availability");
  len_check(p.import_mw, "import_mw");
  len_check(p.export_mw, "export_mw");
  for (double d : p.demand_factor)
    if (d < 0) { err("profiles: negative demand factor"); break; }
  for (double w : p.wind_availability)
    if (w < 0 || w > 1) { err("profiles: wind availability outside [0,1]"); break; }
  for (double x : p.import_mw)
    if (x < 0) { err("profiles: negative import"); break; }
  for (double x : p.export_mw)
    if (x < 0) { err("profiles: negative export"); break; }

  const auto& e = s.economics;
  if (e.emission_cost_eur_per_mwh < 0) err("economics: negative emission cost");
  if (e.shed_cost_eur_per_mwh < 0) err("economics: negative shed cost");
  if (e.curtail_cost_eur_per_mwh < 0) err("economics: negative curtailment cost");
  if (e.p2h_capital_cost_eur_per_mw < 0) err("economics: negative P2H capital cost");
  if (e.daily_h2_demand_mwh < 0) err("economics: negative daily H2 demand");
  if (!(e.snsp_limit > 0.0) || e.snsp_limit > 1.0) err("economics: SNSP limit outside (0,1]");

  if (s.storage.soc_initial_mwh < 0) err("storage: negative initial SOC");
  if (s.storage.soc_max_mwh && *s.storage.soc_max_mwh < s.storage.soc_initial_mwh)
    err("storage: soc_max below initial SOC");
  if (!(s.storage.round_trip_efficiency > 0) || s.storage.round_trip_efficiency > 1.0)
    err("storage: round trip efficiency outside (0,1]");

  // DC flow needs one connected component containing the reference bus
  if (!s.buses.empty() && s.bus_index(s.reference_bus) >= 0) {
    std::map<int, std::vector<int>> adj;
    for (const auto& l : s.lines) {
      adj[l.from_bus].push_back(l.to_bus);
      adj[l.to_bus].push_back(l.from_bus);
    }
    std::map<int, bool> seen;
    std::queue<int> q;
    q.push(s.reference_bus);
    seen[s.reference_bus] = true;
    while (!q.empty()) {
      int b = q.front();
      q.pop();
      for (int nb : adj[b])
        if (!seen[nb]) {
          seen[nb] = true;
          q.push(nb);
        }
    }
    for (const auto& b : s.buses)
      if (!seen[b.id]) err("bus " + std::to_string(b.id) + ": unreachable from reference");
  }

  return v;
}

}  // namespace p2h
