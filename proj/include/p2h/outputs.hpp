#pragma once

// Machine- and human-readable run outputs: KPI summaries, trajectory tables,
// sweep tables and the run manifest. Every table starts with a header row
// that names the units. Result files are byte-identical across reruns of the
// same scenario/options/version; only the manifest carries timings.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "p2h/analysis.hpp"
#include "p2h/audit.hpp"

namespace p2h {

inline constexpr const char* kToolVersion = "0.1.0";

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  return out;
}

}  // namespace detail

// FNV-1a over the file bytes; identifies the scenario content in manifests.
inline std::string file_content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash file: " + path);
  unsigned long long h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", h);
  return buf;
}

inline nlohmann::ordered_json kpi_to_json(const KpiReport& k) {
  nlohmann::ordered_json j;
  j["days"] = k.days;
  j["daily_cost_eur"] = k.daily_cost_eur;
  j["daily_cost_fuel_eur"] = k.daily_cost_fuel_eur;
  j["daily_cost_emission_eur"] = k.daily_cost_emission_eur;
  j["daily_cost_shed_eur"] = k.daily_cost_shed_eur;
  j["daily_cost_curtail_eur"] = k.daily_cost_curtail_eur;
  j["daily_cost_invest_eur"] = k.daily_cost_invest_eur;
  j["daily_curtailment_gwh"] = k.daily_curtailment_gwh;
  j["daily_power_co2_t"] = k.daily_power_co2_t;
  j["daily_aviation_co2_t"] = k.daily_aviation_co2_t;
  j["daily_shed_mwh"] = k.daily_shed_mwh;
  j["daily_discharged_mwh"] = k.daily_discharged_mwh;
  j["daily_h2_demand_mwh"] = k.daily_h2_demand_mwh;
  j["p2h_capacity_mw"] = k.xi_mw;
  j["p2h_capacity_per_bus_mw"] = nlohmann::ordered_json::array();
  for (const auto& [bus, xi] : k.xi_per_bus)
    j["p2h_capacity_per_bus_mw"].push_back({{"bus", bus}, {"xi_mw", xi}});
  if (k.h2_benefit_eur_per_mwh)
    j["h2_benefit_eur_per_mwh"] = *k.h2_benefit_eur_per_mwh;
  else
    j["h2_benefit_eur_per_mwh"] = nullptr;
  return j;
}

inline std::string kpi_to_text(const KpiReport& k) {
  std::ostringstream os;
  auto line = [&os](const char* label, double v, const char* unit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-28s %14.3f %s\n", label, v, unit);
    os << buf;
  };
  os << "daily KPI report (" << k.days << "-day horizon average)\n";
  line("total cost", k.daily_cost_eur / 1e6, "MEUR/day");
  line("  fuel", k.daily_cost_fuel_eur / 1e6, "MEUR/day");
  line("  emission", k.daily_cost_emission_eur / 1e6, "MEUR/day");
  line("  load shedding", k.daily_cost_shed_eur / 1e6, "MEUR/day");
  line("  wind curtailment", k.daily_cost_curtail_eur / 1e6, "MEUR/day");
  line("  P2H investment", k.daily_cost_invest_eur / 1e6, "MEUR/day");
  line("wind curtailment", k.daily_curtailment_gwh, "GWh/day");
  line("power-system CO2", k.daily_power_co2_t, "t/day");
  line("aviation CO2", k.daily_aviation_co2_t, "t/day");
  line("load shed", k.daily_shed_mwh, "MWh/day");
  line("H2 discharged", k.daily_discharged_mwh, "MWh/day");
  line("H2 demand", k.daily_h2_demand_mwh, "MWh/day");
  line("P2H capacity xi", k.xi_mw, "MW");
  if (k.h2_benefit_eur_per_mwh) line("H2 benefit", *k.h2_benefit_eur_per_mwh, "EUR/MWh");
  return os.str();
}

inline void write_trajectories(const std::string& dir, const Scenario& s,
                               const DispatchSolution& sol) {
  using detail::fmt;
  {
    auto out = detail::open_out(dir + "/generation.tsv");
    out << "t_hour";
    for (const auto& g : s.generators) out << "\t" << g.id << "_mw";
    out << "\n";
    int T = sol.gen_mw.empty() ? 0 : static_cast<int>(sol.gen_mw[0].size());
    for (int t = 0; t < T; ++t) {
      out << (t + 1);
      for (const auto& g : sol.gen_mw) out << "\t" << fmt(g[t]);
      out << "\n";
    }
  }
  {
    auto out = detail::open_out(dir + "/buses.tsv");
    out << "t_hour\tbus\tdemand_mw\tshed_mw\twind_mw\tcurtail_mw\tangle_rad\n";
    for (size_t b = 0; b < s.buses.size(); ++b)
      for (size_t t = 0; t < sol.shed_mw[b].size(); ++t)
        out << (t + 1) << "\t" << s.buses[b].id << "\t"
            << fmt(s.demand_mw(static_cast<int>(b), static_cast<int>(t))) << "\t"
            << fmt(sol.shed_mw[b][t]) << "\t" << fmt(sol.wind_mw[b][t]) << "\t"
            << fmt(sol.curtail_mw[b][t]) << "\t" << fmt(sol.angle_rad[b][t]) << "\n";
  }
  {
    auto out = detail::open_out(dir + "/flows.tsv");
    out << "t_hour\tfrom_bus\tto_bus\tflow_mw\tthermal_limit_mw\n";
    for (size_t l = 0; l < s.lines.size(); ++l)
      for (size_t t = 0; t < sol.flow_mw[l][0].size(); ++t)
        out << (t + 1) << "\t" << s.lines[l].from_bus << "\t" << s.lines[l].to_bus << "\t"
            << fmt(sol.flow_mw[l][0][t]) << "\t" << fmt(s.lines[l].thermal_limit_mw) << "\n";
  }
  {
    auto out = detail::open_out(dir + "/storage.tsv");
    out << "t_hour\tplant_bus\tpch_mw\tpdch_mw\tsoc_mwh\n";
    for (const auto& p : sol.plants)
      for (size_t t = 0; t < p.pch_mw.size(); ++t)
        out << (t + 1) << "\t" << p.bus << "\t" << fmt(p.pch_mw[t]) << "\t"
            << fmt(p.pdch_mw[t]) << "\t" << fmt(p.soc_mwh[t]) << "\n";
  }
}

inline void write_sweep_tsv(const std::string& path, const SweepResult& res) {
  auto out = detail::open_out(path);
  using detail::fmt;
  switch (res.kind) {
    case SweepKind::location:
      out << "bus\tstatus\txi_mw\tdaily_cost_eur\tbenefit_eur_per_mwh\t"
             "curtailment_reduction_gwh\tdaily_curtailment_gwh\n";
      break;
    case SweepKind::snsp:
      out << "snsp_level\tstatus\tdaily_cost_eur\tproducible_h2_mwh_per_day\t"
             "daily_curtailment_gwh\txi_mw\n";
      break;
    case SweepKind::pairs:
      out << "bus_a\tbus_b\tstatus\txi_a_mw\txi_b_mw\tdaily_cost_eur\t"
             "benefit_eur_per_mwh\tcurtailment_reduction_gwh\n";
      break;
  }
  for (const auto& pt : res.points) {
    const auto* k = pt.kpi ? &*pt.kpi : nullptr;
    auto opt = [&](double v) { return k ? fmt(v) : std::string("-"); };
    switch (res.kind) {
      case SweepKind::location:
        out << pt.buses[0] << "\t" << to_string(pt.status) << "\t"
            << opt(k ? k->xi_mw : 0) << "\t" << opt(k ? k->daily_cost_eur : 0) << "\t"
            << (k && k->h2_benefit_eur_per_mwh ? fmt(*k->h2_benefit_eur_per_mwh)
                                               : std::string("-"))
            << "\t" << opt(pt.curtailment_reduction_gwh) << "\t"
            << opt(k ? k->daily_curtailment_gwh : 0) << "\n";
        break;
      case SweepKind::snsp:
        out << fmt(pt.snsp_level) << "\t" << to_string(pt.status) << "\t"
            << opt(k ? k->daily_cost_eur : 0) << "\t" << opt(pt.producible_h2_mwh_per_day)
            << "\t" << opt(k ? k->daily_curtailment_gwh : 0) << "\t"
            << opt(k ? k->xi_mw : 0) << "\n";
        break;
      case SweepKind::pairs: {
        double xa = 0, xb = 0;
        if (k && k->xi_per_bus.size() == 2) {
          xa = k->xi_per_bus[0].second;
          xb = k->xi_per_bus[1].second;
        }
        out << pt.buses[0] << "\t" << pt.buses[1] << "\t" << to_string(pt.status) << "\t"
            << opt(xa) << "\t" << opt(xb) << "\t" << opt(k ? k->daily_cost_eur : 0) << "\t"
            << (k && k->h2_benefit_eur_per_mwh ? fmt(*k->h2_benefit_eur_per_mwh)
                                               : std::string("-"))
            << "\t" << opt(pt.curtailment_reduction_gwh) << "\n";
        break;
      }
    }
  }
}

inline nlohmann::ordered_json sweep_to_json(const SweepResult& res) {
  nlohmann::ordered_json j;
  j["kind"] = res.kind == SweepKind::location ? "location"
              : res.kind == SweepKind::snsp  ? "snsp"
                                             : "pairs";
  j["mode"] = res.mode;
  if (res.baseline) j["baseline"] = kpi_to_json(*res.baseline);
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& pt : res.points) {
    nlohmann::ordered_json pj;
    pj["label"] = pt.label;
    if (!pt.buses.empty()) pj["buses"] = pt.buses;
    if (!std::isnan(pt.snsp_level)) pj["snsp_level"] = pt.snsp_level;
    pj["status"] = to_string(pt.status);
    if (pt.kpi) {
      pj["kpi"] = kpi_to_json(*pt.kpi);
      pj["curtailment_reduction_gwh"] = pt.curtailment_reduction_gwh;
      pj["producible_h2_mwh_per_day"] = pt.producible_h2_mwh_per_day;
    }
    j["points"].push_back(pj);
  }
  j["best_index"] = res.best_index;
  if (res.best_index >= 0) j["best_label"] = res.points[res.best_index].label;
  return j;
}

}  // namespace p2h
