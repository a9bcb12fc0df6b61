#pragma once

// Scenario files: a single JSON document with sections `buses`, `lines`,
// `generators`, `wind`, `profiles`, `economics` (plus optional `storage`).
// Profiles are inlined arrays or a reference to a sibling tab-separated
// file. See docs/scenario-format.md.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "p2h/scenario.hpp"

namespace p2h {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

using json = nlohmann::ordered_json;

inline double num_at(const json& j, const std::string& section, const std::string& key,
                     std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ParseError("scenario: missing field '" + key + "' in " + section);
  }
  if (!j[key].is_number())
    throw ParseError("scenario: field '" + key + "' in " + section + " must be a number");
  return j[key].get<double>();
}

inline std::vector<double> series_at(const json& j, const std::string& key, bool required) {
  if (!j.contains(key)) {
    if (!required) return {};
    throw ParseError("scenario: profiles missing series '" + key + "'");
  }
  if (!j[key].is_array())
    throw ParseError("scenario: profiles series '" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(j[key].size());
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ParseError("scenario: non-numeric entry in profiles series '" + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

// sibling profile table: t, demand_factor, wind_availability, import_mw, export_mw
inline void load_profile_table(const std::string& path, Profiles& p) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty profile file: " + path);
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    double t, d, w, imp, exp;
    if (!(ls >> t >> d >> w >> imp >> exp))
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected 5 numeric columns (t, demand_factor, wind_availability, "
                       "import_mw, export_mw)");
    if (static_cast<size_t>(t) != p.demand_factor.size() + 1)
      throw ParseError(path + ":" + std::to_string(lineno) + ": time index out of order");
    p.demand_factor.push_back(d);
    p.wind_availability.push_back(w);
    p.import_mw.push_back(imp);
    p.export_mw.push_back(exp);
  }
}

}  // namespace detail

inline Scenario scenario_from_json(const detail::json& j, const std::string& base_dir) {
  using detail::num_at;
  Scenario s;
  s.name = j.value("name", "");
  s.description = j.value("description", "");
  s.base_mva = j.value("base_mva", 100.0);
  if (!j.contains("reference_bus"))
    throw ParseError("scenario: missing field 'reference_bus'");
  s.reference_bus = j["reference_bus"].get<int>();
  if (j.contains("notes"))
    for (const auto& n : j["notes"]) s.notes.push_back(n.get<std::string>());

  if (!j.contains("buses") || !j["buses"].is_array())
    throw ParseError("scenario: missing section 'buses'");
  for (const auto& bj : j["buses"]) {
    Bus b;
    b.id = static_cast<int>(num_at(bj, "buses", "id"));
    b.peak_demand_mw = num_at(bj, "buses", "peak_demand_mw", 0.0);
    b.angle_min_rad = num_at(bj, "buses", "angle_min_rad", -0.5);
    b.angle_max_rad = num_at(bj, "buses", "angle_max_rad", 0.5);
    b.p2h_site = bj.value("p2h_site", false);
    s.buses.push_back(b);
  }

  if (j.contains("lines"))
    for (const auto& lj : j["lines"]) {
      Line l;
      l.from_bus = static_cast<int>(num_at(lj, "lines", "from_bus"));
      l.to_bus = static_cast<int>(num_at(lj, "lines", "to_bus"));
      l.susceptance_pu = num_at(lj, "lines", "susceptance_pu");
      l.thermal_limit_mw = num_at(lj, "lines", "thermal_limit_mw");
      s.lines.push_back(l);
    }

  if (j.contains("generators"))
    for (const auto& gj : j["generators"]) {
      Generator g;
      if (!gj.contains("id")) throw ParseError("scenario: generator missing 'id'");
      g.id = gj["id"].get<std::string>();
      g.bus = static_cast<int>(num_at(gj, "generator " + g.id, "bus"));
      g.cost_a_eur_per_mw2h = num_at(gj, "generator " + g.id, "cost_a_eur_per_mw2h", 0.0);
      g.cost_b_eur_per_mwh = num_at(gj, "generator " + g.id, "cost_b_eur_per_mwh", 0.0);
      g.cost_c_eur_per_h = num_at(gj, "generator " + g.id, "cost_c_eur_per_h", 0.0);
      g.p_min_mw = num_at(gj, "generator " + g.id, "p_min_mw");
      g.p_max_mw = num_at(gj, "generator " + g.id, "p_max_mw");
      g.ramp_up_mw_per_h = num_at(gj, "generator " + g.id, "ramp_up_mw_per_h");
      g.ramp_down_mw_per_h = num_at(gj, "generator " + g.id, "ramp_down_mw_per_h");
      g.emission_t_per_mwh = num_at(gj, "generator " + g.id, "emission_t_per_mwh", 0.0);
      s.generators.push_back(g);
    }

  if (j.contains("wind"))
    for (const auto& wj : j["wind"]) {
      WindFarm w;
      w.bus = static_cast<int>(num_at(wj, "wind", "bus"));
      w.capacity_mw = num_at(wj, "wind", "capacity_mw");
      s.wind.push_back(w);
    }

  if (!j.contains("profiles")) throw ParseError("scenario: missing section 'profiles'");
  {
    const auto& pj = j["profiles"];
    s.profiles.step_hours = num_at(pj, "profiles", "step_hours", 1.0);
    s.profiles.steps_per_day = static_cast<int>(num_at(pj, "profiles", "steps_per_day", 24.0));
    if (pj.contains("file")) {
      auto rel = pj["file"].get<std::string>();
      detail::load_profile_table((std::filesystem::path(base_dir) / rel).string(), s.profiles);
    } else {
      s.profiles.demand_factor = detail::series_at(pj, "demand_factor", true);
      s.profiles.wind_availability = detail::series_at(pj, "wind_availability", true);
      s.profiles.import_mw = detail::series_at(pj, "import_mw", false);
      s.profiles.export_mw = detail::series_at(pj, "export_mw", false);
      size_t T = s.profiles.demand_factor.size();
      if (s.profiles.import_mw.empty()) s.profiles.import_mw.assign(T, 0.0);
      if (s.profiles.export_mw.empty()) s.profiles.export_mw.assign(T, 0.0);
    }
  }

  if (!j.contains("economics")) throw ParseError("scenario: missing section 'economics'");
  {
    const auto& ej = j["economics"];
    auto& e = s.economics;
    e.emission_cost_eur_per_mwh = detail::num_at(ej, "economics", "emission_cost_eur_per_mwh");
    e.shed_cost_eur_per_mwh = detail::num_at(ej, "economics", "shed_cost_eur_per_mwh");
    e.curtail_cost_eur_per_mwh = detail::num_at(ej, "economics", "curtail_cost_eur_per_mwh");
    e.p2h_capital_cost_eur_per_mw =
        detail::num_at(ej, "economics", "p2h_capital_cost_eur_per_mw");
    e.p2h_amortization_years = detail::num_at(ej, "economics", "p2h_amortization_years", 20.0);
    e.snsp_limit = detail::num_at(ej, "economics", "snsp_limit");
    e.daily_h2_demand_mwh = detail::num_at(ej, "economics", "daily_h2_demand_mwh");
  }

  if (j.contains("storage")) {
    const auto& tj = j["storage"];
    s.storage.soc_initial_mwh = detail::num_at(tj, "storage", "soc_initial_mwh", 0.0);
    if (tj.contains("soc_max_mwh") && !tj["soc_max_mwh"].is_null())
      s.storage.soc_max_mwh = tj["soc_max_mwh"].get<double>();
    s.storage.round_trip_efficiency =
        detail::num_at(tj, "storage", "round_trip_efficiency", 1.0);
    s.storage.cyclic_soc = tj.value("cyclic_soc", false);
  }

  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  detail::json j;
  try {
    j = detail::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("scenario parse error in " + path + ": " + e.what());
  }
  auto s = scenario_from_json(j, std::filesystem::path(path).parent_path().string());
  auto violations = validate(s);
  if (!violations.empty()) {
    std::string msg = "scenario " + path + " failed validation:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ValidationError(msg);
  }
  return s;
}

// Canonical form: profiles inlined, fixed key order.
inline detail::json scenario_to_json(const Scenario& s) {
  using detail::json;
  json j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  if (!s.notes.empty()) j["notes"] = s.notes;
  j["base_mva"] = s.base_mva;
  j["reference_bus"] = s.reference_bus;
  j["buses"] = json::array();
  for (const auto& b : s.buses) {
    json bj;
    bj["id"] = b.id;
    bj["peak_demand_mw"] = b.peak_demand_mw;
    bj["angle_min_rad"] = b.angle_min_rad;
    bj["angle_max_rad"] = b.angle_max_rad;
    if (b.p2h_site) bj["p2h_site"] = true;
    j["buses"].push_back(bj);
  }
  j["lines"] = json::array();
  for (const auto& l : s.lines) {
    json lj;
    lj["from_bus"] = l.from_bus;
    lj["to_bus"] = l.to_bus;
    lj["susceptance_pu"] = l.susceptance_pu;
    lj["thermal_limit_mw"] = l.thermal_limit_mw;
    j["lines"].push_back(lj);
  }
  j["generators"] = json::array();
  for (const auto& g : s.generators) {
    json gj;
    gj["id"] = g.id;
    gj["bus"] = g.bus;
    gj["cost_a_eur_per_mw2h"] = g.cost_a_eur_per_mw2h;
    gj["cost_b_eur_per_mwh"] = g.cost_b_eur_per_mwh;
    gj["cost_c_eur_per_h"] = g.cost_c_eur_per_h;
    gj["p_min_mw"] = g.p_min_mw;
    gj["p_max_mw"] = g.p_max_mw;
    gj["ramp_up_mw_per_h"] = g.ramp_up_mw_per_h;
    gj["ramp_down_mw_per_h"] = g.ramp_down_mw_per_h;
    gj["emission_t_per_mwh"] = g.emission_t_per_mwh;
    j["generators"].push_back(gj);
  }
  j["wind"] = json::array();
  for (const auto& w : s.wind) {
    json wj;
    wj["bus"] = w.bus;
    wj["capacity_mw"] = w.capacity_mw;
    j["wind"].push_back(wj);
  }
  json pj;
  pj["step_hours"] = s.profiles.step_hours;
  pj["steps_per_day"] = s.profiles.steps_per_day;
  pj["demand_factor"] = s.profiles.demand_factor;
  pj["wind_availability"] = s.profiles.wind_availability;
  pj["import_mw"] = s.profiles.import_mw;
  pj["export_mw"] = s.profiles.export_mw;
  j["profiles"] = pj;
  json ej;
  ej["emission_cost_eur_per_mwh"] = s.economics.emission_cost_eur_per_mwh;
  ej["shed_cost_eur_per_mwh"] = s.economics.shed_cost_eur_per_mwh;
  ej["curtail_cost_eur_per_mwh"] = s.economics.curtail_cost_eur_per_mwh;
  ej["p2h_capital_cost_eur_per_mw"] = s.economics.p2h_capital_cost_eur_per_mw;
  ej["p2h_amortization_years"] = s.economics.p2h_amortization_years;
  ej["snsp_limit"] = s.economics.snsp_limit;
  ej["daily_h2_demand_mwh"] = s.economics.daily_h2_demand_mwh;
  j["economics"] = ej;
  json tj;
  tj["soc_initial_mwh"] = s.storage.soc_initial_mwh;
  if (s.storage.soc_max_mwh) tj["soc_max_mwh"] = *s.storage.soc_max_mwh;
  tj["round_trip_efficiency"] = s.storage.round_trip_efficiency;
  tj["cyclic_soc"] = s.storage.cyclic_soc;
  j["storage"] = tj;
  return j;
}

inline void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << scenario_to_json(s).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace p2h
