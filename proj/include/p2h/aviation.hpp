#pragma once

// Converts flight-route statistics into daily jet-fuel burn, CO2 emissions,
// hydrogen mass/energy demand and the equivalent jet-fuel price benchmark.

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace p2h {

// "paper" keeps the rounded 2.8 mass ratio and integer flights/day,
// "exact" uses the heating-value quotient and fractional flights/day.
enum class ConversionMode { paper, exact };

struct RouteSpec {
  double flights_per_day = 0.0;        // N_f
  double fuel_per_journey_kg = 0.0;    // gamma
  double seats_per_aircraft = 0.0;     // N_s
  double co2_per_pax_leg_kg = 0.0;
  double fhv_jet_mj_per_kg = 43.1;
  double fhv_h2_mj_per_kg = 120.0;
  double electrolysis_kwh_per_kg = 55.0;

  void check() const {
    auto pos = [](double v, const char* name) {
      if (!(v > 0.0))
        throw std::invalid_argument(std::string("RouteSpec: ") + name + " must be > 0");
    };
    // flights_per_day may be zero (idle route); everything else strictly positive
    if (flights_per_day < 0.0) throw std::invalid_argument("RouteSpec: flights_per_day must be >= 0");
    pos(fuel_per_journey_kg, "fuel_per_journey_kg");
    pos(seats_per_aircraft, "seats_per_aircraft");
    pos(co2_per_pax_leg_kg, "co2_per_pax_leg_kg");
    pos(fhv_jet_mj_per_kg, "fhv_jet_mj_per_kg");
    pos(fhv_h2_mj_per_kg, "fhv_h2_mj_per_kg");
    pos(electrolysis_kwh_per_kg, "electrolysis_kwh_per_kg");
    if (!(fhv_h2_mj_per_kg > fhv_jet_mj_per_kg))
      throw std::invalid_argument("RouteSpec: hydrogen heating value must exceed jet fuel's");
  }
};

struct FuelPlan {
  double daily_jet_fuel_kg = 0.0;
  double daily_co2_t = 0.0;
  double daily_h2_mass_kg = 0.0;
  double daily_h2_energy_mwh = 0.0;
};

struct FuelPriceInputs {
  double jet_fuel_eur_per_kg = 0.0;       // P_f
  double carbon_offset_eur_per_kg = 0.0;  // P_cos

  void check() const {
    if (jet_fuel_eur_per_kg < 0.0 || carbon_offset_eur_per_kg < 0.0)
      throw std::invalid_argument("FuelPriceInputs: prices must be >= 0");
  }
};

inline double daily_fuel_burn_kg(const RouteSpec& route) {
  route.check();
  return route.flights_per_day * route.fuel_per_journey_kg;
}

inline double daily_co2_tonnes(const RouteSpec& route) {
  route.check();
  return route.co2_per_pax_leg_kg * route.seats_per_aircraft * route.flights_per_day / 1000.0;
}

// Electricity needed to electrolyze a given hydrogen mass.
inline double h2_energy_mwh(double h2_mass_kg, const RouteSpec& route) {
  return h2_mass_kg * route.electrolysis_kwh_per_kg / 1000.0;
}

inline double jet_to_h2_mass_ratio(const RouteSpec& route, ConversionMode mode) {
  return mode == ConversionMode::paper ? 1.0 / 2.8
                                       : route.fhv_jet_mj_per_kg / route.fhv_h2_mj_per_kg;
}

inline FuelPlan hydrogen_equivalent(const RouteSpec& route,
                                    ConversionMode mode = ConversionMode::paper) {
  route.check();
  FuelPlan plan;
  plan.daily_jet_fuel_kg = daily_fuel_burn_kg(route);
  plan.daily_co2_t = daily_co2_tonnes(route);
  plan.daily_h2_mass_kg = plan.daily_jet_fuel_kg * jet_to_h2_mass_ratio(route, mode);
  plan.daily_h2_energy_mwh = h2_energy_mwh(plan.daily_h2_mass_kg, route);
  return plan;
}

// Eur/MWh an airline would pay for jet fuel (plus carbon offset) per MWh of
// the replacing hydrogen electricity.
inline double equivalent_jet_fuel_price(const FuelPlan& plan, const FuelPriceInputs& prices) {
  prices.check();
  if (!(plan.daily_h2_energy_mwh > 0.0))
    throw std::domain_error("equivalent_jet_fuel_price: daily H2 energy demand is zero");
  return plan.daily_jet_fuel_kg *
         (prices.jet_fuel_eur_per_kg + prices.carbon_offset_eur_per_kg) /
         plan.daily_h2_energy_mwh;
}

// One row of the bundled route table.
struct RouteRecord {
  std::string code;  // e.g. "DUB-LHR"
  double passengers_millions = 0.0;
  double distance_km = 0.0;
  double flights_per_year = 0.0;
  double co2_per_pax_leg_kg = 0.0;
  double duration_min = 0.0;
  double avg_seats = 0.0;
  double fuel_per_journey_kg = 0.0;
  double otp_pct = 0.0;
};

// Tab-separated route table, one record per route, header row first.
inline std::vector<RouteRecord> load_routes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open route table: " + path);
  std::vector<RouteRecord> out;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty route table: " + path);
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, '\t')) fields.push_back(field);
    if (fields.size() != 9)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 9 tab-separated fields, got " +
                               std::to_string(fields.size()));
    RouteRecord r;
    r.code = fields[0];
    try {
      r.passengers_millions = std::stod(fields[1]);
      r.distance_km = std::stod(fields[2]);
      r.flights_per_year = std::stod(fields[3]);
      r.co2_per_pax_leg_kg = std::stod(fields[4]);
      r.duration_min = std::stod(fields[5]);
      r.avg_seats = std::stod(fields[6]);
      r.fuel_per_journey_kg = std::stod(fields[7]);
      r.otp_pct = std::stod(fields[8]);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad numeric field");
    }
    out.push_back(r);
  }
  return out;
}

inline const RouteRecord* find_route(const std::vector<RouteRecord>& routes,
                                     const std::string& code) {
  for (const auto& r : routes)
    if (r.code == code) return &r;
  return nullptr;
}

// Paper mode rounds flights/day up to a whole number of journeys.
inline RouteSpec to_route_spec(const RouteRecord& rec,
                               ConversionMode mode = ConversionMode::paper) {
  RouteSpec spec;
  double per_day = rec.flights_per_year / 365.0;
  spec.flights_per_day = mode == ConversionMode::paper ? std::ceil(per_day) : per_day;
  spec.fuel_per_journey_kg = rec.fuel_per_journey_kg;
  spec.seats_per_aircraft = rec.avg_seats;
  spec.co2_per_pax_leg_kg = rec.co2_per_pax_leg_kg;
  return spec;
}

}  // namespace p2h
