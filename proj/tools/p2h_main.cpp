// p2h: size and schedule a power-to-hydrogen plant inside a multi-period
// DC-OPF. Subcommands: aviation, dispatch, sweep, export.
//
// Exit codes: 0 success, 2 usage/data error, 3 infeasible, 4 solver failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "p2h/analysis.hpp"
#include "p2h/audit.hpp"
#include "p2h/mps.hpp"
#include "p2h/outputs.hpp"
#include "p2h/scenario_io.hpp"

using namespace p2h;
namespace fs = std::filesystem;
using clk = std::chrono::steady_clock;

namespace {

constexpr int kExitOk = 0, kExitUsage = 2, kExitInfeasible = 3, kExitSolver = 4;

#ifndef P2H_DATA_DIR
#define P2H_DATA_DIR ""
#endif

std::string data_dir() {
  if (const char* env = std::getenv("P2H_DATA_DIR")) return env;
  return P2H_DATA_DIR;
}

std::string resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  auto bundled = fs::path(data_dir()) / "scenarios" / (arg + ".json");
  if (fs::exists(bundled)) return bundled.string();
  throw ParseError("scenario not found: " + arg + " (no such file, and no bundled scenario '" +
                   arg + "')");
}

std::string default_routes_file() {
  return (fs::path(data_dir()) / "routes" / "top20_routes.tsv").string();
}

int env_workers() {
  if (const char* env = std::getenv("P2H_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

// "1..35", "3,7,12" or a single bus
std::vector<int> parse_bus_list(const std::string& spec) {
  std::vector<int> out;
  auto range = spec.find("..");
  if (range != std::string::npos) {
    int lo = std::stoi(spec.substr(0, range));
    int hi = std::stoi(spec.substr(range + 2));
    if (hi < lo) throw ParseError("bad bus range: " + spec);
    for (int b = lo; b <= hi; ++b) out.push_back(b);
    return out;
  }
  std::istringstream is(spec);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw ParseError("empty bus list: " + spec);
  return out;
}

// "0.55:0.05:0.80" (start:step:stop, inclusive) or a comma list
std::vector<double> parse_levels(const std::string& spec) {
  std::vector<double> out;
  if (std::count(spec.begin(), spec.end(), ':') == 2) {
    auto a = spec.find(':'), b = spec.rfind(':');
    double start = std::stod(spec.substr(0, a));
    double step = std::stod(spec.substr(a + 1, b - a - 1));
    double stop = std::stod(spec.substr(b + 1));
    if (step <= 0 || stop < start) throw ParseError("bad level range: " + spec);
    for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::istringstream is(spec);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw ParseError("empty level list: " + spec);
  return out;
}

struct ModelFlags {
  std::string scenario;
  std::optional<int> p2h_bus;
  std::vector<int> p2h_pair;
  bool no_p2h = false;
  std::optional<double> fix_xi;
  std::optional<double> h2_demand;
  std::optional<double> snsp;
  int horizon = 0;  // 0 = full
  int segments = 10;
  bool pch_cap = false;
  std::string curtailment_mode = "equality";
  std::optional<int> interconnector_bus;

  void attach(CLI::App* cmd, bool with_plant_choice = true) {
    cmd->add_option("--scenario", scenario, "scenario file path or bundled name")
        ->required();
    if (with_plant_choice) {
      cmd->add_option("--p2h-bus", p2h_bus, "host the single P2H plant at this bus");
      cmd->add_option("--p2h-pair", p2h_pair, "host two P2H plants at these buses")
          ->expected(2);
      cmd->add_flag("--no-p2h", no_p2h, "no plant anywhere (the reference case)");
      cmd->add_option("--fix-xi", fix_xi, "fix the plant capacity to this many MW");
    }
    cmd->add_option("--h2-demand", h2_demand, "override daily H2 demand (MWh/day)");
    cmd->add_option("--snsp", snsp, "override the SNSP limit (fraction)");
    cmd->add_option("--horizon", horizon, "truncate to the first N steps");
    cmd->add_option("--segments", segments, "piecewise cost segments per generator")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--pch-cap", pch_cap, "also cap charging at the plant capacity");
    cmd->add_option("--curtailment-mode", curtailment_mode,
                    "wind closure: equality (default) or inequality (literal)")
        ->check(CLI::IsMember({"equality", "inequality"}));
    cmd->add_option("--interconnector-bus", interconnector_bus,
                    "inject net import into this bus's balance");
  }

  Scenario load() const {
    auto s = load_scenario(resolve_scenario(scenario));
    if (horizon > 0 && horizon < s.profiles.horizon()) s = s.with_horizon(horizon);
    return s;
  }

  FormulationOptions options() const {
    FormulationOptions o;
    o.segments_per_generator = segments;
    o.charge_capped_by_xi = pch_cap;
    o.curtailment =
        curtailment_mode == "equality" ? CurtailmentMode::equality : CurtailmentMode::inequality;
    o.snsp_override = snsp;
    o.h2_demand_override_mwh = h2_demand;
    o.fix_xi_mw = fix_xi;
    o.interconnector_bus = interconnector_bus;
    if (no_p2h) {
      o.mode = PlantMode::none;
    } else if (!p2h_pair.empty()) {
      o.mode = PlantMode::pair;
      o.plant_buses = p2h_pair;
    } else if (p2h_bus) {
      o.mode = PlantMode::single;
      o.plant_buses = {*p2h_bus};
    } else {
      o.mode = PlantMode::from_scenario;
    }
    return o;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    if (p2h_bus) j["p2h_bus"] = *p2h_bus;
    if (!p2h_pair.empty()) j["p2h_pair"] = p2h_pair;
    j["no_p2h"] = no_p2h;
    if (fix_xi) j["fix_xi_mw"] = *fix_xi;
    if (h2_demand) j["h2_demand_mwh"] = *h2_demand;
    if (snsp) j["snsp"] = *snsp;
    j["horizon"] = horizon;
    j["segments"] = segments;
    j["pch_cap"] = pch_cap;
    j["curtailment_mode"] = curtailment_mode;
    if (interconnector_bus) j["interconnector_bus"] = *interconnector_bus;
    return j;
  }
};

void write_manifest(const std::string& dir, const std::string& command,
                    const ModelFlags& flags, nlohmann::ordered_json timings,
                    nlohmann::ordered_json solver_stats) {
  nlohmann::ordered_json j;
  j["tool"] = "p2h";
  j["version"] = kToolVersion;
  j["command"] = command;
  auto path = resolve_scenario(flags.scenario);
  j["scenario_path"] = path;
  j["scenario_hash"] = file_content_hash(path);
  j["options"] = flags.to_json();
  j["timings_ms"] = std::move(timings);
  if (!solver_stats.is_null()) j["solver"] = std::move(solver_stats);
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir);
  out << j.dump(2) << "\n";
}

FuelPlan route_plan(const std::string& routes_file, const std::string& route_code,
                    ConversionMode mode) {
  auto routes = load_routes(routes_file);
  const auto* rec = find_route(routes, route_code);
  if (!rec) {
    std::ostringstream os;
    os << "unknown route '" << route_code << "'; available routes:";
    for (const auto& r : routes) os << " " << r.code;
    throw ParseError(os.str());
  }
  return hydrogen_equivalent(to_route_spec(*rec, mode), mode);
}

int cmd_aviation(const std::string& route_code, const std::string& routes_file,
                 const std::string& mode_name, double jet_price, double carbon_offset,
                 std::optional<double> flights, std::optional<double> fuel_per_journey,
                 std::optional<double> seats, std::optional<double> co2_per_pax,
                 const std::string& out_dir) {
  ConversionMode mode =
      mode_name == "exact" ? ConversionMode::exact : ConversionMode::paper;
  RouteSpec spec;
  std::string source;
  if (flights || fuel_per_journey || seats || co2_per_pax) {
    if (!(flights && fuel_per_journey && seats && co2_per_pax))
      throw ParseError(
          "custom route needs all of --flights-per-day --fuel-per-journey --seats "
          "--co2-per-pax");
    spec.flights_per_day = *flights;
    spec.fuel_per_journey_kg = *fuel_per_journey;
    spec.seats_per_aircraft = *seats;
    spec.co2_per_pax_leg_kg = *co2_per_pax;
    source = "custom route";
  } else {
    auto routes = load_routes(routes_file);
    const auto* rec = find_route(routes, route_code);
    if (!rec) {
      std::ostringstream os;
      os << "unknown route '" << route_code << "'; available routes:";
      for (const auto& r : routes) os << " " << r.code;
      throw ParseError(os.str());
    }
    spec = to_route_spec(*rec, mode);
    source = "route " + rec->code;
  }
  auto plan = hydrogen_equivalent(spec, mode);
  FuelPriceInputs base{jet_price, 0.0}, offset{jet_price, carbon_offset};

  std::printf("%s (%s conversion)\n", source.c_str(), mode_name.c_str());
  std::printf("  flights per day              %10.2f\n", spec.flights_per_day);
  std::printf("  fuel per journey             %10.2f kg\n", spec.fuel_per_journey_kg);
  std::printf("  daily jet fuel burn          %10.1f kg/day\n", plan.daily_jet_fuel_kg);
  std::printf("  daily aviation CO2           %10.2f t/day\n", plan.daily_co2_t);
  std::printf("  daily H2 mass                %10.1f kg/day\n", plan.daily_h2_mass_kg);
  std::printf("  daily H2 electricity         %10.2f MWh/day\n", plan.daily_h2_energy_mwh);
  if (plan.daily_h2_energy_mwh > 0.0) {
    std::printf("  equivalent jet fuel price    %10.3f EUR/MWh (no carbon offset)\n",
                equivalent_jet_fuel_price(plan, base));
    std::printf("  equivalent jet fuel price    %10.3f EUR/MWh (offset %.2f EUR/kg)\n",
                equivalent_jet_fuel_price(plan, offset), carbon_offset);
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    nlohmann::ordered_json j;
    j["source"] = source;
    j["conversion_mode"] = mode_name;
    j["flights_per_day"] = spec.flights_per_day;
    j["daily_jet_fuel_kg"] = plan.daily_jet_fuel_kg;
    j["daily_co2_t"] = plan.daily_co2_t;
    j["daily_h2_mass_kg"] = plan.daily_h2_mass_kg;
    j["daily_h2_energy_mwh"] = plan.daily_h2_energy_mwh;
    if (plan.daily_h2_energy_mwh > 0.0) {
      j["equivalent_price_eur_per_mwh_no_offset"] = equivalent_jet_fuel_price(plan, base);
      j["equivalent_price_eur_per_mwh_with_offset"] = equivalent_jet_fuel_price(plan, offset);
    }
    std::ofstream out(out_dir + "/aviation.json");
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_dispatch(const ModelFlags& flags, const std::string& route_code,
                 const std::string& routes_file, const std::string& out_dir) {
  auto t0 = clk::now();
  auto s = flags.load();
  auto t1 = clk::now();
  auto model = build(s, flags.options());
  auto t2 = clk::now();
  auto lps = solve(model.lp);
  auto t3 = clk::now();

  fs::create_directories(out_dir);
  nlohmann::ordered_json timings;
  timings["load"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  timings["build"] = std::chrono::duration<double, std::milli>(t2 - t1).count();
  timings["solve"] = std::chrono::duration<double, std::milli>(t3 - t2).count();
  nlohmann::ordered_json stats;
  stats["status"] = to_string(lps.status);
  stats["iterations"] = lps.iterations;
  stats["objective_eur"] = lps.objective;
  stats["max_primal_residual"] = lps.max_primal_residual;
  stats["max_dual_residual"] = lps.max_dual_residual;
  stats["rows"] = model.lp.num_rows();
  stats["cols"] = model.lp.num_cols();
  write_manifest(out_dir, "dispatch", flags, timings, stats);

  if (lps.status != SolveStatus::optimal) {
    std::fprintf(stderr, "dispatch: %s (%s)\n", to_string(lps.status), lps.message.c_str());
    return lps.status == SolveStatus::infeasible ? kExitInfeasible : kExitSolver;
  }

  auto sol = extract(model, lps, s);
  auto rep = audit(s, model, sol);
  auto plan = route_plan(routes_file, route_code, ConversionMode::paper);
  AnalysisOptions aopts;
  aopts.form = flags.options();
  auto k = kpis(sol, s, plan, std::nullopt, aopts);

  std::ofstream(out_dir + "/kpis.json") << kpi_to_json(k).dump(2) << "\n";
  std::ofstream(out_dir + "/kpis.txt") << kpi_to_text(k);
  std::ofstream(out_dir + "/audit.txt") << rep.to_string();
  write_trajectories(out_dir, s, sol);

  std::printf("%s", kpi_to_text(k).c_str());
  std::printf("solved %d rows x %d cols in %ld iterations; outputs in %s\n",
              model.lp.num_rows(), model.lp.num_cols(), lps.iterations, out_dir.c_str());
  if (!rep.within(1e-6))
    std::fprintf(stderr, "warning: audit residuals above tolerance\n%s", rep.to_string().c_str());
  return kExitOk;
}

int cmd_sweep(const std::string& kind, const ModelFlags& flags, const std::string& bus_spec,
              const std::string& level_spec, const std::string& snsp_mode,
              const std::string& objective, int workers, bool strict,
              const std::string& route_code, const std::string& routes_file,
              const std::string& out_dir) {
  auto t0 = clk::now();
  auto s = flags.load();
  auto plan = route_plan(routes_file, route_code, ConversionMode::paper);
  AnalysisOptions opts;
  opts.form = flags.options();
  opts.workers = workers;

  SweepResult res;
  if (kind == "location") {
    std::vector<int> buses;
    if (bus_spec.empty())
      for (const auto& b : s.buses) buses.push_back(b.id);
    else
      buses = parse_bus_list(bus_spec);
    res = sweep_location(s, buses, plan, opts);
  } else if (kind == "snsp") {
    auto levels = parse_levels(level_spec.empty() ? "0.55:0.05:0.80" : level_spec);
    auto mode = snsp_mode == "max-h2" ? SnspSweepMode::max_h2 : SnspSweepMode::fixed_demand;
    res = sweep_snsp(s, levels, mode, plan, opts);
  } else if (kind == "pairs") {
    std::vector<int> buses;
    if (bus_spec.empty())
      for (const auto& b : s.buses) buses.push_back(b.id);
    else
      buses = parse_bus_list(bus_spec);
    auto obj = objective == "cost" ? PairObjective::cost : PairObjective::curtailment;
    res = sweep_pairs(s, buses, obj, plan, opts);
  } else {
    throw ParseError("unknown sweep kind: " + kind);
  }
  auto t1 = clk::now();

  fs::create_directories(out_dir);
  nlohmann::ordered_json timings;
  timings["total"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  write_manifest(out_dir, "sweep " + kind, flags, timings, nullptr);
  write_sweep_tsv(out_dir + "/sweep_" + kind + ".tsv", res);
  std::ofstream(out_dir + "/sweep_" + kind + ".json") << sweep_to_json(res).dump(2) << "\n";

  int failed = 0;
  bool any_infeasible = false;
  for (const auto& pt : res.points)
    if (pt.status != SolveStatus::optimal) {
      ++failed;
      any_infeasible |= pt.status == SolveStatus::infeasible;
    }
  std::printf("sweep %s: %zu points, %d failed; outputs in %s\n", kind.c_str(),
              res.points.size(), failed, out_dir.c_str());
  if (res.best_index >= 0)
    std::printf("best point: %s\n", res.points[res.best_index].label.c_str());
  if (failed > 0 && strict) return any_infeasible ? kExitInfeasible : kExitSolver;
  return kExitOk;
}

int cmd_export(const ModelFlags& flags, const std::string& out_path) {
  auto s = flags.load();
  auto model = build(s, flags.options());
  try {
    write_mps(model.lp, out_path);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what());  // unwritable path is a usage error
  }
  std::printf("wrote %s (%d rows, %d cols, %d entries) and %s.names\n", out_path.c_str(),
              model.lp.num_rows(), model.lp.num_cols(), model.lp.num_entries(),
              out_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-to-hydrogen plant sizing and scheduling in a multi-period DC-OPF"};
  app.require_subcommand(1);

  // aviation
  auto* av = app.add_subcommand("aviation", "convert a flight route into H2 demand and prices");
  std::string av_route = "DUB-LHR", av_routes_file = default_routes_file(),
              av_mode = "paper", av_out;
  double av_jet_price = 0.5, av_offset = 0.36;
  std::optional<double> av_flights, av_fuel, av_seats, av_co2;
  av->add_option("--route", av_route, "route code from the bundled table (default DUB-LHR)");
  av->add_option("--routes-file", av_routes_file, "route table (TSV)");
  av->add_option("--mode", av_mode, "conversion mode: paper (2.8 ratio) or exact (FHV)")
      ->check(CLI::IsMember({"paper", "exact"}));
  av->add_option("--jet-price", av_jet_price, "jet fuel price, EUR/kg");
  av->add_option("--carbon-offset", av_offset, "carbon offsetting cost, EUR/kg");
  av->add_option("--flights-per-day", av_flights, "custom route: flights per day");
  av->add_option("--fuel-per-journey", av_fuel, "custom route: fuel burn per journey, kg");
  av->add_option("--seats", av_seats, "custom route: average seats per aircraft");
  av->add_option("--co2-per-pax", av_co2, "custom route: CO2 per passenger-leg, kg");
  av->add_option("--out-dir", av_out, "also write aviation.json here");

  // dispatch
  auto* dp = app.add_subcommand("dispatch", "solve one dispatch/sizing case");
  ModelFlags dp_flags;
  dp_flags.attach(dp);
  std::string dp_route = "DUB-LHR", dp_routes_file = default_routes_file(),
              dp_out = "p2h-run";
  dp->add_option("--route", dp_route, "aviation route for the CO2/benefit context");
  dp->add_option("--routes-file", dp_routes_file, "route table (TSV)");
  dp->add_option("--out-dir", dp_out, "output directory");

  // sweep
  auto* sw = app.add_subcommand("sweep", "run a sensitivity study");
  std::string sw_kind, sw_buses, sw_levels, sw_snsp_mode = "fixed", sw_obj = "curtailment",
              sw_route = "DUB-LHR", sw_routes_file = default_routes_file(),
              sw_out = "p2h-sweep";
  int sw_workers = env_workers();
  bool sw_strict = false;
  ModelFlags sw_flags;
  sw->add_option("kind", sw_kind, "location | snsp | pairs")
      ->required()
      ->check(CLI::IsMember({"location", "snsp", "pairs"}));
  sw_flags.attach(sw);
  sw->add_option("--buses", sw_buses, "bus list: '1..35' or '3,7,12' (default: all)");
  sw->add_option("--levels", sw_levels, "SNSP levels: 'a:step:b' or comma list");
  sw->add_option("--snsp-mode", sw_snsp_mode, "snsp sweep mode: fixed | max-h2")
      ->check(CLI::IsMember({"fixed", "max-h2"}));
  sw->add_option("--objective", sw_obj, "pairs objective: curtailment | cost")
      ->check(CLI::IsMember({"curtailment", "cost"}));
  sw->add_option("--workers", sw_workers, "parallel sweep workers (env P2H_WORKERS)");
  sw->add_flag("--strict", sw_strict, "nonzero exit if any point fails");
  sw->add_option("--route", sw_route, "aviation route for the CO2/benefit context");
  sw->add_option("--routes-file", sw_routes_file, "route table (TSV)");
  sw->add_option("--out-dir", sw_out, "output directory");

  // export
  auto* ex = app.add_subcommand("export", "write the model in MPS interchange format");
  ModelFlags ex_flags;
  ex_flags.attach(ex);
  std::string ex_out = "model.mps";
  ex->add_option("--out", ex_out, "output MPS path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (av->parsed())
      return cmd_aviation(av_route, av_routes_file, av_mode, av_jet_price, av_offset,
                          av_flights, av_fuel, av_seats, av_co2, av_out);
    if (dp->parsed()) return cmd_dispatch(dp_flags, dp_route, dp_routes_file, dp_out);
    if (sw->parsed())
      return cmd_sweep(sw_kind, sw_flags, sw_buses, sw_levels, sw_snsp_mode, sw_obj,
                       sw_workers, sw_strict, sw_route, sw_routes_file, sw_out);
    if (ex->parsed()) return cmd_export(ex_flags, ex_out);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitUsage;
}
