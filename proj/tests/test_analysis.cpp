#include <catch2/catch_amalgamated.hpp>

#include "p2h/analysis.hpp"
#include "p2h/scenario_io.hpp"

using namespace p2h;
using Catch::Approx;

namespace {
const std::string kToy6 = std::string(P2H_DATA_DIR) + "/scenarios/toy6.json";
const std::string kIreland = std::string(P2H_DATA_DIR) + "/scenarios/ireland35.json";

FuelPlan dub_lhr_plan() {
  RouteSpec r;
  r.flights_per_day = 40;
  r.fuel_per_journey_kg = 2995;
  r.seats_per_aircraft = 165;
  r.co2_per_pax_leg_kg = 62.5;
  return hydrogen_equivalent(r);
}

AnalysisOptions fast_opts(int K = 2) {
  AnalysisOptions o;
  o.form.segments_per_generator = K;
  return o;
}
}  // namespace

TEST_CASE("kpi accounting and aviation CO2 attribution") {
  auto s = load_scenario(kToy6);
  auto plan = dub_lhr_plan();
  auto opts = fast_opts();

  auto model = build(s, opts.form);
  auto sol = solve_dispatch(model, s);
  REQUIRE(sol.status == SolveStatus::optimal);
  auto k = kpis(sol, s, plan, std::nullopt, opts);

  CHECK(k.daily_cost_eur ==
        Approx(k.daily_cost_fuel_eur + k.daily_cost_emission_eur + k.daily_cost_shed_eur +
               k.daily_cost_curtail_eur + k.daily_cost_invest_eur)
            .margin(1e-6));
  CHECK(k.daily_cost_eur == Approx(sol.lp_objective).margin(1e-6));  // 1-day horizon
  CHECK(k.daily_aviation_co2_t == 0.0);  // P2H case: route is on hydrogen
  CHECK(k.daily_discharged_mwh >= 120.0 - 1e-6);

  // benefit equals the hand-computed difference of two manual solves
  auto base_sol = solve_no_p2h_baseline(s, opts);
  auto kb = kpis(base_sol, s, plan, std::nullopt, opts);
  CHECK(kb.daily_aviation_co2_t == 412.5);  // jet-fuel case
  CHECK_FALSE(kb.h2_benefit_eur_per_mwh.has_value());
  double manual = (kb.daily_cost_eur - k.daily_cost_eur) / 120.0;
  REQUIRE(k.h2_benefit_eur_per_mwh.has_value());
  CHECK(*k.h2_benefit_eur_per_mwh == Approx(manual).margin(1e-9));
}

TEST_CASE("kpis refuse a failed solution") {
  auto s = load_scenario(kToy6);
  DispatchSolution bad;
  bad.status = SolveStatus::infeasible;
  CHECK_THROWS_AS(kpis(bad, s, dub_lhr_plan()), std::invalid_argument);
}

TEST_CASE("single-point location sweep equals a plain run") {
  auto s = load_scenario(kToy6);
  auto plan = dub_lhr_plan();
  auto opts = fast_opts();
  auto res = sweep_location(s, {3}, plan, opts);
  REQUIRE(res.points.size() == 1);
  REQUIRE(res.points[0].kpi.has_value());

  FormulationOptions fo = opts.form;
  fo.mode = PlantMode::single;
  fo.plant_buses = {3};
  auto sol = solve_dispatch(build(s, fo), s);
  auto k = kpis(sol, s, plan, res.baseline->daily_cost_eur, opts);
  CHECK(res.points[0].kpi->daily_cost_eur == Approx(k.daily_cost_eur).margin(1e-9));
  REQUIRE(k.h2_benefit_eur_per_mwh.has_value());
  CHECK(*res.points[0].kpi->h2_benefit_eur_per_mwh ==
        Approx(*k.h2_benefit_eur_per_mwh).margin(1e-9));
}

TEST_CASE("baseline is shared and identical across sweep runs") {
  auto s = load_scenario(kToy6);
  auto plan = dub_lhr_plan();
  auto opts = fast_opts();
  auto r1 = sweep_location(s, {1, 3}, plan, opts);
  auto r2 = sweep_location(s, {5}, plan, opts);
  REQUIRE(r1.baseline.has_value());
  REQUIRE(r2.baseline.has_value());
  CHECK(r1.baseline->daily_cost_eur == r2.baseline->daily_cost_eur);  // bitwise
  CHECK(r1.baseline->daily_curtailment_gwh == r2.baseline->daily_curtailment_gwh);
}

TEST_CASE("worker-parallel sweep assembles the same ordered results") {
  auto s = load_scenario(kToy6);
  auto plan = dub_lhr_plan();
  auto seq = fast_opts(), par = fast_opts();
  par.workers = 3;
  auto r1 = sweep_location(s, {1, 2, 3, 4, 5, 6}, plan, seq);
  auto r2 = sweep_location(s, {1, 2, 3, 4, 5, 6}, plan, par);
  REQUIRE(r1.points.size() == r2.points.size());
  for (size_t i = 0; i < r1.points.size(); ++i) {
    CHECK(r1.points[i].label == r2.points[i].label);
    CHECK(r1.points[i].kpi->daily_cost_eur == r2.points[i].kpi->daily_cost_eur);
  }
}

TEST_CASE("snsp sweep: cost non-increasing, producible H2 non-decreasing, plateau") {
  auto s = load_scenario(kToy6);
  auto plan = dub_lhr_plan();
  auto opts = fast_opts();
  std::vector<double> levels{0.55, 0.60, 0.65, 0.70, 0.75, 0.80};

  auto fixed = sweep_snsp(s, levels, SnspSweepMode::fixed_demand, plan, opts);
  REQUIRE(fixed.points.size() == levels.size());
  for (size_t i = 1; i < fixed.points.size(); ++i) {
    REQUIRE(fixed.points[i].kpi.has_value());
    double prev = fixed.points[i - 1].kpi->daily_cost_eur;
    double cur = fixed.points[i].kpi->daily_cost_eur;
    CHECK(cur <= prev + 1e-6 * (1.0 + std::abs(prev)));
  }

  auto maxh2 = sweep_snsp(s, levels, SnspSweepMode::max_h2, plan, opts);
  for (size_t i = 1; i < maxh2.points.size(); ++i) {
    double prev = maxh2.points[i - 1].producible_h2_mwh_per_day;
    double cur = maxh2.points[i].producible_h2_mwh_per_day;
    CHECK(cur >= prev - 1e-6 * (1.0 + std::abs(prev)));
  }
  // production saturates beyond some level on this instance
  size_t n = maxh2.points.size();
  CHECK(maxh2.points[n - 1].producible_h2_mwh_per_day ==
        Approx(maxh2.points[n - 2].producible_h2_mwh_per_day).margin(1e-6));
  // the obligation-free capability exceeds the daily demand
  CHECK(maxh2.points[n - 1].producible_h2_mwh_per_day > 120.0);

  CHECK_THROWS_AS(sweep_snsp(s, {0.0}, SnspSweepMode::fixed_demand, plan, opts),
                  std::invalid_argument);
}

TEST_CASE("pair sweep: no self-pairs, dominance over singles") {
  auto s = load_scenario(kToy6);
  auto plan = dub_lhr_plan();
  auto opts = fast_opts();
  std::vector<int> all{1, 2, 3, 4, 5, 6};

  auto singles = sweep_location(s, all, plan, opts);
  auto pairs = sweep_pairs(s, all, PairObjective::cost, plan, opts);
  REQUIRE(pairs.points.size() == 15);  // C(6,2), (b,b) excluded by construction

  auto single_cost = [&](int bus) {
    for (const auto& pt : singles.points)
      if (pt.buses[0] == bus) return pt.kpi->daily_cost_eur;
    FAIL("missing single");
    return 0.0;
  };
  for (const auto& pt : pairs.points) {
    REQUIRE(pt.buses.size() == 2);
    CHECK(pt.buses[0] != pt.buses[1]);
    REQUIRE(pt.kpi.has_value());
    double limit = std::min(single_cost(pt.buses[0]), single_cost(pt.buses[1]));
    CHECK(pt.kpi->daily_cost_eur <= limit + 1e-6 * (1.0 + std::abs(limit)));
  }
  CHECK_THROWS_AS(sweep_pairs(s, {3}, PairObjective::cost, plan, opts),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_pairs(s, {3, 3}, PairObjective::cost, plan, opts),
                  std::invalid_argument);
}

TEST_CASE("ireland35 sweeps show the wind-siting effect") {
  auto s = load_scenario(kIreland).with_horizon(24);
  auto plan = dub_lhr_plan();
  AnalysisOptions opts;  // default K=10
  opts.form.segments_per_generator = 10;

  // location: wind-hosting buses reduce curtailment more than the rest
  std::vector<int> probe{2, 12, 14, 15, 16, 25, 27, 29, 30, 33, 34, 35};
  auto res = sweep_location(s, probe, plan, opts);
  double wind_sum = 0, wind_n = 0, other_sum = 0, other_n = 0;
  for (const auto& pt : res.points) {
    REQUIRE(pt.status == SolveStatus::optimal);
    bool is_wind = s.wind_capacity_at_bus(pt.buses[0]) > 0.0;
    (is_wind ? wind_sum : other_sum) += pt.curtailment_reduction_gwh;
    (is_wind ? wind_n : other_n) += 1;
  }
  CHECK(wind_sum / wind_n > other_sum / other_n);

  // xi is flat under the literal discharge-only cap, and varies once the
  // physical charge cap is enabled
  for (const auto& pt : res.points)
    CHECK(pt.kpi->xi_mw == Approx(2353.1 / 24.0).margin(1e-6));
  auto capped = opts;
  capped.form.charge_capped_by_xi = true;
  auto res_cap = sweep_location(s, {15, 35}, plan, capped);
  REQUIRE(res_cap.points[0].kpi.has_value());
  REQUIRE(res_cap.points[1].kpi.has_value());
  CHECK(std::abs(res_cap.points[0].kpi->xi_mw - res_cap.points[1].kpi->xi_mw) > 10.0);

  // pairs: with weak spur buses in the mix, the best pair for curtailment
  // relief includes at least one wind-hosting bus
  auto pres = sweep_pairs(s, {15, 27, 33, 34, 35}, PairObjective::curtailment, plan, opts);
  REQUIRE(pres.best_index >= 0);
  const auto& best = pres.points[pres.best_index];
  bool has_wind_bus = s.wind_capacity_at_bus(best.buses[0]) > 0.0 ||
                      s.wind_capacity_at_bus(best.buses[1]) > 0.0;
  CHECK(has_wind_bus);
}
