#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "p2h/scenario_io.hpp"

using namespace p2h;
using Catch::Approx;

namespace {
const std::string kToy6 = std::string(P2H_DATA_DIR) + "/scenarios/toy6.json";

std::string temp_file(const std::string& stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}
}  // namespace

TEST_CASE("toy6 loads and validates") {
  auto s = load_scenario(kToy6);
  CHECK(s.name == "toy6");
  CHECK(s.buses.size() == 6);
  CHECK(s.lines.size() == 7);
  CHECK(s.generators.size() == 3);
  CHECK(s.wind.size() == 2);
  CHECK(s.profiles.horizon() == 24);
  CHECK(s.profiles.num_days() == 1);
  CHECK(validate(s).empty());
  CHECK(peak_demand_total_mw(s) == Approx(170.0));
  // amortized investment price: daily share of the capital over plant life
  CHECK(s.p2h_invest_cost_eur_per_mw_horizon() ==
        Approx(236000.0 / (20.0 * 365.0)).epsilon(1e-12));
}

TEST_CASE("peak demand of an empty bus set") {
  Scenario s;
  CHECK(peak_demand_total_mw(s) == 0.0);
}

TEST_CASE("ireland35 matches the published table shapes") {
  auto s = load_scenario(std::string(P2H_DATA_DIR) + "/scenarios/ireland35.json");
  CHECK(validate(s).empty());
  CHECK(s.buses.size() == 35);
  CHECK(s.generators.size() == 32);
  CHECK(s.wind.size() == 7);
  // published total is "4200 MW" (rounded); the table itself sums to 4202
  double wind_total = 0;
  for (const auto& w : s.wind) wind_total += w.capacity_mw;
  CHECK(wind_total == Approx(4200.0).margin(2.0));
  CHECK(peak_demand_total_mw(s) == Approx(5400.0).margin(1.0));
  // buses with no demand row in the table are explicit zeros
  for (int b : {8, 14, 18, 24, 34}) {
    int bi = s.bus_index(b);
    REQUIRE(bi >= 0);
    CHECK(s.buses[bi].peak_demand_mw == 0.0);
  }
  // base case hosts the plant at bus 22
  CHECK(s.buses[s.bus_index(22)].p2h_site);
  CHECK(s.economics.snsp_limit == 0.70);
  CHECK(s.economics.daily_h2_demand_mwh == 2353.1);
  CHECK(s.economics.p2h_capital_cost_eur_per_mw == 236000.0);
  CHECK(s.profiles.horizon() == 240);
  CHECK(s.profiles.num_days() == 10);
}

TEST_CASE("validation failures are reported by name") {
  auto s = load_scenario(kToy6);

  SECTION("duplicate bus id") {
    s.buses.push_back(s.buses[0]);
    auto v = validate(s);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("duplicate") != std::string::npos);
  }
  SECTION("generator on unknown bus") {
    s.generators[1].id = "g5";
    s.generators[1].bus = 99;
    auto v = validate(s);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0] == "generator g5: unknown bus 99");
  }
  SECTION("disconnected bus") {
    s.lines.erase(s.lines.begin() + 6);  // drop 3-6
    s.lines.erase(s.lines.begin() + 4);  // drop 5-6
    bool found = false;
    for (const auto& msg : validate(s))
      if (msg == "bus 6: unreachable from reference") found = true;
    CHECK(found);
  }
  SECTION("snsp outside (0,1]") {
    s.economics.snsp_limit = 1.2;
    CHECK_FALSE(validate(s).empty());
  }
  SECTION("horizon not a day multiple") {
    s.profiles.steps_per_day = 7;
    CHECK_FALSE(validate(s).empty());
  }
  SECTION("negative quadratic coefficient rejected") {
    s.generators[0].cost_a_eur_per_mw2h = -0.01;
    CHECK_FALSE(validate(s).empty());
  }
}

TEST_CASE("loading a scenario with violations throws") {
  auto s = load_scenario(kToy6);
  s.buses.push_back(s.buses[0]);
  auto path = temp_file("p2h_dup_bus.json");
  save_scenario(s, path);
  CHECK_THROWS_AS(load_scenario(path), ValidationError);
}

TEST_CASE("parse errors carry context") {
  auto path = temp_file("p2h_broken.json");
  {
    std::ofstream out(path);
    out << "{ \"name\": \"x\", ";
  }
  CHECK_THROWS_AS(load_scenario(path), ParseError);
  {
    std::ofstream out(path);
    out << "{ \"name\": \"x\", \"reference_bus\": 1, \"buses\": [{\"peak_demand_mw\": 1}] }";
  }
  try {
    load_scenario(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'id'") != std::string::npos);
  }
}

TEST_CASE("save/load round-trip is the identity on the canonical form") {
  auto s = load_scenario(kToy6);
  auto p1 = temp_file("p2h_canon1.json");
  auto p2 = temp_file("p2h_canon2.json");
  save_scenario(s, p1);
  auto s2 = load_scenario(p1);
  save_scenario(s2, p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(validate(s2).empty());
  CHECK(peak_demand_total_mw(s2) == peak_demand_total_mw(s));
  CHECK(s2.profiles.demand_factor == s.profiles.demand_factor);
}

TEST_CASE("profiles can reference a sibling delimited file") {
  auto dir = std::filesystem::temp_directory_path() / "p2h_profile_ref";
  std::filesystem::create_directories(dir);
  {
    std::ofstream tsv(dir / "profiles.tsv");
    tsv << "t\tdemand_factor\twind_availability\timport_mw\texport_mw\n";
    for (int t = 1; t <= 24; ++t)
      tsv << t << "\t0.8\t0.5\t10\t2\n";
  }
  auto s = load_scenario(kToy6);
  auto j = scenario_to_json(s);
  j["profiles"] = {{"step_hours", 1.0}, {"steps_per_day", 24}, {"file", "profiles.tsv"}};
  {
    std::ofstream out(dir / "scenario.json");
    out << j.dump(2);
  }
  auto s2 = load_scenario((dir / "scenario.json").string());
  CHECK(s2.profiles.horizon() == 24);
  CHECK(s2.profiles.demand_factor[0] == 0.8);
  CHECK(s2.profiles.import_mw[23] == 10.0);
}

TEST_CASE("horizon truncation") {
  auto s = load_scenario(kToy6);
  // double the horizon first so truncation has something to cut
  for (auto* v : {&s.profiles.demand_factor, &s.profiles.wind_availability,
                  &s.profiles.import_mw, &s.profiles.export_mw}) {
    auto copy = *v;
    v->insert(v->end(), copy.begin(), copy.end());
  }
  CHECK(s.profiles.num_days() == 2);
  auto cut = s.with_horizon(24);
  CHECK(cut.profiles.horizon() == 24);
  CHECK(cut.profiles.num_days() == 1);
  CHECK(validate(cut).empty());
  CHECK_THROWS_AS(s.with_horizon(0), std::invalid_argument);
  CHECK_THROWS_AS(s.with_horizon(100), std::invalid_argument);
}
