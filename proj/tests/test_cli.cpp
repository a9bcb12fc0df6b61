#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(P2H_CLI_BIN) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& stem) {
  auto d = fs::temp_directory_path() / stem;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("aviation exit codes") {
  CHECK(run("aviation --route DUB-LHR") == 0);
  CHECK(run("aviation --route NOPE-XX") == 2);
  CHECK(run("aviation --flights-per-day 40") == 2);  // incomplete custom route
  CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("dispatch exit codes and outputs") {
  auto out = fresh_dir("p2h_cli_dispatch");
  CHECK(run("dispatch --scenario toy6 --out-dir " + out.string()) == 0);
  for (const char* f : {"manifest.json", "kpis.json", "kpis.txt", "audit.txt",
                        "generation.tsv", "buses.tsv", "flows.tsv", "storage.tsv"})
    CHECK(fs::exists(out / f));

  auto manifest = json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["solver"]["status"] == "optimal");
  CHECK(manifest["scenario_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  auto kpis = json::parse(slurp(out / "kpis.json"));
  CHECK(kpis["daily_h2_demand_mwh"].get<double>() == 120.0);

  // every table carries a unit-bearing header
  for (const char* f : {"generation.tsv", "buses.tsv", "flows.tsv", "storage.tsv"}) {
    auto head = slurp(out / f).substr(0, 200);
    CHECK(head.find("_mw") != std::string::npos);
  }

  CHECK(run("dispatch --scenario toy6 --no-p2h --out-dir " +
            fresh_dir("p2h_cli_inf").string()) == 3);
  CHECK(run("dispatch --scenario toy6 --no-p2h --h2-demand 0 --out-dir " +
            fresh_dir("p2h_cli_feas").string()) == 0);
  CHECK(run("dispatch --scenario /no/such/file.json --out-dir " +
            fresh_dir("p2h_cli_missing").string()) == 2);
}

TEST_CASE("reruns produce byte-identical result files") {
  auto a = fresh_dir("p2h_cli_rerun_a"), b = fresh_dir("p2h_cli_rerun_b");
  REQUIRE(run("dispatch --scenario toy6 --out-dir " + a.string()) == 0);
  REQUIRE(run("dispatch --scenario toy6 --out-dir " + b.string()) == 0);
  for (const char* f : {"kpis.json", "kpis.txt", "generation.tsv", "buses.tsv", "flows.tsv",
                        "storage.tsv", "audit.txt"})
    CHECK(slurp(a / f) == slurp(b / f));
  // manifests differ only in timings
  auto ma = json::parse(slurp(a / "manifest.json")), mb = json::parse(slurp(b / "manifest.json"));
  ma.erase("timings_ms");
  mb.erase("timings_ms");
  CHECK(ma == mb);
}

TEST_CASE("sweep subcommand writes tables and a summary") {
  auto out = fresh_dir("p2h_cli_sweep");
  CHECK(run("sweep snsp --scenario toy6 --levels 0.6,0.7,0.8 --out-dir " + out.string()) == 0);
  CHECK(fs::exists(out / "sweep_snsp.tsv"));
  auto summary = json::parse(slurp(out / "sweep_snsp.json"));
  CHECK(summary["points"].size() == 3);
  auto table = slurp(out / "sweep_snsp.tsv");
  CHECK(table.find("snsp_level\tstatus\tdaily_cost_eur") == 0);

  auto loc = fresh_dir("p2h_cli_sweep_loc");
  CHECK(run("sweep location --scenario toy6 --buses 2,4 --out-dir " + loc.string()) == 0);
  auto lsum = json::parse(slurp(loc / "sweep_location.json"));
  CHECK(lsum["points"].size() == 2);
  CHECK(lsum["baseline"]["daily_aviation_co2_t"].get<double>() == 412.5);

  CHECK(run("sweep location --scenario toy6 --buses 77 --out-dir " +
            fresh_dir("p2h_cli_badbus").string()) == 2);
}

TEST_CASE("export writes a model and fails loudly on a bad path") {
  auto dir = fresh_dir("p2h_cli_export");
  fs::create_directories(dir);
  auto mps = dir / "toy6.mps";
  CHECK(run("export --scenario toy6 --out " + mps.string()) == 0);
  CHECK(fs::exists(mps));
  CHECK(fs::exists(dir / "toy6.mps.names"));
  auto head = slurp(mps).substr(0, 4);
  CHECK(head == "NAME");
  CHECK(run("export --scenario toy6 --out /no/such/dir/x.mps") == 2);
}
