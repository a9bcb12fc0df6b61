// Developer benchmark: build + solve ireland35 at a given horizon/K and
// report sizes, timings, iteration counts and headline results.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "p2h/analysis.hpp"
#include "p2h/audit.hpp"
#include "p2h/scenario_io.hpp"

using namespace p2h;
using clk = std::chrono::steady_clock;

int main(int argc, char** argv) {
  int horizon = argc > 1 ? std::atoi(argv[1]) : 24;
  int K = argc > 2 ? std::atoi(argv[2]) : 10;
  std::string mode = argc > 3 ? argv[3] : "base";

  auto s = load_scenario(std::string(P2H_DATA_DIR) + "/scenarios/ireland35.json");
  if (horizon < s.profiles.horizon()) s = s.with_horizon(horizon);

  FormulationOptions fo;
  fo.segments_per_generator = K;
  if (mode == "nop2h") {
    fo.mode = PlantMode::none;
    fo.h2_demand_override_mwh = 0.0;
  } else if (mode.rfind("bus", 0) == 0) {
    fo.mode = PlantMode::single;
    fo.plant_buses = {std::atoi(mode.c_str() + 3)};
    fo.charge_capped_by_xi = argc > 4 && std::string(argv[4]) == "pchcap";
  }
  auto t0 = clk::now();
  auto m = build(s, fo);
  auto t1 = clk::now();
  std::printf("LP: %d rows, %d cols, %d nnz (build %.2f s)\n", m.lp.num_rows(),
              m.lp.num_cols(), m.lp.num_entries(),
              std::chrono::duration<double>(t1 - t0).count());

  auto lps = solve(m.lp);
  auto t2 = clk::now();
  std::printf("solve: %s in %ld iterations, %.2f s, primal res %.2e, dual res %.2e\n",
              to_string(lps.status), lps.iterations,
              std::chrono::duration<double>(t2 - t1).count(), lps.max_primal_residual,
              lps.max_dual_residual);
  if (lps.status != SolveStatus::optimal) return 1;

  auto sol = extract(m, lps, s);
  auto rep = audit(s, m, sol);
  std::printf("objective %.2f EUR  worst physical residual %.3e  snsp excess %.3e\n",
              lps.objective, rep.worst_physical(), rep.snsp_ratio_excess);
  double curt = 0.0, shed = 0.0;
  for (auto& r : sol.curtail_mw)
    for (double v : r) curt += v;
  for (auto& r : sol.shed_mw)
    for (double v : r) shed += v;
  std::printf("curtailment %.3f GWh/day  shed %.3f MWh/day  xi %.2f MW\n",
              curt / 1000.0 / s.profiles.num_days(), shed / s.profiles.num_days(),
              sol.total_xi_mw());
  for (size_t b = 0; b < sol.shed_mw.size(); ++b)
    for (int t = 0; t < s.profiles.horizon(); ++t)
      if (sol.shed_mw[b][t] > 1e-6)
        std::printf("  shed bus %d t %d: %.2f MW (demand %.2f, wind avail %.3f)\n",
                    s.buses[b].id, t + 1, sol.shed_mw[b][t], s.demand_mw((int)b, t),
                    s.profiles.wind_availability[t]);
  return 0;
}
