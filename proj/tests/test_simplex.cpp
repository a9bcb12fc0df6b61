#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "p2h/simplex.hpp"

using namespace p2h;
using Catch::Approx;

TEST_CASE("maximize a 2-variable box") {
  LinearProgram lp;
  lp.maximize = true;
  int x = lp.add_col("x", 0, kInf, 1.0);
  int y = lp.add_col("y", 0, kInf, 1.0);
  int r1 = lp.add_row("cx", 'L', 1.0);
  int r2 = lp.add_row("cy", 'L', 1.0);
  lp.add_entry(r1, x, 1.0);
  lp.add_entry(r2, y, 1.0);

  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == Approx(2.0));
  CHECK(sol.x[x] == Approx(1.0));
  CHECK(sol.x[y] == Approx(1.0));
}

TEST_CASE("native upper bounds, no rows") {
  LinearProgram lp;
  lp.add_col("x", 0, 5.0, -1.0);
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == Approx(-5.0));
  CHECK(sol.x[0] == Approx(5.0));
}

TEST_CASE("equality row") {
  LinearProgram lp;
  int x = lp.add_col("x", 0, kInf, 1.0);
  int y = lp.add_col("y", 0, kInf, 0.0);
  int r = lp.add_row("sum", 'E', 1.0);
  lp.add_entry(r, x, 1.0);
  lp.add_entry(r, y, 1.0);
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == Approx(0.0).margin(1e-9));
  CHECK(sol.x[y] == Approx(1.0));
}

TEST_CASE("free variable and objective constant") {
  LinearProgram lp;
  lp.obj_constant = 3.0;
  int x = lp.add_col("x", -kInf, kInf, 1.0);
  int r = lp.add_row("lo", 'G', -2.0);
  lp.add_entry(r, x, 1.0);
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.x[x] == Approx(-2.0));
  CHECK(sol.objective == Approx(1.0));
}

TEST_CASE("infeasible with certificate") {
  LinearProgram lp;
  int x = lp.add_col("x", 0, 1.0, 0.0);
  int r = lp.add_row("need2", 'G', 2.0);
  lp.add_entry(r, x, 1.0);
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::infeasible);
  REQUIRE(sol.certificate.size() == 1);
  CHECK(infeasibility_gap(lp, sol.certificate) > 1e-9);
}

TEST_CASE("infeasible empty row") {
  LinearProgram lp;
  lp.add_col("x", 0, 10.0, 1.0);
  lp.add_row("impossible", 'G', 5.0);  // no entries
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::infeasible);
  CHECK(infeasibility_gap(lp, sol.certificate) > 1e-9);
}

TEST_CASE("unbounded with ray") {
  LinearProgram lp;
  int x = lp.add_col("x", 0, kInf, -1.0);
  int y = lp.add_col("y", 0, kInf, 0.0);
  int r = lp.add_row("tie", 'L', 4.0);
  lp.add_entry(r, x, 1.0);
  lp.add_entry(r, y, -1.0);
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::unbounded);
  REQUIRE(sol.certificate.size() == 2);
  // the ray improves the objective and respects constraints directionally
  double cd = 0.0;
  for (int j = 0; j < 2; ++j) cd += lp.obj[j] * sol.certificate[j];
  CHECK(cd < -1e-9);
  double row_dir = sol.certificate[x] - sol.certificate[y];
  CHECK(row_dir <= 1e-9);
  CHECK(sol.certificate[x] >= -1e-9);
  CHECK(sol.certificate[y] >= -1e-9);
}

TEST_CASE("degenerate ties and fixed columns") {
  LinearProgram lp;
  int x = lp.add_col("x", 0, kInf, 1.0);
  int f = lp.add_col("fixed", 2.0, 2.0, 5.0);
  int r1 = lp.add_row("r1", 'G', 3.0);
  lp.add_entry(r1, x, 1.0);
  lp.add_entry(r1, f, 1.0);
  int r2 = lp.add_row("r2", 'G', 1.0);
  lp.add_entry(r2, x, 1.0);
  lp.add_entry(r2, f, 1.0);
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.x[f] == 2.0);
  CHECK(sol.objective == Approx(11.0));
}

TEST_CASE("determinism: identical runs, identical output") {
  LinearProgram lp;
  for (int j = 0; j < 6; ++j) lp.add_col("x" + std::to_string(j), -1.0, 3.0, (j % 3) - 1.0);
  for (int i = 0; i < 4; ++i) {
    int r = lp.add_row("r" + std::to_string(i), i % 2 ? 'L' : 'G', 1.5 - i);
    for (int j = 0; j < 6; ++j)
      if ((i + j) % 2 == 0) lp.add_entry(r, j, 1.0 + 0.25 * ((i * 7 + j) % 5));
  }
  auto a = solve(lp);
  auto b = solve(lp);
  REQUIRE(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  CHECK(a.objective == b.objective);  // bitwise
  for (size_t j = 0; j < a.x.size(); ++j) CHECK(a.x[j] == b.x[j]);
}

TEST_CASE("objective scaling leaves the argmin unchanged") {
  LinearProgram lp;
  for (int j = 0; j < 5; ++j) lp.add_col("x" + std::to_string(j), 0.0, 2.0, 1.0 + 0.3 * j);
  int r = lp.add_row("cover", 'G', 4.0);
  for (int j = 0; j < 5; ++j) lp.add_entry(r, j, 1.0);
  auto base = solve(lp);
  REQUIRE(base.status == SolveStatus::optimal);
  for (double alpha : {4.0, 128.0}) {  // powers of two: exact coefficient scaling
    LinearProgram scaled = lp;
    for (auto& c : scaled.obj) c *= alpha;
    auto sol = solve(scaled);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.iterations == base.iterations);
    CHECK(sol.objective == Approx(alpha * base.objective).epsilon(1e-12));
    for (size_t j = 0; j < sol.x.size(); ++j)
      CHECK(sol.x[j] == Approx(base.x[j]).margin(1e-9));
  }
}

TEST_CASE("optimal status implies tolerable residuals and small duality gap") {
  LinearProgram lp;
  for (int j = 0; j < 7; ++j)
    lp.add_col("x" + std::to_string(j), j % 2 ? -2.0 : 0.0, 3.0 + j, 2.0 - 0.5 * j);
  for (int i = 0; i < 5; ++i) {
    int r = lp.add_row("r" + std::to_string(i), "LGE"[i % 3], 2.0 + 0.5 * i);
    for (int j = 0; j < 7; ++j)
      if ((i * 3 + j) % 2 == 0) lp.add_entry(r, j, ((i + 2 * j) % 7) - 3.0);
  }
  auto sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.max_primal_residual <= 1e-7);
  CHECK(sol.max_dual_residual <= 1e-6);
  double gap = std::abs(sol.objective - dual_objective(lp, sol));
  CHECK(gap <= 1e-6 * (1.0 + std::abs(sol.objective)));
}

TEST_CASE("solver options: iteration limit, scaling off, tight refactor, early Bland") {
  LinearProgram lp;
  for (int j = 0; j < 8; ++j)
    lp.add_col("x" + std::to_string(j), 0.0, 4.0, 1.0 + 0.125 * j);
  for (int i = 0; i < 6; ++i) {
    int r = lp.add_row("r" + std::to_string(i), i % 2 ? 'G' : 'L', 3.0 + 0.5 * i);
    for (int j = 0; j < 8; ++j)
      if ((i + j) % 3 != 0) lp.add_entry(r, j, 1.0 + ((i * 5 + j) % 4) * 0.5);
  }
  auto reference = solve(lp);
  REQUIRE(reference.status == SolveStatus::optimal);

  SolverOptions limited;
  limited.max_iterations = 1;
  CHECK(solve(lp, limited).status == SolveStatus::iteration_limit);

  SolverOptions unscaled;
  unscaled.scaling = false;
  auto s1 = solve(lp, unscaled);
  REQUIRE(s1.status == SolveStatus::optimal);
  CHECK(s1.objective == Approx(reference.objective).epsilon(1e-9));

  SolverOptions churn;
  churn.refactor_interval = 2;  // exercises the eta/refactor machinery hard
  auto s2 = solve(lp, churn);
  REQUIRE(s2.status == SolveStatus::optimal);
  CHECK(s2.objective == Approx(reference.objective).epsilon(1e-9));

  SolverOptions bland;
  bland.stall_trip = 1;  // any degenerate pivot flips to Bland's rule
  auto s3 = solve(lp, bland);
  REQUIRE(s3.status == SolveStatus::optimal);
  CHECK(s3.objective == Approx(reference.objective).epsilon(1e-9));
}

TEST_CASE("medium random programs satisfy optimality conditions") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> ucoef(-3.0, 3.0), u01(0.0, 1.0);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 30; ++trial) {
    LinearProgram lp;
    int n = 40 + trial % 12, m = 24 + trial % 9;
    for (int j = 0; j < n; ++j)
      lp.add_col("x" + std::to_string(j), u01(rng) < 0.3 ? -2.0 : 0.0, 1.0 + 3.0 * u01(rng),
                 ucoef(rng));
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j)
      x0[j] = lp.col_lower[j] + u01(rng) * (lp.col_upper[j] - lp.col_lower[j]);
    for (int i = 0; i < m; ++i) {
      double r = u01(rng);
      char sense = r < 0.25 ? 'E' : (r < 0.625 ? 'L' : 'G');
      double act = 0.0;
      std::vector<std::pair<int, double>> row;
      for (int j = 0; j < n; ++j)
        if (u01(rng) < 0.25) {
          double v = std::round(ucoef(rng) * 4.0) / 4.0;
          if (v == 0.0) continue;
          row.emplace_back(j, v);
          act += v * x0[j];
        }
      if (row.empty()) row.emplace_back(i % n, 1.0), act = x0[i % n];
      int idx = lp.add_row("r" + std::to_string(i), sense,
                           act + (sense == 'E' ? 0.0 : (u01(rng) - 0.4)));
      for (auto& [j, v] : row) lp.add_entry(idx, j, v);
    }
    auto sol = solve(lp);
    INFO("trial " << trial << " n=" << n << " m=" << m);
    if (sol.status == SolveStatus::infeasible) {
      ++infeasible;
      CHECK(infeasibility_gap(lp, sol.certificate) > 0.0);
      continue;
    }
    REQUIRE(sol.status == SolveStatus::optimal);
    ++optimal;
    CHECK(sol.max_primal_residual <= 1e-7);
    CHECK(sol.max_dual_residual <= 1e-6);
    double gap = std::abs(sol.objective - dual_objective(lp, sol));
    CHECK(gap <= 1e-6 * (1.0 + std::abs(sol.objective)));
  }
  CHECK(optimal >= 20);  // the generator is tuned to be mostly feasible
}

TEST_CASE("check_solution reports violations by row") {
  LinearProgram lp;
  int x = lp.add_col("x", 0, 2.0, 1.0);
  int r = lp.add_row("cap", 'L', 1.0);
  lp.add_entry(r, x, 1.0);
  auto rep = check_solution(lp, {1.5});
  CHECK(rep.max_row_violation == Approx(0.5));
  CHECK(rep.worst_row == r);
  auto ok = check_solution(lp, {0.5});
  CHECK(ok.within(1e-9));
  CHECK(ok.objective == Approx(0.5));
}
