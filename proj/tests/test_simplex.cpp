#include <cmath>

#include "doctest.h"
#include "efx/simplex.hpp"
#include "vertex_oracle.hpp"

using namespace efx;

TEST_CASE("single bounded variable") {
  LinearProgram lp;
  lp.add_variable(1.0, 0.0, 1.0);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == 0.0);
  CHECK(s.x[0] == 0.0);
}

TEST_CASE("textbook maximization") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
  LinearProgram lp;
  lp.add_variable(-3.0, 0.0);
  lp.add_variable(-5.0, 0.0);
  lp.add_row({{0, 1.0}}, 4);
  lp.add_row({{1, 2.0}}, 12);
  lp.add_row({{0, 3.0}, {1, 2.0}}, 18);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
}

TEST_CASE("negative right-hand sides need phase one") {
  // x + y >= 2 written as -x - y <= -2; min x + 2y over x, y >= 0.
  LinearProgram lp;
  lp.add_variable(1.0, 0.0);
  lp.add_variable(2.0, 0.0);
  lp.add_row({{0, -1.0}, {1, -1.0}}, -2);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("infeasible and unbounded models") {
  LinearProgram bad;
  bad.add_variable(1.0, 0.0, 1.0);
  bad.add_row({{0, -1.0}}, -2.0);
  CHECK(solve_lp(bad).status == LpStatus::infeasible);

  LinearProgram open;
  open.add_variable(-1.0, 0.0);
  CHECK(solve_lp(open).status == LpStatus::unbounded);

  LinearProgram crossed;
  crossed.add_variable(0.0, 1.0, 0.0);
  CHECK(solve_lp(crossed).status == LpStatus::infeasible);
}

TEST_CASE("degenerate vertex does not cycle") {
  // Beale's cycling example in <= form.
  LinearProgram lp;
  lp.add_variable(-0.75, 0.0);
  lp.add_variable(150.0, 0.0);
  lp.add_variable(-0.02, 0.0);
  lp.add_variable(6.0, 0.0);
  lp.add_row({{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, 0.0);
  lp.add_row({{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, 0.0);
  lp.add_row({{2, 1.0}}, 1.0);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-0.05));
}

TEST_CASE("Bland's rule alone also terminates") {
  LinearProgram lp;
  lp.add_variable(-0.75, 0.0);
  lp.add_variable(150.0, 0.0);
  lp.add_variable(-0.02, 0.0);
  lp.add_variable(6.0, 0.0);
  lp.add_row({{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, 0.0);
  lp.add_row({{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, 0.0);
  lp.add_row({{2, 1.0}}, 1.0);
  SimplexOptions options;
  options.degenerate_streak_limit = 0;
  const LpSolution s = solve_lp(lp, options);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-0.05));
}

TEST_CASE("solutions are rechecked by substitution") {
  efx::Engine engine = make_engine(21);
  for (int t = 0; t < 50; ++t) {
    const LinearProgram lp = efx::testing::random_bounded_lp(5, 6, engine);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.max_violation <= 1e-8);
    CHECK(max_violation(lp, s.x) == s.max_violation);
  }
}

TEST_CASE("random boxed models match vertex enumeration") {
  efx::Engine engine = make_engine(22);
  for (int t = 0; t < 30; ++t) {
    const std::size_t vars = 2 + t % 5;
    const LinearProgram lp = efx::testing::random_bounded_lp(vars, 3 + t % 4, engine);
    const LpSolution s = solve_lp(lp);
    const auto oracle = efx::testing::VertexEnumerator(lp).solve();
    REQUIRE(oracle);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::abs(s.objective - oracle->objective) <= 1e-8);
  }
}
