#include <cmath>

#include "doctest.h"
#include "fbdc/experiments.hpp"

using namespace fbdc;

TEST_CASE("closed-form solutions of the test problems") {
  CHECK(obstacle_bvp_exact(-0.5) == -0.5);
  CHECK(obstacle_bvp_exact(0.2) == doctest::Approx(std::exp(0.2) - 1.0));
  const double tau = std::sqrt(0.5);
  CHECK(moving_boundary_exact(tau, 0.0) == doctest::Approx(0.3210082));
  CHECK(moving_boundary_exact(tau, -1.0) == -1.0);
  // Continuous with a continuous slope across the moving front.
  const double xf = -tau, e = 1e-7;
  CHECK(moving_boundary_exact(tau, xf + e) == doctest::Approx(moving_boundary_exact(tau, xf - e)).epsilon(1e-6));
}

TEST_CASE("table rows: cumulative iterations, errors and orders") {
  Study s{"demo", 0.0, 1.0, {}};
  LevelResult a, b;
  a.nx = 10;
  a.value = {1.4, 1.1};
  a.iterations = {5, 1};
  b.nx = 20;
  b.value = {1.1, 1.025};
  b.iterations = {9, 1};
  s.levels = {a, b};
  const std::vector<TableRow> rows = table_rows(s);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].niters == 6);
  CHECK(rows[1].phase == 2);
  CHECK(rows[2].error == doctest::Approx(0.1));
  CHECK(rows[2].conv == doctest::Approx(2.0));
  CHECK(rows[3].conv == doctest::Approx(2.0));
  CHECK(std::isnan(rows[0].conv));
}

TEST_CASE("successive changes when no exact value exists") {
  Study s{"demo", 0.0, std::nullopt, {}};
  LevelResult a, b, c;
  a.value = {1.0};
  b.value = {1.5};
  c.value = {1.625};
  s.levels = {a, b, c};
  const std::vector<double> e = phase_errors(s, 0);
  CHECK(std::isnan(e[0]));
  CHECK(e[1] == doctest::Approx(0.5));
  CHECK(e[2] == doctest::Approx(0.125));
  CHECK(std::isnan(phase_errors(s, 1)[1]));
}

TEST_CASE("study builders reproduce the printed first phase") {
  const Study bvp = bvp_obstacle_study({30, 60}, 1e12, 0.2, 2, 1e-9);
  CHECK(bvp.levels[0].value[0] == doctest::Approx(0.221530668).epsilon(1e-9));
  CHECK(bvp.levels[1].value[0] == doctest::Approx(0.221434987).epsilon(1e-9));
  CHECK(bvp.levels[1].front_error.size() == 2);
  const Study mb = moving_boundary_study({20}, {40}, 1e8, 0.0, 1, 1e-9);
  CHECK(mb.levels[0].value[0] == doctest::Approx(0.320748).epsilon(2e-6));
  CHECK_THROWS(moving_boundary_study({20, 40}, {40}, 1e8, 0.0, 1, 1e-9));
}
