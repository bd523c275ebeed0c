#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbdc/bvp.hpp"
#include "fbdc/ivp.hpp"
#include "fbdc/option.hpp"

namespace fbdc {

/// V'' - V - 1 + rho max(x - V, 0) = 0 on [-1, 1]; exact e^x - 1 right of the front x = 0.
BvpProblem obstacle_bvp(int intervals, double rho, double tol = 1e-9);
double obstacle_bvp_exact(double x);

/// dV/dtau = V'' - 1 on [-2, 2] with obstacle x, i.e. the moving-boundary test
/// problem after t = tau^2; front at x = -tau.
IvpProblem moving_boundary_problem(int nx, int nt, double rho, double tol = 1e-9, int phases = 4);
double moving_boundary_exact(double tau, double x);

struct LevelResult {
  int nx = 0, nt = 0;
  std::vector<double> value;        // per phase at the probe
  std::vector<double> front_error;  // per phase, BVP only
  std::vector<int> iterations;      // per phase, own solves only
  std::vector<int> max_iterations;  // per phase, largest single solve
  bool complementarity = true;
  bool converged = true;
  bool premium_nonnegative = true;  // American only
  int degraded = 0;
};

struct Study {
  std::string problem;
  double probe = 0.0;
  std::optional<double> exact;  // errors against it, else successive changes
  std::vector<LevelResult> levels;
};

struct TableRow {
  int level, nx, nt, phase, niters;
  double value, error, conv;  // NaN where undefined
};

Study bvp_obstacle_study(const std::vector<int>& n, double rho, double probe, int phases, double tol);
Study moving_boundary_study(const std::vector<int>& nx, const std::vector<int>& nt, double rho, double probe,
                            int phases, double tol);
Study american_study(const AmericanConfig& base, const std::vector<int>& nx, const std::vector<int>& nt);

/// Rows per level and phase: niters accumulates over phases, error is against
/// the exact value or the previous level, conv = log2 of successive error ratios.
std::vector<TableRow> table_rows(const Study& s);

/// Errors of one phase across levels, in table order (first entry NaN for changes).
std::vector<double> phase_errors(const Study& s, int phase);

}  // namespace fbdc
