#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fbdc/bvp.hpp"
#include "fbdc/grid.hpp"

namespace fbdc {

using TimeFn = std::function<double(double, double)>;               // (tau, S)
using TimeObstacleFn = std::function<double(double, double, int)>;  // (tau, S, order)

/// Coefficients of dV/dtau = p V'' + w V' + z V + g, already written in the
/// marching variable tau.
struct TimeCoefficients {
  TimeFn p, w, z, g;
};

enum class Startup { exact, rk4_threelevel_bdf3 };

struct IvpProblem {
  Grid grid;
  double tau_end = 1.0;
  int steps = 4;
  TimeCoefficients coeffs;
  TimeObstacleFn obstacle;
  std::function<double(double)> left_value, right_value;  // of tau
  std::function<double(double)> initial;                  // of S
  TimeFn exact;  // required by Startup::exact
  Startup startup = Startup::rk4_threelevel_bdf3;
  double rho = 1e8;
  double tol = 1e-9;
  int max_iter = 200;
  int t_skip = 0;
  int phases = 4;
  /// Called after every step with the per-phase interior solutions.
  std::function<void(int, double, const std::vector<Eigen::VectorXd>&)> on_step;
};

struct IvpResult {
  std::vector<Eigen::VectorXd> solution;  // per phase at tau_end, S_0..S_{M+1}
  std::vector<int> iterations;            // per phase, summed over all steps
  std::vector<int> max_iterations;        // per phase, largest single solve
  std::vector<double> front;              // last-phase front at each step, NaN when not located
  std::vector<int> front_m;               // its cell index, -1 when not located
  bool complementarity = true;
  bool converged = true;
  int degraded_steps = 0;
};

/// k b + 4 V^{n+3} - 3 V^{n+2} + (4/3) V^{n+1} - (1/4) V^n, newest first in `history`.
Eigen::VectorXd bdf4_rhs(const std::array<Eigen::VectorXd, 4>& history, const Eigen::VectorXd& b, double k);

IvpResult solve_ivp(const IvpProblem& problem);

}  // namespace fbdc
