#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fbdc/fdcore.hpp"
#include "fbdc/grid.hpp"
#include "fbdc/jumps.hpp"

namespace fbdc {

/// Obstacle V* and its derivatives: obstacle(S, order), order 0..4.
using ObstacleFn = std::function<double(double, int)>;

/// p V'' + w V' + z V + g + rho max(V* - V, 0) = 0 with Dirichlet ends and a
/// penalty region on the left of a single front.
struct BvpProblem {
  Grid grid;
  Coefficients coeffs;
  ObstacleFn obstacle;
  double left_value = 0.0;
  double right_value = 0.0;
  double rho = 1e12;
  double tol = 1e-9;
  int max_iter = 1000;
  std::optional<Eigen::VectorXd> initial_guess;  // interior values; obstacle when empty
};

struct PhaseResult {
  int phase = 0;
  Eigen::VectorXd solution;  // S_0..S_{M+1}
  double front = 0.0;
  bool front_ok = false;
  int iterations = 0;
  bool converged = false;
  bool complementarity = false;
  JumpData jumps;
};

/// Front and jump estimates from a phase solution. `phase` selects the
/// polynomial degree (phase + 2) and the populated jump orders (2..min(phase + 2, 4)).
struct FrontEstimate {
  JumpData jumps;
  bool ok = false;
};

FrontEstimate estimate_front(const Grid& grid, const Eigen::VectorXd& full, int m, int phase,
                             const std::function<double(double, int)>& obstacle, double initial_front);

/// Up to four deferred-correction phases; later phases are skipped when the
/// front cannot be located, so the result may be shorter than `phases`.
std::vector<PhaseResult> solve_bvp(const BvpProblem& problem, int phases = 4);

/// log2(e_coarse / e_fine) per refinement pair; NaN where an error is zero.
std::vector<double> observed_order(const std::vector<double>& errors);

/// Value at x: the node value when x is a node, otherwise the quintic through
/// the six nearest nodes at or right of `first_node`.
double probe_value(const Grid& grid, const Eigen::VectorXd& full, double x, int first_node = 0);

}  // namespace fbdc
