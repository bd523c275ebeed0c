#pragma once

#include <Eigen/Dense>

#include "fbdc/fdcore.hpp"

namespace fbdc {

using Indicator = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// A V = y + rho * I(V) (V* - V), with I(V)_ii = [V*_i > V_i].
struct PenaltyProblem {
  BandMatrix A;
  Eigen::VectorXd y;
  Eigen::VectorXd obstacle;
  double rho = 1e12;
  double tol = 1e-9;
  int max_iter = 100;
};

struct PenaltyResult {
  Eigen::VectorXd solution;
  Indicator indicator;
  int iterations = 0;
  bool converged = false;
  /// rho >= 1e3 max|A_ij|
  bool rho_dominant = true;
};

/// Generalized Newton (discrete penalty) iteration. Stops once the active set
/// repeats, which makes the iterate an exact fixed point, or once the largest
/// relative update drops below tol.
PenaltyResult penalty_iterate(const PenaltyProblem& problem, const Eigen::VectorXd& initial_guess);
PenaltyResult penalty_iterate(const PenaltyProblem& problem);

/// Inactive nodes sit above the obstacle and active nodes on it, both to within
/// factor * max(1, |V*_i|) / rho.
bool complementarity_holds(const Eigen::VectorXd& solution, const Indicator& indicator,
                           const Eigen::VectorXd& obstacle, double rho, double factor = 1e3);

}  // namespace fbdc
