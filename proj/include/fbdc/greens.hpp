#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fbdc/fdcore.hpp"

namespace fbdc {

/// Characteristic roots of -u'' - (kappa - 1) u' + (kappa + lambda) u in x = log(S/K),
/// the time-discrete Black-Scholes operator 25/(12k) - L_BS up to the factor sigma^2/2.
struct TransformedBsCoefficients {
  double kappa = 0.0;
  double lambda = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
};

TransformedBsCoefficients transformed_bs(double r, double sigma, double k);

/// Green's function on [a, b] of the constant-coefficient operator whose
/// homogeneous solutions are exp(xi1 x) and exp(xi2 x), normalized to a unit
/// derivative drop at xbar (leading coefficient -1).
double analytic_green(double xi1, double xi2, double a, double b, double x, double xbar);

/// Dense block of A with rows and columns first..n-1 (the PDE-region block).
Eigen::MatrixXd pde_block(const BandMatrix& A, int first);

/// Columns `cols` of L22^{-1}.
Eigen::MatrixXd discrete_green_columns(const Eigen::MatrixXd& L22, const std::vector<int>& cols);

/// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fbdc
