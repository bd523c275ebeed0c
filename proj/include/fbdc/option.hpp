#pragma once

#include <vector>

#include "fbdc/grid.hpp"
#include "fbdc/ivp.hpp"

namespace fbdc {

struct MarketParams {
  double sigma = 0.2;
  double r = 0.1;
  double d = 0.0;
  double K = 100.0;
  double T = 0.25;
};

/// Value and S-derivatives of a European put.
struct EuropeanGreeks {
  double value = 0.0, dS = 0.0, dSS = 0.0, dSSS = 0.0, dSSSS = 0.0;
  double operator[](int order) const;
};

double norm_cdf(double x);
double norm_pdf(double x);

/// t is time to expiry. At t = 0 the payoff is returned with one-sided slope
/// and zero higher derivatives.
EuropeanGreeks european_put(const MarketParams& mp, double t, double S);

struct AmericanConfig {
  MarketParams market;
  StretchParams stretch;
  int nx = 53;  // grid nodes including both ends, M = nx - 2 unknowns
  int nt = 30;  // steps in tau = sqrt(t)
  int t_skip = 12;
  double rho = 1e8;
  double tol = 1e-9;
  int max_iter = 200;
  int phases = 4;
};

struct AmericanResult {
  std::vector<double> price;  // per phase at S = K, t = T
  std::vector<int> iterations;
  std::vector<int> max_iterations;
  std::vector<double> tau;    // step times
  std::vector<double> front;  // exercise boundary per step, NaN when not located
  double european = 0.0;
  bool complementarity = true;
  bool converged = true;
  bool premium_nonnegative = true;
  int degraded_steps = 0;
};

/// The American/European difference problem in tau = sqrt(t) form.
IvpProblem american_difference_problem(const AmericanConfig& cfg);

AmericanResult price_american_put(const AmericanConfig& cfg);

}  // namespace fbdc
