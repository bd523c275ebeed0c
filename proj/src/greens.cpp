#include "fbdc/greens.hpp"

#include <cmath>
#include <stdexcept>

namespace fbdc {

TransformedBsCoefficients transformed_bs(double r, double sigma, double k) {
  if (!(sigma > 0.0 && k > 0.0)) throw std::invalid_argument("transformed_bs: need sigma > 0 and k > 0");
  TransformedBsCoefficients c;
  c.kappa = 2.0 * r / (sigma * sigma);
  c.lambda = 25.0 / (6.0 * k * sigma * sigma);
  const double root = std::sqrt((c.kappa + 1.0) * (c.kappa + 1.0) + 4.0 * c.lambda);
  c.xi1 = 0.5 * (-(c.kappa - 1.0) + root);
  c.xi2 = 0.5 * (-(c.kappa - 1.0) - root);
  return c;
}

double analytic_green(double xi1, double xi2, double a, double b, double x, double xbar) {
  if (xi1 == xi2) throw std::invalid_argument("analytic_green: need distinct roots");
  if (x < a || x > b || xbar < a || xbar > b) throw std::domain_error("analytic_green: point outside [a, b]");
  const double d = xi2 - xi1;
  const double denom = d * std::exp(xi2 * xbar) * (std::exp(d * b) - std::exp(d * a));
  if (x < xbar)
    return (std::exp(d * b) - std::exp(d * xbar)) / denom * (std::exp(xi2 * x) - std::exp(d * a + xi1 * x));
  return (std::exp(d * a) - std::exp(d * xbar)) / denom * (std::exp(xi2 * x) - std::exp(d * b + xi1 * x));
}

Eigen::MatrixXd pde_block(const BandMatrix& A, int first) {
  const int n = A.rows() - first;
  if (first < 0 || n < 1) throw std::invalid_argument("pde_block: empty block");
  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = A(first + i, first + j);
  return B;
}

Eigen::MatrixXd discrete_green_columns(const Eigen::MatrixXd& L22, const std::vector<int>& cols) {
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(L22);
  if (!lu.isInvertible()) throw std::runtime_error("discrete_green_columns: singular matrix");
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(L22.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) E(cols[c], static_cast<Eigen::Index>(c)) = 1.0;
  return lu.solve(E);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need matching sizes >= 2");
  Eigen::MatrixXd X(x.size(), 2);
  Eigen::VectorXd Y(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    X(i, 0) = std::log(x[i]);
    X(i, 1) = 1.0;
    Y[i] = std::log(std::abs(y[i]));
  }
  return X.colPivHouseholderQr().solve(Y)[0];
}

}  // namespace fbdc
