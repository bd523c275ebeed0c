#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fbdc/grid.hpp"

namespace fbdc {

/// Weights for derivatives of order 0..max_order at x0 from values at x
/// (Fornberg's recurrence). Column d holds the order-d weights.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
fd_weight_table(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar x0, int max_order) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (x[i] == x[j]) throw std::invalid_argument("fd_weights: coincident nodes");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, max_order + 1);
  Scalar c1 = Scalar(1);
  Scalar c4 = x[0] - x0;
  c(0, 0) = Scalar(1);
  for (Eigen::Index i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<Eigen::Index>(i, max_order));
    Scalar c2 = Scalar(1);
    const Scalar c5 = c4;
    c4 = x[i] - x0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const Scalar c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k > 0; --k) c(i, k) = c1 * (Scalar(k) * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k > 0; --k) c(j, k) = (c4 * c(j, k) - Scalar(k) * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Weights for the order-th derivative at x0; exact for polynomials of degree < x.size().
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
fd_weights(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar x0, int order) {
  if (order < 0 || x.size() < order + 1) throw std::invalid_argument("fd_weights: window too small for order");
  return fd_weight_table(x, x0, order).col(order);
}

/// Index window used for row j (1..M): centred 5 points inside, one-sided 6 at j = 1 and j = M.
std::pair<int, int> stencil_window(int j, int M);

/// Rows 1..M of a derivative matrix with M + 2 columns (boundary columns included).
class StencilTable {
 public:
  StencilTable() = default;
  StencilTable(const Grid& grid, int order);

  int M() const { return M_; }
  int first(int j) const { return first_[j - 1]; }
  int width(int j) const { return width_[j - 1]; }
  /// Entry of row j in column c; zero outside the window.
  double coeff(int j, int c) const;
  /// M x (M + 2) dense copy.
  Eigen::MatrixXd dense() const;

 private:
  int M_ = 0;
  std::vector<int> first_, width_;
  Eigen::MatrixXd w_;
};

struct GridStencils {
  StencilTable d1, d2;
  explicit GridStencils(const Grid& grid) : d1(grid, 1), d2(grid, 2) {}
};

/// Square band matrix with kl sub- and ku super-diagonals.
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku), a_(Eigen::MatrixXd::Zero(n, kl + ku + 1)) {}
  static BandMatrix identity(int n, int kl, int ku, double scale = 1.0);

  int rows() const { return n_; }
  int kl() const { return kl_; }
  int ku() const { return ku_; }
  bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_ && j >= 0 && j < n_; }
  double operator()(int i, int j) const { return in_band(i, j) ? a_(i, j - i + kl_) : 0.0; }
  double& at(int i, int j);
  double max_abs() const { return a_.cwiseAbs().maxCoeff(); }

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense() const;
  BandMatrix& add_diagonal(const Eigen::VectorXd& d);
  /// this = alpha * I + beta * this
  BandMatrix& affine(double alpha, double beta);

 private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  Eigen::MatrixXd a_;
};

/// LU factorization with partial pivoting restricted to the band.
class BandLU {
 public:
  explicit BandLU(const BandMatrix& A);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  int n_, kl_, ku_;
  Eigen::MatrixXd u_;  // row i holds columns i - kl .. i + kl + ku
  Eigen::MatrixXd l_;  // multipliers below the pivot of column k
  std::vector<int> piv_;
  double& u(int i, int j) { return u_(i, j - i + kl_); }
  double u(int i, int j) const { return u_(i, j - i + kl_); }
};

Eigen::VectorXd solve_banded(const BandMatrix& A, const Eigen::VectorXd& rhs);

using Coefficient = std::function<double(double)>;

/// p u'' + w u' + z u + g
struct Coefficients {
  Coefficient p, w, z, g;
};

struct DiscreteOperator {
  Eigen::VectorXd p, w, z, g;  // sampled at S_1..S_M
  BandMatrix L;
  Eigen::VectorXd b;
};

DiscreteOperator assemble_operator(const Grid& grid, const GridStencils& st, const Coefficients& c,
                                   double left_value, double right_value);
DiscreteOperator assemble_operator(const Grid& grid, const Coefficients& c, double left_value,
                                   double right_value);

/// A = (25/12) I - k L
BandMatrix assemble_bdf4_matrix(const BandMatrix& L, double k);

/// A = c I - k L, shared by the startup schemes.
BandMatrix shifted_operator(const BandMatrix& L, double c, double k);

}  // namespace fbdc
