#include "fbdc/fdcore.hpp"

#include <cmath>

namespace fbdc {

namespace {
constexpr int kBand = 4;
constexpr int kMaxWidth = 6;
}  // namespace

std::pair<int, int> stencil_window(int j, int M) {
  if (M < 4) throw std::invalid_argument("stencil_window: need M >= 4");
  if (j < 1 || j > M) throw std::out_of_range("stencil_window: row outside 1..M");
  if (j == 1) return {0, 6};
  if (j == M) return {M - 4, 6};
  return {j - 2, 5};
}

StencilTable::StencilTable(const Grid& grid, int order)
    : M_(grid.M()), first_(M_), width_(M_), w_(Eigen::MatrixXd::Zero(M_, kMaxWidth)) {
  for (int j = 1; j <= M_; ++j) {
    auto [first, width] = stencil_window(j, M_);
    first_[j - 1] = first;
    width_[j - 1] = width;
    w_.row(j - 1).head(width) = fd_weights(grid.nodes.segment(first, width), grid[j], order).transpose();
  }
}

double StencilTable::coeff(int j, int c) const {
  const int k = c - first(j);
  return k >= 0 && k < width(j) ? w_(j - 1, k) : 0.0;
}

Eigen::MatrixXd StencilTable::dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M_, M_ + 2);
  for (int j = 1; j <= M_; ++j) D.row(j - 1).segment(first(j), width(j)) = w_.row(j - 1).head(width(j));
  return D;
}

BandMatrix BandMatrix::identity(int n, int kl, int ku, double scale) {
  BandMatrix A(n, kl, ku);
  A.a_.col(kl).setConstant(scale);
  return A;
}

double& BandMatrix::at(int i, int j) {
  if (!in_band(i, j)) throw std::out_of_range("BandMatrix: entry outside band");
  return a_(i, j - i + kl_);
}

Eigen::VectorXd BandMatrix::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    const int lo = std::max(0, i - kl_), hi = std::min(n_ - 1, i + ku_);
    for (int j = lo; j <= hi; ++j) y[i] += a_(i, j - i + kl_) * x[j];
  }
  return y;
}

Eigen::MatrixXd BandMatrix::dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) D(i, j) = a_(i, j - i + kl_);
  return D;
}

BandMatrix& BandMatrix::add_diagonal(const Eigen::VectorXd& d) {
  a_.col(kl_) += d;
  return *this;
}

BandMatrix& BandMatrix::affine(double alpha, double beta) {
  a_ *= beta;
  a_.col(kl_).array() += alpha;
  return *this;
}

BandLU::BandLU(const BandMatrix& A)
    : n_(A.rows()), kl_(A.kl()), ku_(A.ku()),
      u_(Eigen::MatrixXd::Zero(n_, 2 * A.kl() + A.ku() + 1)),
      l_(Eigen::MatrixXd::Zero(n_, std::max(1, A.kl()))),
      piv_(n_) {
  double scale = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) {
      u(i, j) = A(i, j);
      scale = std::max(scale, std::abs(A(i, j)));
    }
  if (scale == 0.0) throw std::runtime_error("BandLU: zero matrix");
  const double tiny = scale * 1e-24;
  for (int k = 0; k < n_; ++k) {
    const int last = std::min(n_ - 1, k + kl_);
    int p = k;
    for (int i = k + 1; i <= last; ++i)
      if (std::abs(u(i, k)) > std::abs(u(p, k))) p = i;
    piv_[k] = p;
    if (std::abs(u(p, k)) <= tiny) throw std::runtime_error("BandLU: matrix is numerically singular");
    const int cend = std::min(n_ - 1, k + kl_ + ku_);
    if (p != k)
      for (int j = k; j <= cend; ++j) std::swap(u(k, j), u(p, j));
    for (int i = k + 1; i <= last; ++i) {
      const double f = u(i, k) / u(k, k);
      l_(k, i - k - 1) = f;
      u(i, k) = 0.0;
      if (f != 0.0)
        for (int j = k + 1; j <= cend; ++j) u(i, j) -= f * u(k, j);
    }
  }
}

Eigen::VectorXd BandLU::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("BandLU: size mismatch");
  Eigen::VectorXd x = rhs;
  for (int k = 0; k < n_; ++k) {
    if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    for (int i = k + 1; i <= std::min(n_ - 1, k + kl_); ++i) x[i] -= l_(k, i - k - 1) * x[k];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j <= std::min(n_ - 1, i + kl_ + ku_); ++j) s -= u(i, j) * x[j];
    x[i] = s / u(i, i);
  }
  return x;
}

Eigen::VectorXd solve_banded(const BandMatrix& A, const Eigen::VectorXd& rhs) { return BandLU(A).solve(rhs); }

DiscreteOperator assemble_operator(const Grid& grid, const GridStencils& st, const Coefficients& c,
                                   double left_value, double right_value) {
  const int M = grid.M();
  DiscreteOperator op;
  op.p.resize(M);
  op.w.resize(M);
  op.z.resize(M);
  op.g.resize(M);
  op.L = BandMatrix(M, kBand, kBand);
  op.b.resize(M);
  for (int j = 1; j <= M; ++j) {
    const int i = j - 1;
    const double S = grid[j];
    op.p[i] = c.p ? c.p(S) : 0.0;
    op.w[i] = c.w ? c.w(S) : 0.0;
    op.z[i] = c.z ? c.z(S) : 0.0;
    op.g[i] = c.g ? c.g(S) : 0.0;
    double bj = op.g[i];
    for (int col = st.d2.first(j); col < st.d2.first(j) + st.d2.width(j); ++col) {
      const double a = op.p[i] * st.d2.coeff(j, col) + op.w[i] * st.d1.coeff(j, col);
      if (col == 0) bj += a * left_value;
      else if (col == M + 1) bj += a * right_value;
      else op.L.at(i, col - 1) += a;
    }
    op.L.at(i, i) += op.z[i];
    op.b[i] = bj;
  }
  return op;
}

DiscreteOperator assemble_operator(const Grid& grid, const Coefficients& c, double left_value,
                                   double right_value) {
  return assemble_operator(grid, GridStencils(grid), c, left_value, right_value);
}

BandMatrix shifted_operator(const BandMatrix& L, double c, double k) {
  BandMatrix A = L;
  A.affine(c, -k);
  return A;
}

BandMatrix assemble_bdf4_matrix(const BandMatrix& L, double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("assemble_bdf4_matrix: need k >= 0");
  return shifted_operator(L, 25.0 / 12.0, k);
}

}  // namespace fbdc
