#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fbdc/fdcore.hpp"

using namespace fbdc;

namespace {

// Weights from the moment conditions sum_i w_i (x_i - x0)^k = k! [k == order], solved in long double.
Eigen::VectorXd vandermonde_weights(const Eigen::VectorXd& x, double x0, int order) {
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(x.size());
  LMat V(n, n);
  LVec rhs = LVec::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) V(k, i) = std::pow(static_cast<long double>(x[i]) - x0, k);
  long double fact = 1.0L;
  for (int k = 2; k <= order; ++k) fact *= k;
  rhs[order] = fact;
  const LVec w = V.fullPivLu().solve(rhs);
  return w.cast<double>();
}

BandMatrix random_band(int n, int kl, int ku, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandMatrix A(n, kl, ku);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) A.at(i, j) = u(rng);
  return A;
}

}  // namespace

TEST_CASE("fd weights agree with a long-double moment solve") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(6);
    for (int i = 0; i < 6; ++i) x[i] = i + u(rng);
    const double x0 = x[trial % 6] + (trial % 3) * 0.1;
    for (int order = 0; order <= 4; ++order) {
      const Eigen::VectorXd w = fd_weights(x, x0, order);
      const Eigen::VectorXd o = vandermonde_weights(x, x0, order);
      CHECK((w - o).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, o.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("classic centred weights") {
  Eigen::VectorXd x(5);
  x << -2, -1, 0, 1, 2;
  const Eigen::VectorXd w2 = fd_weights(x, 0.0, 2);
  const double e2[] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
  for (int i = 0; i < 5; ++i) CHECK(w2[i] == doctest::Approx(e2[i]).epsilon(1e-14));
  const Eigen::VectorXd w1 = fd_weights(x, 0.0, 1);
  const double e1[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  for (int i = 0; i < 5; ++i) CHECK(w1[i] == doctest::Approx(e1[i]).epsilon(1e-14));
}

TEST_CASE("fd weights reject degenerate input") {
  Eigen::VectorXd x(3);
  x << 0.0, 1.0, 1.0;
  CHECK_THROWS_AS(fd_weights(x, 0.5, 1), std::invalid_argument);
  Eigen::VectorXd y(2);
  y << 0.0, 1.0;
  CHECK_THROWS_AS(fd_weights(y, 0.5, 2), std::invalid_argument);
}

TEST_CASE("stencil windows") {
  CHECK(stencil_window(1, 10) == std::pair<int, int>{0, 6});
  CHECK(stencil_window(10, 10) == std::pair<int, int>{6, 6});
  CHECK(stencil_window(5, 10) == std::pair<int, int>{3, 5});
  CHECK_THROWS(stencil_window(1, 3));
}

TEST_CASE("band LU matches a dense solve, including zero pivots") {
  for (unsigned seed : {1u, 2u, 3u}) {
    BandMatrix A = random_band(40, 4, 4, seed);
    A.at(0, 0) = 0.0;  // forces a row exchange
    Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(40, -1.0, 2.0);
    const Eigen::VectorXd x = solve_banded(A, b);
    const Eigen::VectorXd ref = A.dense().fullPivLu().solve(b);
    CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-9 * ref.cwiseAbs().maxCoeff());
    CHECK((A * x - b).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("band LU reports singular matrices") {
  BandMatrix A(5, 1, 1);
  CHECK_THROWS(BandLU{A});
}

TEST_CASE("band matrix algebra") {
  BandMatrix A = random_band(6, 2, 1, 9);
  const Eigen::MatrixXd D = A.dense();
  BandMatrix B = A;
  B.affine(2.0, -3.0);
  CHECK((B.dense() - (2.0 * Eigen::MatrixXd::Identity(6, 6) - 3.0 * D)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS_AS(A.at(0, 5), std::out_of_range);
  CHECK(A(0, 5) == 0.0);
  const BandMatrix I = BandMatrix::identity(6, 2, 1, 4.0);
  CHECK((I * Eigen::VectorXd::Ones(6)).isApproxToConstant(4.0));
  A.add_diagonal(Eigen::VectorXd::Constant(6, 1.0));
  CHECK(A(3, 3) == doctest::Approx(D(3, 3) + 1.0));
}

TEST_CASE("assembled operator is exact on quartics up to the boundary rows") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  const int M = 15;
  Eigen::VectorXd nodes(M + 2);
  for (int j = 0; j <= M + 1; ++j) nodes[j] = 0.5 + (j + (j > 0 && j <= M ? u(rng) : 0.0)) / (M + 1);
  const Grid g = make_grid(nodes);
  auto f = [](double x) { return 1.0 + x - 2.0 * x * x + 0.5 * std::pow(x, 3) + 0.3 * std::pow(x, 4); };
  auto f1 = [](double x) { return 1.0 - 4.0 * x + 1.5 * x * x + 1.2 * std::pow(x, 3); };
  auto f2 = [](double x) { return -4.0 + 3.0 * x + 3.6 * x * x; };
  Coefficients c;
  c.p = [](double x) { return 1.0 + x * x; };
  c.w = [](double x) { return std::sin(x); };
  c.z = [](double) { return -0.7; };
  c.g = [](double x) { return std::exp(x); };
  const DiscreteOperator op = assemble_operator(g, c, f(nodes[0]), f(nodes[M + 1]));
  CHECK(op.L.kl() == 4);
  CHECK(op.L.ku() == 4);
  Eigen::VectorXd v(M);
  for (int j = 1; j <= M; ++j) v[j - 1] = f(nodes[j]);
  const Eigen::VectorXd r = op.L * v + op.b;
  for (int j = 1; j <= M; ++j) {
    const double x = nodes[j];
    const double exact = c.p(x) * f2(x) + c.w(x) * f1(x) + c.z(x) * f(x) + c.g(x);
    CHECK(r[j - 1] == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("shifted and BDF4 matrices") {
  const Grid g = uniform_grid(0.0, 1.0, 9);
  Coefficients c;
  c.p = [](double) { return 1.0; };
  const DiscreteOperator op = assemble_operator(g, c, 0.0, 0.0);
  const BandMatrix A = assemble_bdf4_matrix(op.L, 0.1);
  const Eigen::MatrixXd ref = 25.0 / 12.0 * Eigen::MatrixXd::Identity(9, 9) - 0.1 * op.L.dense();
  CHECK((A.dense() - ref).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(assemble_bdf4_matrix(op.L, -1.0), std::invalid_argument);
}
