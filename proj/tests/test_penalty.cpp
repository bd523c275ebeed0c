#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fbdc/penalty.hpp"

using namespace fbdc;

namespace {

BandMatrix tridiagonal(int n, double diag, double off) {
  BandMatrix A(n, 1, 1);
  for (int i = 0; i < n; ++i) {
    A.at(i, i) = diag;
    if (i > 0) A.at(i, i - 1) = off;
    if (i + 1 < n) A.at(i, i + 1) = off;
  }
  return A;
}

// Enumerates all active sets of a small penalized system and returns the self-consistent one.
Eigen::VectorXd brute_force(const BandMatrix& A, const Eigen::VectorXd& y, const Eigen::VectorXd& obs, double rho,
                            int* count) {
  const int n = static_cast<int>(y.size());
  Eigen::VectorXd found;
  *count = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::MatrixXd K = A.dense();
    Eigen::VectorXd rhs = y;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        K(i, i) += rho;
        rhs[i] += rho * obs[i];
      }
    const Eigen::VectorXd v = K.fullPivLu().solve(rhs);
    bool consistent = true;
    for (int i = 0; i < n; ++i) consistent = consistent && ((mask >> i & 1) == (obs[i] > v[i]));
    if (consistent) {
      found = v;
      ++*count;
    }
  }
  return found;
}

}  // namespace

TEST_CASE("penalty iteration matches exhaustive active-set search on 3 unknowns") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const BandMatrix A = tridiagonal(3, 2.0 + std::abs(u(rng)), -1.0);
    Eigen::VectorXd y(3), obs(3);
    for (int i = 0; i < 3; ++i) {
      y[i] = u(rng);
      obs[i] = u(rng);
    }
    PenaltyProblem pb{A, y, obs, 1e6, 1e-12, 50};
    const PenaltyResult r = penalty_iterate(pb, Eigen::VectorXd::Zero(3));
    int count = 0;
    const Eigen::VectorXd ref = brute_force(A, y, obs, pb.rho, &count);
    REQUIRE(count == 1);
    CHECK(r.converged);
    CHECK((r.solution - ref).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(complementarity_holds(r.solution, r.indicator, obs, pb.rho));
  }
}

TEST_CASE("large penalty approaches the linear complementarity solution") {
  const int n = 30;
  const BandMatrix A = tridiagonal(n, 2.0, -1.0);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(n, -0.01), obs(n);
  for (int i = 0; i < n; ++i) obs[i] = 0.2 - std::pow((i - n / 2.0) / n, 2);
  PenaltyProblem pb{A, y, obs, 1e10, 1e-12, 100};
  const PenaltyResult r = penalty_iterate(pb);
  REQUIRE(r.converged);
  const Eigen::VectorXd res = A * r.solution - y;
  for (int i = 0; i < n; ++i) {
    CHECK(r.solution[i] >= obs[i] - 1e-8);
    CHECK(res[i] >= -1e-8);
    CHECK(std::abs(res[i] * (r.solution[i] - obs[i])) <= 1e-8);
  }
  CHECK(r.rho_dominant);
}

TEST_CASE("warm start from a converged solution needs one iteration") {
  const BandMatrix A = tridiagonal(10, 2.0, -1.0);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(10, -0.05), obs = Eigen::VectorXd::Constant(10, -0.1);
  PenaltyProblem pb{A, y, obs, 1e8, 1e-9, 100};
  const PenaltyResult first = penalty_iterate(pb, Eigen::VectorXd::Zero(10));
  const PenaltyResult again = penalty_iterate(pb, first.solution);
  CHECK(again.iterations == 1);
  CHECK((again.solution - first.solution).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("no active nodes reduces to a linear solve") {
  const BandMatrix A = tridiagonal(5, 3.0, -1.0);
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(5);
  PenaltyProblem pb{A, y, Eigen::VectorXd::Constant(5, -100.0), 1e8, 1e-9, 10};
  const PenaltyResult r = penalty_iterate(pb, Eigen::VectorXd::Zero(5));
  CHECK(!r.indicator.any());
  CHECK((A * r.solution - y).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("complementarity check flags violations") {
  Eigen::VectorXd v(2), obs(2);
  v << 1.0, 0.0;
  obs << 1.0, 0.5;
  Indicator ind(2);
  ind << true, false;
  CHECK(!complementarity_holds(v, ind, obs, 1e8));
  v[1] = 0.6;
  CHECK(complementarity_holds(v, ind, obs, 1e8));
  v[0] = 0.9;
  CHECK(!complementarity_holds(v, ind, obs, 1e8));
}

TEST_CASE("size mismatch is rejected") {
  PenaltyProblem pb{tridiagonal(3, 2.0, -1.0), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)};
  CHECK_THROWS_AS(penalty_iterate(pb, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}
