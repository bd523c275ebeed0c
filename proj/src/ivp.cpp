#include "fbdc/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbdc/penalty.hpp"

namespace fbdc {

namespace {

struct Level {
  double tau = 0.0;
  DiscreteOperator op;
  Eigen::VectorXd obstacle;
};

Coefficient at_time(const TimeFn& f, double tau) {
  if (!f) return {};
  return [f, tau](double s) { return f(tau, s); };
}

Level level_at(const IvpProblem& pb, const GridStencils& st, double tau) {
  const Coefficients c{at_time(pb.coeffs.p, tau), at_time(pb.coeffs.w, tau), at_time(pb.coeffs.z, tau),
                       at_time(pb.coeffs.g, tau)};
  Level lv{tau, assemble_operator(pb.grid, st, c, pb.left_value(tau), pb.right_value(tau)),
           Eigen::VectorXd(pb.grid.M())};
  for (int j = 1; j <= pb.grid.M(); ++j) lv.obstacle[j - 1] = pb.obstacle(tau, pb.grid[j], 0);
  return lv;
}

Eigen::VectorXd full_vector(const IvpProblem& pb, double tau, const Eigen::VectorXd& interior) {
  Eigen::VectorXd v(interior.size() + 2);
  v << pb.left_value(tau), interior, pb.right_value(tau);
  return v;
}

void push(std::array<Eigen::VectorXd, 4>& h, const Eigen::VectorXd& v) {
  for (int i = 3; i > 0; --i) h[i] = std::move(h[i - 1]);
  h[0] = v;
}

// RK4 on the linear part, projecting each stage onto V >= V*: the stiff limit of
// the penalty source, which an explicit stage cannot integrate at rho = 1e8.
Eigen::VectorXd rk4_projected(const Level& a, const Level& mid, const Level& e, const Eigen::VectorXd& v, double k) {
  auto f = [](const Level& lv, const Eigen::VectorXd& x) -> Eigen::VectorXd { return lv.op.L * x + lv.op.b; };
  const Eigen::VectorXd k1 = f(a, v);
  const Eigen::VectorXd k2 = f(mid, (v + 0.5 * k * k1).cwiseMax(mid.obstacle));
  const Eigen::VectorXd k3 = f(mid, (v + 0.5 * k * k2).cwiseMax(mid.obstacle));
  const Eigen::VectorXd k4 = f(e, (v + k * k3).cwiseMax(e.obstacle));
  Eigen::VectorXd out = (v + k / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).cwiseMax(e.obstacle);
  if (!out.allFinite()) throw std::runtime_error("RK4 startup produced non-finite values; use smaller first steps");
  return out;
}

}  // namespace

Eigen::VectorXd bdf4_rhs(const std::array<Eigen::VectorXd, 4>& h, const Eigen::VectorXd& b, double k) {
  return k * b + 4.0 * h[0] - 3.0 * h[1] + (4.0 / 3.0) * h[2] - 0.25 * h[3];
}

IvpResult solve_ivp(const IvpProblem& pb) {
  const Grid& grid = pb.grid;
  const int M = grid.M();
  const int P = pb.phases;
  if (M < 7) throw std::invalid_argument("solve_ivp: need M >= 7");
  if (P < 1 || P > 4) throw std::invalid_argument("solve_ivp: phases must be 1..4");
  if (pb.steps < 4) throw std::invalid_argument("solve_ivp: need at least 4 steps");
  if (pb.startup == Startup::exact && !pb.exact) throw std::invalid_argument("solve_ivp: exact startup needs a solution");

  const GridStencils st(grid);
  const double k = pb.tau_end / pb.steps;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  IvpResult res;
  res.iterations.assign(P, 0);
  res.max_iterations.assign(P, 0);
  res.front.assign(pb.steps + 1, nan);
  res.front_m.assign(pb.steps + 1, -1);

  Eigen::VectorXd v0(M);
  for (int j = 1; j <= M; ++j) v0[j - 1] = pb.initial(grid[j]);
  std::vector<std::array<Eigen::VectorXd, 4>> hist(P);
  for (auto& h : hist) h.fill(v0);

  auto record = [&](const PenaltyResult& pr, const Eigen::VectorXd& obstacle, double rho, int phase) {
    res.iterations[phase] += pr.iterations;
    res.max_iterations[phase] = std::max(res.max_iterations[phase], pr.iterations);
    res.converged = res.converged && pr.converged;
    res.complementarity = res.complementarity && complementarity_holds(pr.solution, pr.indicator, obstacle, rho);
  };

  std::vector<Eigen::VectorXd> current(P);
  for (int n = 1; n <= pb.steps; ++n) {
    const double tau = n == pb.steps ? pb.tau_end : n * k;
    const Level lv = level_at(pb, st, tau);

    if (n <= 3) {
      Eigen::VectorXd v(M);
      if (pb.startup == Startup::exact) {
        for (int j = 1; j <= M; ++j) v[j - 1] = pb.exact(tau, grid[j]);
      } else if (n == 1) {
        v = rk4_projected(level_at(pb, st, 0.0), level_at(pb, st, 0.5 * k), lv, v0, k);
      } else if (n == 2) {
        const Level l0 = level_at(pb, st, 0.0), l1 = level_at(pb, st, k);
        const Eigen::VectorXd& v1 = hist[0][0];
        PenaltyProblem sys{shifted_operator(lv.op.L, 1.0, k / 3.0),
                           v0 + k / 3.0 * (4.0 * (l1.op.L * v1) + l0.op.L * v0) +
                               k / 3.0 * (lv.op.b + 4.0 * l1.op.b + l0.op.b),
                           lv.obstacle, 2.0 * pb.rho, pb.tol, pb.max_iter};
        const PenaltyResult pr = penalty_iterate(sys, v1);
        record(pr, lv.obstacle, sys.rho, 0);
        v = pr.solution;
      } else {
        PenaltyProblem sys{shifted_operator(lv.op.L, 11.0 / 6.0, k),
                           3.0 * hist[0][0] - 1.5 * hist[0][1] + hist[0][2] / 3.0 + k * lv.op.b, lv.obstacle,
                           pb.rho, pb.tol, pb.max_iter};
        const PenaltyResult pr = penalty_iterate(sys, hist[0][0]);
        record(pr, lv.obstacle, pb.rho, 0);
        v = pr.solution;
      }
      for (int l = 0; l < P; ++l) {
        push(hist[l], v);
        current[l] = v;
      }
      if (pb.on_step) pb.on_step(n, tau, current);
      continue;
    }

    const BandMatrix A = assemble_bdf4_matrix(lv.op.L, k);
    const bool correct = n > pb.t_skip;
    CorrectionVectors corr{Eigen::VectorXd::Zero(M), Eigen::VectorXd::Zero(M)};
    double front_guess = nan;
    bool degraded = false;
    for (int l = 0; l < P; ++l) {
      if (l >= 1 && !correct) {
        current[l] = current[0];
        push(hist[l], current[l]);
        continue;
      }
      PenaltyProblem sys{A, bdf4_rhs(hist[l], lv.op.b, k), lv.obstacle, pb.rho, pb.tol, pb.max_iter};
      if (l >= 1) sys.y += k * (corr.a1 + corr.a2);
      const PenaltyResult pr = penalty_iterate(sys, l == 0 ? hist[0][0] : current[l - 1]);
      record(pr, lv.obstacle, pb.rho, l);
      current[l] = pr.solution;
      push(hist[l], current[l]);
      if (!correct) continue;

      FrontEstimate est;
      try {
        const Eigen::VectorXd force = pb.rho * (lv.obstacle - pr.solution);
        const double negligible = 1e-8 * force.maxCoeff();
        const int m = locate_penalty_front(pr.indicator, force, negligible);
        const double x0 = std::isnan(front_guess) ? 0.5 * (grid[m] + grid[m + 1]) : front_guess;
        auto obstacle = [&](double s, int d) { return pb.obstacle(tau, s, d); };
        est = estimate_front(grid, full_vector(pb, tau, current[l]), m, l, obstacle, x0);
      } catch (const std::runtime_error&) {
        est.ok = false;
      }
      if (est.ok) {
        front_guess = est.jumps.front;
        corr = correction_vectors(grid, st, lv.op.p, lv.op.w, est.jumps);
        if (l == P - 1) {
          res.front[n] = est.jumps.front;
          res.front_m[n] = est.jumps.m;
        }
      } else {
        if (l < P - 1) degraded = true;
        corr.a1.setZero();
        corr.a2.setZero();
      }
    }
    if (degraded) ++res.degraded_steps;
    if (pb.on_step) pb.on_step(n, tau, current);
  }

  for (int l = 0; l < P; ++l) res.solution.push_back(full_vector(pb, pb.tau_end, current[l]));
  return res;
}

}  // namespace fbdc
