#include "fbdc/bvp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbdc/penalty.hpp"

namespace fbdc {

FrontEstimate estimate_front(const Grid& grid, const Eigen::VectorXd& full, int m, int phase,
                             const std::function<double(double, int)>& obstacle, double initial_front) {
  FrontEstimate est;
  const int degree = phase + 2;
  if (m < 1 || m + 2 + degree > grid.M() + 1) return est;
  const PdeSideFit fit = pde_side_fit(full, grid, m, degree);
  auto f = [&](double s) { return fit.derivative(s, 1) - obstacle(s, 1); };
  auto df = [&](double s) { return fit.derivative(s, 2) - obstacle(s, 2); };
  const double lo = grid[m], hi = grid[std::min(m + 2, grid.M() + 1)];
  const double tol = 1e-12 * (grid[grid.M() + 1] - grid[0]);
  const RootResult root = locate_free_boundary(f, df, initial_front, lo, hi, tol);
  if (!root.ok) return est;
  est.jumps.front = root.x;
  est.jumps.m = grid.cell_of(root.x);
  est.jumps.max_order = std::min(degree, 4);
  for (int d = 2; d <= est.jumps.max_order; ++d)
    est.jumps.jump[d - 2] = obstacle(root.x, d) - fit.derivative(root.x, d);
  est.ok = true;
  return est;
}

std::vector<PhaseResult> solve_bvp(const BvpProblem& pb, int phases) {
  if (phases < 1 || phases > 4) throw std::invalid_argument("solve_bvp: phases must be 1..4");
  const Grid& grid = pb.grid;
  const int M = grid.M();
  if (M < 7) throw std::invalid_argument("solve_bvp: need M >= 7");
  const GridStencils st(grid);
  const DiscreteOperator op = assemble_operator(grid, st, pb.coeffs, pb.left_value, pb.right_value);

  Eigen::VectorXd obstacle(M);
  for (int j = 1; j <= M; ++j) obstacle[j - 1] = pb.obstacle(grid[j], 0);

  PenaltyProblem sys{op.L, op.b, obstacle, pb.rho, pb.tol, pb.max_iter};
  sys.A.affine(0.0, -1.0);

  Eigen::VectorXd guess = pb.initial_guess.value_or(obstacle);
  CorrectionVectors corr{Eigen::VectorXd::Zero(M), Eigen::VectorXd::Zero(M)};
  double front_guess = std::numeric_limits<double>::quiet_NaN();
  std::vector<PhaseResult> out;

  for (int ph = 0; ph < phases; ++ph) {
    sys.y = op.b + corr.a1 + corr.a2;
    const PenaltyResult pr = penalty_iterate(sys, guess);
    PhaseResult res;
    res.phase = ph;
    res.solution.resize(M + 2);
    res.solution << pb.left_value, pr.solution, pb.right_value;
    res.iterations = pr.iterations;
    res.converged = pr.converged;
    res.complementarity = complementarity_holds(pr.solution, pr.indicator, obstacle, pb.rho);

    int m = -1;
    try {
      m = locate_penalty_front(pr.indicator);
    } catch (const std::runtime_error&) {
    }
    if (m > 0) {
      const double x0 = std::isnan(front_guess) ? 0.5 * (grid[m] + grid[m + 1]) : front_guess;
      const FrontEstimate est = estimate_front(grid, res.solution, m, ph, pb.obstacle, x0);
      res.front_ok = est.ok;
      if (est.ok) {
        res.jumps = est.jumps;
        res.front = est.jumps.front;
        front_guess = res.front;
      }
    }
    guess = pr.solution;
    const bool stop = !res.front_ok;
    out.push_back(std::move(res));
    if (stop) break;
    corr = correction_vectors(grid, st, op.p, op.w, out.back().jumps);
  }
  return out;
}

std::vector<double> observed_order(const std::vector<double>& e) {
  std::vector<double> out;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const double a = std::abs(e[i - 1]), b = std::abs(e[i]);
    out.push_back(a > 0.0 && b > 0.0 ? std::log2(a / b) : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

double probe_value(const Grid& grid, const Eigen::VectorXd& full, double x, int first_node) {
  const int last = grid.M() + 1;
  const int m = grid.cell_of(x);
  const double tol = 1e-12 * (grid[last] - grid[0]);
  if (std::abs(grid[m] - x) <= tol) return full[m];
  if (m + 1 <= last && std::abs(grid[m + 1] - x) <= tol) return full[m + 1];
  int first = std::clamp(m - 2, std::max(0, first_node), last - 5);
  if (first < 0) throw std::runtime_error("probe_value: grid too small");
  return extrapolate_to_front(full.segment(first, 6), grid.nodes.segment(first, 6), x);
}

}  // namespace fbdc
