#include "fbdc/penalty.hpp"

#include <stdexcept>

namespace fbdc {

PenaltyResult penalty_iterate(const PenaltyProblem& pb, const Eigen::VectorXd& initial_guess) {
  const Eigen::Index n = pb.y.size();
  if (pb.A.rows() != n || pb.obstacle.size() != n || initial_guess.size() != n)
    throw std::invalid_argument("penalty_iterate: size mismatch");
  PenaltyResult r;
  r.rho_dominant = pb.rho >= 1e3 * pb.A.max_abs();
  r.solution = initial_guess;
  Indicator active = pb.obstacle.array() > r.solution.array();
  for (r.iterations = 1; r.iterations <= pb.max_iter; ++r.iterations) {
    const Eigen::VectorXd shift = pb.rho * active.cast<double>().matrix();
    BandMatrix K = pb.A;
    K.add_diagonal(shift);
    Eigen::VectorXd next = BandLU(K).solve(pb.y + shift.cwiseProduct(pb.obstacle));
    const double update =
        ((next - r.solution).array().abs() / next.array().abs().max(1.0)).maxCoeff();
    r.solution = std::move(next);
    Indicator fresh = pb.obstacle.array() > r.solution.array();
    const bool same = (fresh == active).all();
    active = std::move(fresh);
    if (same || update <= pb.tol) {
      r.converged = true;
      break;
    }
  }
  if (!r.converged) r.iterations = pb.max_iter;
  r.indicator = active;
  return r;
}

PenaltyResult penalty_iterate(const PenaltyProblem& problem) { return penalty_iterate(problem, problem.obstacle); }

bool complementarity_holds(const Eigen::VectorXd& v, const Indicator& indicator, const Eigen::VectorXd& obstacle,
                           double rho, double factor) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double eps = factor * std::max(1.0, std::abs(obstacle[i])) / rho;
    if (indicator[i] ? std::abs(v[i] - obstacle[i]) > eps : v[i] < obstacle[i] - eps) return false;
  }
  return true;
}

}  // namespace fbdc
