#include "fbdc/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbdc {

int locate_penalty_front(const Indicator& indicator) {
  const Eigen::Index n = indicator.size();
  Eigen::Index count = indicator.count();
  if (count == 0) throw std::runtime_error("locate_penalty_front: no penalty region");
  if (!indicator.head(count).all()) throw std::runtime_error("locate_penalty_front: non-monotone indicator");
  if (count == n) throw std::runtime_error("locate_penalty_front: no PDE region");
  return static_cast<int>(count);
}

int locate_penalty_front(const Indicator& indicator, const Eigen::VectorXd& force, double negligible) {
  if (force.size() != indicator.size()) throw std::invalid_argument("locate_penalty_front: size mismatch");
  const Indicator significant = indicator && (force.array() > negligible);
  return locate_penalty_front(significant);
}

Eigen::VectorXd one_sided_derivatives(const Eigen::VectorXd& values, const Grid& grid, int m, int order) {
  const int last = grid.M() + 1;
  if (m + 7 > last) throw std::runtime_error("one_sided_derivatives: not enough nodes right of the front");
  Eigen::VectorXd out(5);
  for (int q = 0; q < 5; ++q) {
    const int first = std::min(m + 2 + std::max(0, q - 2), last - 5);
    out[q] = fd_weights(grid.nodes.segment(first, 6), grid[m + 2 + q], order).dot(values.segment(first, 6));
  }
  return out;
}

double extrapolate_to_front(const Eigen::VectorXd& values, const Eigen::VectorXd& nodes, double x) {
  return fd_weights(nodes, x, 0).dot(values);
}

double PdeSideFit::derivative(double x, int order) const {
  if (order > nodes.size() - 1) return 0.0;
  return fd_weights(nodes, x, order).dot(values);
}

PdeSideFit pde_side_fit(const Eigen::VectorXd& values, const Grid& grid, int m, int degree) {
  const int first = m + 2;
  if (first + degree > grid.M() + 1) throw std::runtime_error("pde_side_fit: not enough nodes right of the front");
  return PdeSideFit{grid.nodes.segment(first, degree + 1), values.segment(first, degree + 1)};
}

RootResult locate_free_boundary(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                double x0, double lo, double hi, double tol) {
  RootResult r;
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0, true};
  if (fhi == 0.0) return {hi, 0, true};
  if ((flo < 0.0) != (fhi < 0.0)) {
    double a = lo, b = hi, fa = flo;
    double x = std::clamp(x0, lo, hi);
    for (r.iterations = 1; r.iterations <= 200; ++r.iterations) {
      const double fx = f(x);
      if (fx == 0.0) return {x, r.iterations, true};
      if ((fx < 0.0) == (fa < 0.0)) { a = x; fa = fx; } else { b = x; }
      const double d = df(x);
      double next = d != 0.0 ? x - fx / d : 0.5 * (a + b);
      if (!(next > std::min(a, b) && next < std::max(a, b))) next = 0.5 * (a + b);
      if (std::abs(next - x) <= tol) return {next, r.iterations, true};
      x = next;
    }
    return {x, r.iterations, false};
  }
  const double width = hi - lo;
  double x = x0;
  for (r.iterations = 1; r.iterations <= 60; ++r.iterations) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double step = f(x) / d;
    x -= step;
    if (!std::isfinite(x) || x < lo - width || x > hi + width) break;
    if (std::abs(step) <= tol) return {x, r.iterations, true};
  }
  return {0.5 * (lo + hi), r.iterations, false};
}

CorrectionVectors correction_vectors(const Grid& grid, const GridStencils& st, const Eigen::VectorXd& p,
                                     const Eigen::VectorXd& w, const JumpData& jd) {
  const int M = grid.M();
  CorrectionVectors cv{Eigen::VectorXd::Zero(M), Eigen::VectorXd::Zero(M)};
  const double sf = jd.front;
  // Penalty-side value minus smooth PDE-side extension at distance d from the front,
  // truncated after the highest populated jump order.
  auto gap = [&](double d) {
    double s = 0.0, term = d;
    for (int k = 2; k <= std::min(jd.max_order, 4); ++k) {
      term *= d / k;
      s += term * jd.jump[k - 2];
    }
    return s;
  };
  for (int i = 1; i <= M; ++i) {
    const bool left = grid[i] <= sf;
    const double sgn = left ? 1.0 : -1.0;
    double c1 = 0.0, c2 = 0.0;
    for (int j = st.d2.first(i); j < st.d2.first(i) + st.d2.width(i); ++j) {
      if ((grid[j] <= sf) == left) continue;
      const double g = sgn * gap(grid[j] - sf);
      c2 += st.d2.coeff(i, j) * g;
      c1 += st.d1.coeff(i, j) * g;
    }
    cv.a2[i - 1] = p[i - 1] * c2;
    cv.a1[i - 1] = w[i - 1] * c1;
  }
  return cv;
}

}  // namespace fbdc
