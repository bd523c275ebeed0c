#include "fbdc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fbdc {

double Grid::min_spacing() const {
  return (nodes.tail(nodes.size() - 1) - nodes.head(nodes.size() - 1)).minCoeff();
}

double Grid::max_spacing() const {
  return (nodes.tail(nodes.size() - 1) - nodes.head(nodes.size() - 1)).maxCoeff();
}

int Grid::cell_of(double x) const {
  const double* begin = nodes.data();
  const double* it = std::upper_bound(begin, begin + nodes.size(), x);
  int m = static_cast<int>(it - begin) - 1;
  return std::clamp(m, 0, M());
}

Grid make_grid(Eigen::VectorXd nodes) {
  if (nodes.size() < 3) throw std::invalid_argument("grid needs at least one interior node");
  for (Eigen::Index j = 1; j < nodes.size(); ++j)
    if (!(nodes[j] > nodes[j - 1])) throw std::invalid_argument("grid nodes must be strictly increasing");
  return Grid{std::move(nodes)};
}

Grid uniform_grid(double a, double b, int M) {
  if (!(a < b)) throw std::invalid_argument("uniform_grid: need a < b");
  if (M < 1) throw std::invalid_argument("uniform_grid: need M >= 1");
  Eigen::VectorXd s(M + 2);
  const double h = (b - a) / (M + 1);
  for (int j = 0; j <= M + 1; ++j) s[j] = a + j * h;
  s[M + 1] = b;
  return make_grid(std::move(s));
}

namespace {

void check(const StretchParams& p) {
  if (!(p.beta > 0.0 && p.beta <= 1.0)) throw std::invalid_argument("stretch: beta must lie in (0, 1]");
  if (!(p.alpha > 0.0)) throw std::invalid_argument("stretch: alpha must be positive");
  if (!(p.s_min < p.K && p.K < p.s_max)) throw std::invalid_argument("stretch: need s_min < K < s_max");
}

double amplitude(const StretchParams& p) {
  return 0.5 * std::sqrt(std::numbers::pi) * (1.0 - p.beta) / p.beta * p.alpha;
}

double c1(const StretchParams& p) {
  const double a = amplitude(p);
  const double span = std::erfc((p.s_max - p.K) / p.alpha) - std::erfc((p.s_min - p.K) / p.alpha);
  return 1.0 / ((p.s_max - p.s_min) - a * span);
}

}  // namespace

double stretch_map(double S, const StretchParams& p) {
  check(p);
  if (S < p.s_min || S > p.s_max) throw std::domain_error("stretch_map: S outside [s_min, s_max]");
  const double a = amplitude(p);
  const double C1 = c1(p);
  const double C2 = (a * std::erfc((p.s_min - p.K) / p.alpha) - p.s_min) * C1;
  return (S - a * std::erfc((S - p.K) / p.alpha)) * C1 + C2;
}

double stretch_map_derivative(double S, const StretchParams& p) {
  check(p);
  const double u = (S - p.K) / p.alpha;
  return c1(p) * (1.0 + (1.0 - p.beta) / p.beta * std::exp(-u * u));
}

Grid stretched_grid(int M, const StretchParams& p) {
  check(p);
  if (M < 1) throw std::invalid_argument("stretched_grid: need M >= 1");
  Eigen::VectorXd s(M + 2);
  s[0] = p.s_min;
  s[M + 1] = p.s_max;
  const double tol = 1e-13 * (p.s_max - p.s_min);
  for (int j = 1; j <= M; ++j) {
    const double target = static_cast<double>(j) / (M + 1);
    double lo = s[j - 1], hi = p.s_max;
    double x = std::clamp(p.s_min + target * (p.s_max - p.s_min), lo, hi);
    bool done = false;
    for (int it = 0; it < 200 && !done; ++it) {
      const double f = stretch_map(x, p) - target;
      if (f > 0.0) hi = x; else lo = x;
      double next = x - f / stretch_map_derivative(x, p);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      done = std::abs(next - x) <= tol || hi - lo <= tol;
      x = next;
    }
    if (!done) throw std::runtime_error("stretched_grid: root solve failed to converge");
    s[j] = x;
  }
  return make_grid(std::move(s));
}

TimeGrid time_grid(double T, int steps, TimeTransform transform) {
  if (!(T > 0.0)) throw std::invalid_argument("time_grid: need T > 0");
  if (steps < 4) throw std::invalid_argument("time_grid: need at least 4 steps");
  TimeGrid g{T, steps, transform, Eigen::VectorXd(steps + 1)};
  for (int n = 0; n <= steps; ++n) {
    const double f = static_cast<double>(n) / steps;
    g.times[n] = transform == TimeTransform::square ? T * (f * f) : T * f;
  }
  return g;
}

}  // namespace fbdc
