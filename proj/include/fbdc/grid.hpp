#pragma once

#include <Eigen/Dense>

namespace fbdc {

/// Ordered space nodes S_0 < S_1 < ... < S_{M+1}; nodes 1..M are unknowns.
struct Grid {
  Eigen::VectorXd nodes;

  int M() const { return static_cast<int>(nodes.size()) - 2; }
  double operator[](int j) const { return nodes[j]; }
  double front_spacing(int j) const { return nodes[j + 1] - nodes[j]; }
  double min_spacing() const;
  double max_spacing() const;
  /// Index m with S_m <= x < S_{m+1}, clamped to [0, M].
  int cell_of(double x) const;
};

/// Parameters of the erfc stretching map centred at K.
struct StretchParams {
  double K = 100.0;
  double alpha = 125.0 / 6.0;
  double beta = 1.0 / 20.0;
  double s_min = 0.0;
  double s_max = 1000.0;
};

enum class TimeTransform { identity, square };

struct TimeGrid {
  double T = 0.0;
  int steps = 0;
  TimeTransform transform = TimeTransform::identity;
  Eigen::VectorXd times;
};

/// Validates strict monotonicity and at least one interior node.
Grid make_grid(Eigen::VectorXd nodes);

/// M interior nodes, spacing (b - a)/(M + 1).
Grid uniform_grid(double a, double b, int M);

double stretch_map(double S, const StretchParams& p);
double stretch_map_derivative(double S, const StretchParams& p);

/// Nodes solving xi(S_j) = j/(M+1), endpoints pinned to s_min and s_max.
Grid stretched_grid(int M, const StretchParams& p);

TimeGrid time_grid(double T, int steps, TimeTransform transform);

}  // namespace fbdc
