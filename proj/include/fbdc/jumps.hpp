#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "fbdc/fdcore.hpp"
#include "fbdc/grid.hpp"
#include "fbdc/penalty.hpp"

namespace fbdc {

/// Front location and derivative jumps, penalty side minus PDE side.
struct JumpData {
  int m = 0;          // S_m <= front < S_{m+1}
  double front = 0.0;
  std::array<double, 3> jump{};  // jumps in V'', V''', V''''
  int max_order = 1;             // highest populated derivative order, 1 when none

  double d2() const { return jump[0]; }
  double d3() const { return jump[1]; }
  double d4() const { return jump[2]; }
};

struct CorrectionVectors {
  Eigen::VectorXd a1, a2;
};

/// Last active node of a left penalty block {1,..,1,0,..,0}, in node numbering.
int locate_penalty_front(const Indicator& indicator);

/// As above, ignoring active nodes whose penalty force rho (V* - V) is at most
/// `negligible` (rounding-level activity far from the front).
int locate_penalty_front(const Indicator& indicator, const Eigen::VectorXd& force, double negligible);

/// Fourth-order one-sided estimates of the order-th derivative at S_{m+2}..S_{m+6},
/// built only from values at nodes >= m+2. `values` holds S_0..S_{M+1}.
Eigen::VectorXd one_sided_derivatives(const Eigen::VectorXd& values, const Grid& grid, int m, int order);

/// Lagrange interpolant through (nodes, values) evaluated at x.
double extrapolate_to_front(const Eigen::VectorXd& values, const Eigen::VectorXd& nodes, double x);

/// Interpolating polynomial of the PDE-side solution through S_{m+2}..S_{m+2+degree}.
struct PdeSideFit {
  Eigen::VectorXd nodes, values;
  double derivative(double x, int order) const;
};

PdeSideFit pde_side_fit(const Eigen::VectorXd& values, const Grid& grid, int m, int degree);

struct RootResult {
  double x = 0.0;
  int iterations = 0;
  bool ok = false;
};

/// Newton on f with bisection safeguard inside [lo, hi] when f changes sign there;
/// otherwise plain Newton from x0, accepted only if it settles within one bracket
/// width of the bracket.
RootResult locate_free_boundary(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                double x0, double lo, double hi, double tol);

/// Right-hand-side terms cancelling the truncation error of every stencil that
/// straddles the front. p and w are the coefficient samples at S_1..S_M.
CorrectionVectors correction_vectors(const Grid& grid, const GridStencils& st, const Eigen::VectorXd& p,
                                     const Eigen::VectorXd& w, const JumpData& jumps);

}  // namespace fbdc
