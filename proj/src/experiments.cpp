#include "fbdc/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbdc {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double obstacle_bvp_exact(double x) { return x >= 0.0 ? std::expm1(x) : x; }

BvpProblem obstacle_bvp(int intervals, double rho, double tol) {
  BvpProblem pb;
  pb.grid = uniform_grid(-1.0, 1.0, intervals - 1);
  pb.coeffs.p = [](double) { return 1.0; };
  pb.coeffs.z = [](double) { return -1.0; };
  pb.coeffs.g = [](double) { return -1.0; };
  pb.obstacle = [](double s, int order) { return order == 0 ? s : order == 1 ? 1.0 : 0.0; };
  pb.left_value = -1.0;
  pb.right_value = std::expm1(1.0);
  pb.rho = rho;
  pb.tol = tol;
  pb.initial_guess = Eigen::VectorXd::Ones(intervals - 1);
  return pb;
}

double moving_boundary_exact(double tau, double x) { return x >= -tau ? std::exp(x + tau) - tau - 1.0 : x; }

IvpProblem moving_boundary_problem(int nx, int nt, double rho, double tol, int phases) {
  IvpProblem pb;
  pb.grid = uniform_grid(-2.0, 2.0, nx - 1);
  pb.tau_end = std::sqrt(0.5);
  pb.steps = nt;
  pb.coeffs.p = [](double, double) { return 1.0; };
  pb.coeffs.g = [](double, double) { return -1.0; };
  pb.obstacle = [](double, double s, int order) { return order == 0 ? s : order == 1 ? 1.0 : 0.0; };
  pb.left_value = [](double) { return -2.0; };
  pb.right_value = [](double tau) { return moving_boundary_exact(tau, 2.0); };
  pb.initial = [](double s) { return moving_boundary_exact(0.0, s); };
  pb.exact = moving_boundary_exact;
  pb.startup = Startup::exact;
  pb.rho = rho;
  pb.tol = tol;
  pb.max_iter = 500;
  pb.t_skip = 0;
  pb.phases = phases;
  return pb;
}

Study bvp_obstacle_study(const std::vector<int>& n, double rho, double probe, int phases, double tol) {
  Study s{"bvp-obstacle", probe, obstacle_bvp_exact(probe), {}};
  for (int N : n) {
    const BvpProblem pb = obstacle_bvp(N, rho, tol);
    const std::vector<PhaseResult> res = solve_bvp(pb, phases);
    LevelResult lr;
    lr.nx = N;
    for (const PhaseResult& r : res) {
      lr.value.push_back(probe_value(pb.grid, r.solution, probe));
      lr.front_error.push_back(r.front_ok ? r.front : kNaN);
      lr.iterations.push_back(r.iterations);
      lr.max_iterations.push_back(r.iterations);
      lr.complementarity = lr.complementarity && r.complementarity;
      lr.converged = lr.converged && r.converged;
    }
    lr.degraded = static_cast<int>(phases - res.size());
    s.levels.push_back(std::move(lr));
  }
  return s;
}

Study moving_boundary_study(const std::vector<int>& nx, const std::vector<int>& nt, double rho, double probe,
                            int phases, double tol) {
  if (nx.size() != nt.size()) throw std::invalid_argument("moving_boundary_study: nx and nt lists differ in length");
  Study s{"mb-test", probe, moving_boundary_exact(std::sqrt(0.5), probe), {}};
  for (std::size_t i = 0; i < nx.size(); ++i) {
    const IvpProblem pb = moving_boundary_problem(nx[i], nt[i], rho, tol, phases);
    const IvpResult r = solve_ivp(pb);
    LevelResult lr;
    lr.nx = nx[i];
    lr.nt = nt[i];
    for (const Eigen::VectorXd& v : r.solution) lr.value.push_back(probe_value(pb.grid, v, probe));
    lr.iterations = r.iterations;
    lr.max_iterations = r.max_iterations;
    lr.complementarity = r.complementarity;
    lr.converged = r.converged;
    lr.degraded = r.degraded_steps;
    s.levels.push_back(std::move(lr));
  }
  return s;
}

Study american_study(const AmericanConfig& base, const std::vector<int>& nx, const std::vector<int>& nt) {
  if (nx.size() != nt.size()) throw std::invalid_argument("american_study: nx and nt lists differ in length");
  Study s{"american", base.market.K, std::nullopt, {}};
  for (std::size_t i = 0; i < nx.size(); ++i) {
    AmericanConfig cfg = base;
    cfg.nx = nx[i];
    cfg.nt = nt[i];
    const AmericanResult r = price_american_put(cfg);
    LevelResult lr;
    lr.nx = nx[i];
    lr.nt = nt[i];
    lr.value = r.price;
    lr.iterations = r.iterations;
    lr.max_iterations = r.max_iterations;
    lr.complementarity = r.complementarity;
    lr.premium_nonnegative = r.premium_nonnegative;
    lr.converged = r.converged;
    lr.degraded = r.degraded_steps;
    s.levels.push_back(std::move(lr));
  }
  return s;
}

std::vector<double> phase_errors(const Study& s, int phase) {
  std::vector<double> e;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const auto& v = s.levels[i].value;
    if (phase >= static_cast<int>(v.size())) {
      e.push_back(kNaN);
    } else if (s.exact) {
      e.push_back(v[phase] - *s.exact);
    } else if (i == 0 || phase >= static_cast<int>(s.levels[i - 1].value.size())) {
      e.push_back(kNaN);
    } else {
      e.push_back(v[phase] - s.levels[i - 1].value[phase]);
    }
  }
  return e;
}

std::vector<TableRow> table_rows(const Study& s) {
  std::vector<TableRow> rows;
  int phases = 0;
  for (const auto& l : s.levels) phases = std::max(phases, static_cast<int>(l.value.size()));
  std::vector<std::vector<double>> err;
  for (int ph = 0; ph < phases; ++ph) err.push_back(phase_errors(s, ph));
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const LevelResult& l = s.levels[i];
    int niters = 0;
    for (int ph = 0; ph < static_cast<int>(l.value.size()); ++ph) {
      niters += l.iterations[ph];
      const double e = err[ph][i];
      double conv = kNaN;
      if (i > 0 && std::isfinite(e) && std::isfinite(err[ph][i - 1]) && e != 0.0)
        conv = std::log2(std::abs(err[ph][i - 1]) / std::abs(e));
      rows.push_back({static_cast<int>(i), l.nx, l.nt, ph + 1, niters, l.value[ph], e, conv});
    }
  }
  return rows;
}

}  // namespace fbdc
