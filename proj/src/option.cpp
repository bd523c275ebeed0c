#include "fbdc/option.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fbdc {

double EuropeanGreeks::operator[](int order) const {
  switch (order) {
    case 0: return value;
    case 1: return dS;
    case 2: return dSS;
    case 3: return dSSS;
    case 4: return dSSSS;
    default: throw std::out_of_range("EuropeanGreeks: order must be 0..4");
  }
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

EuropeanGreeks european_put(const MarketParams& mp, double t, double S) {
  if (t < 0.0 || S < 0.0) throw std::domain_error("european_put: need t >= 0 and S >= 0");
  EuropeanGreeks g;
  if (t == 0.0) {
    g.value = std::max(mp.K - S, 0.0);
    g.dS = S < mp.K ? -1.0 : 0.0;
    return g;
  }
  const double disc = std::exp(-mp.r * t), carry = std::exp(-mp.d * t);
  if (S == 0.0) {
    g.value = mp.K * disc;
    g.dS = -carry;
    return g;
  }
  const double s = mp.sigma * std::sqrt(t);
  const double d1 = (std::log(S / mp.K) + (mp.r - mp.d + 0.5 * mp.sigma * mp.sigma) * t) / s;
  const double d2 = d1 - s;
  g.value = mp.K * disc * norm_cdf(-d2) - S * carry * norm_cdf(-d1);
  g.dS = -carry * norm_cdf(-d1);
  g.dSS = carry * norm_pdf(d1) / (S * s);
  const double a = 1.0 + d1 / s;
  g.dSSS = -g.dSS * a / S;
  g.dSSSS = -g.dSSS * a / S + g.dSS * a / (S * S) - g.dSS / (s * s * S * S);
  return g;
}

IvpProblem american_difference_problem(const AmericanConfig& cfg) {
  const MarketParams mp = cfg.market;
  if (!(mp.sigma > 0.0 && mp.K > 0.0 && mp.T > 0.0)) throw std::invalid_argument("american: invalid market parameters");
  IvpProblem pb;
  pb.grid = stretched_grid(cfg.nx - 2, cfg.stretch);
  pb.tau_end = std::sqrt(mp.T);
  pb.steps = cfg.nt;
  // dV/dtau = 2 tau L_BS V with t = tau^2
  pb.coeffs.p = [mp](double tau, double S) { return tau * mp.sigma * mp.sigma * S * S; };
  pb.coeffs.w = [mp](double tau, double S) { return 2.0 * tau * (mp.r - mp.d) * S; };
  pb.coeffs.z = [mp](double tau, double) { return -2.0 * tau * mp.r; };
  pb.obstacle = [mp](double tau, double S, int order) {
    double payoff = 0.0;
    if (order == 0) payoff = std::max(mp.K - S, 0.0);
    else if (order == 1) payoff = S < mp.K ? -1.0 : 0.0;
    return payoff - european_put(mp, tau * tau, S)[order];
  };
  pb.left_value = [mp](double tau) { return mp.K - european_put(mp, tau * tau, 0.0).value; };
  pb.right_value = [](double) { return 0.0; };
  pb.initial = [](double) { return 0.0; };
  pb.startup = Startup::rk4_threelevel_bdf3;
  pb.rho = cfg.rho;
  pb.tol = cfg.tol;
  pb.max_iter = cfg.max_iter;
  pb.t_skip = cfg.t_skip;
  pb.phases = cfg.phases;
  return pb;
}

AmericanResult price_american_put(const AmericanConfig& cfg) {
  IvpProblem pb = american_difference_problem(cfg);
  AmericanResult out;
  const double floor = -1e3 / cfg.rho;
  pb.on_step = [&](int, double tau, const std::vector<Eigen::VectorXd>& v) {
    out.tau.push_back(tau);
    if (v.back().minCoeff() < floor) out.premium_nonnegative = false;
  };
  const IvpResult r = solve_ivp(pb);
  out.european = european_put(cfg.market, cfg.market.T, cfg.market.K).value;
  const int m = r.front_m.back();
  for (const Eigen::VectorXd& v : r.solution)
    out.price.push_back(probe_value(pb.grid, v, cfg.market.K, m >= 0 ? m + 1 : 0) + out.european);
  out.iterations = r.iterations;
  out.max_iterations = r.max_iterations;
  out.front.assign(r.front.begin() + 1, r.front.end());
  out.complementarity = r.complementarity;
  out.converged = r.converged;
  out.degraded_steps = r.degraded_steps;
  return out;
}

}  // namespace fbdc
