#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fbdc/experiments.hpp"

using namespace fbdc;

namespace {

// Maclaurin series of erf in long double; independent of the library erfc.
long double series_cdf(long double x) {
  const long double z = x / std::sqrt(2.0L);
  long double term = z, sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z * z / n;
    sum += term / (2 * n + 1);
  }
  return 0.5L + sum / std::sqrt(std::numbers::pi_v<long double>);
}

double oracle_put(const MarketParams& mp, double t, double S) {
  const long double s = mp.sigma * std::sqrt(static_cast<long double>(t));
  const long double d1 = (std::log(static_cast<long double>(S) / mp.K) + (mp.r + 0.5L * mp.sigma * mp.sigma) * t) / s;
  const long double d2 = d1 - s;
  return static_cast<double>(mp.K * std::exp(-static_cast<long double>(mp.r) * t) * series_cdf(-d2) -
                             S * series_cdf(-d1));
}

}  // namespace

TEST_CASE("payoff and limits") {
  const MarketParams mp;
  const EuropeanGreeks g = european_put(mp, 0.0, 80.0);
  CHECK(g.value == 20.0);
  CHECK(g.dS == -1.0);
  CHECK(european_put(mp, 0.25, 1e4 * mp.K).value <= 1e-8 * mp.K);
  CHECK(european_put(mp, 0.25, 0.0).value == doctest::Approx(mp.K * std::exp(-mp.r * 0.25)).epsilon(1e-12));
  CHECK_THROWS(european_put(mp, -1.0, 100.0));
  CHECK_THROWS(g[5]);
}

TEST_CASE("European put against a series oracle") {
  const MarketParams mp;
  for (double S : {80.0, 95.0, 100.0, 110.0}) CHECK(european_put(mp, 0.25, S).value == doctest::Approx(oracle_put(mp, 0.25, S)).epsilon(1e-12));
  CHECK(norm_cdf(0.0) == 0.5);
  CHECK(norm_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
}

TEST_CASE("analytic S-derivatives agree with central differences") {
  const MarketParams mp;
  const double h = 1e-4 * mp.K;
  for (double S : {85.0, 100.0, 120.0}) {
    const double t = 0.25;
    auto at = [&](double s) { return european_put(mp, t, s); };
    const EuropeanGreeks g = at(S), up = at(S + h), dn = at(S - h);
    CHECK(g.dS == doctest::Approx((up.value - dn.value) / (2 * h)).epsilon(1e-6));
    CHECK(g.dSS == doctest::Approx((up.value - 2 * g.value + dn.value) / (h * h)).epsilon(1e-5));
    const double H = 1e-2;
    CHECK(g.dSSS == doctest::Approx((at(S + H).dSS - at(S - H).dSS) / (2 * H)).epsilon(1e-6));
    CHECK(g.dSSSS == doctest::Approx((at(S + H).dSSS - at(S - H).dSSS) / (2 * H)).epsilon(1e-6));
  }
}

TEST_CASE("European put satisfies the Black-Scholes equation") {
  const MarketParams mp;
  for (double S : {70.0, 100.0, 130.0})
    for (double t : {0.05, 0.25}) {
      const double dt = 1e-5;
      const double Vt = (european_put(mp, t + dt, S).value - european_put(mp, t - dt, S).value) / (2 * dt);
      const EuropeanGreeks g = european_put(mp, t, S);
      const double L = 0.5 * mp.sigma * mp.sigma * S * S * g.dSS + mp.r * S * g.dS - mp.r * g.value;
      CHECK(std::abs(Vt - L) <= 1e-8 * mp.K * 100.0);
    }
}

TEST_CASE("American put: coarse price, premium and exercise boundary") {
  AmericanConfig cfg;
  cfg.phases = 1;
  const AmericanResult coarse = price_american_put(cfg);
  CHECK(coarse.price[0] == doctest::Approx(3.068602382).epsilon(2e-4 / 3.07));
  CHECK(coarse.complementarity);
  CHECK(coarse.premium_nonnegative);

  cfg.phases = 4;
  cfg.nx = 206;
  cfg.nt = 120;
  const AmericanResult r = price_american_put(cfg);
  CHECK(r.degraded_steps == 0);
  CHECK(r.price[0] > r.european);
  CHECK(r.front.back() == doctest::Approx(89.7).epsilon(0.5 / 89.7));
  double prev = 1e300;
  for (std::size_t n = static_cast<std::size_t>(cfg.t_skip); n < r.front.size(); ++n) {
    CHECK(r.front[n] <= prev + 0.5);
    prev = r.front[n];
  }
}

TEST_CASE("difference problem has zero initial data and consistent boundaries") {
  const AmericanConfig cfg;
  const IvpProblem pb = american_difference_problem(cfg);
  CHECK(pb.initial(100.0) == 0.0);
  CHECK(pb.grid.M() == cfg.nx - 2);
  const double tau = 0.3;
  CHECK(pb.left_value(tau) == doctest::Approx(cfg.market.K * (1.0 - std::exp(-cfg.market.r * tau * tau))));
  CHECK(pb.obstacle(tau, 0.0, 0) == doctest::Approx(pb.left_value(tau)));
  CHECK(pb.right_value(tau) == 0.0);
}
