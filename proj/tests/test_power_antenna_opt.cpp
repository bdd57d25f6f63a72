#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "risee/power_antenna_opt.hpp"
#include "risee/rng.hpp"
#include "risee/statistics.hpp"

using namespace risee;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Instance {
  SystemConfig cfg;
  ChannelStatistics st;
  Eigen::VectorXcd v;
};

Instance make_instance(int setup = 0, std::uint64_t vseed = 21) {
  Instance in;
  in.cfg = test::tiny_cfg();
  SetupGeometry geo = test::draw_geo(in.cfg, setup);
  in.st = compute_statistics(geo, in.cfg);
  auto rng = substream(vseed, Stream::init, 0);
  in.v = test::random_unit_v(in.cfg.N, rng);
  return in;
}

}  // namespace

TEST_CASE("implied power: inverse of the rate bound") {
  Instance in = make_instance();
  const int M = 20;

  CHECK(implied_power(Eigen::VectorXd::Zero(in.cfg.K), M, in.v, in.st, in.cfg).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK_THROWS_AS(implied_power(Eigen::VectorXd::Ones(in.cfg.K), in.cfg.K, in.v, in.st, in.cfg),
                  std::invalid_argument);

  auto rng = substream(22, Stream::init, 0);
  std::uniform_real_distribution<double> rr(0.1, 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd r(in.cfg.K);
    for (int k = 0; k < in.cfg.K; ++k) r[k] = rr(rng);
    Eigen::VectorXd p = implied_power(r, M, in.v, in.st, in.cfg);
    Eigen::VectorXd back = rate_lower_bound(p, M, in.v, in.st, in.cfg);
    CHECK(test::max_abs(back - r) < 1e-12 * r.maxCoeff());
  }

  // direct substitution on a synthetic channel: R = 1 bit at ratio w costs
  // exactly noise * w / (M - K)
  SystemConfig c1 = test::tiny_cfg(1, 4, 8);
  double noise = c1.sigma2 * (c1.K1 + 1.0);
  double w = 1e-3 * (8 - 1) / noise;
  ChannelStatistics st;
  st.B = Eigen::MatrixXcd::Identity(4, 4);
  st.A = {w * Eigen::MatrixXcd::Identity(4, 4)};
  Eigen::VectorXd one_bit = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd p = implied_power(one_bit, 8, Eigen::VectorXcd::Ones(4), st, c1);
  CHECK(p[0] == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("optimal M: quadratic stationarity, c = 0 limit, clamps") {
  Instance in = make_instance(1);
  auto rng = substream(23, Stream::init, 0);
  std::uniform_real_distribution<double> u01(0.0, 2.0);

  for (int trial = 0; trial < 25; ++trial) {
    DualState d{Eigen::VectorXd::Zero(in.cfg.K), u01(rng), 0.1 + u01(rng), 1};
    for (int k = 0; k < in.cfg.K; ++k) d.mu[k] = u01(rng);

    double mc = optimal_M_continuous(d, in.v, in.st, in.cfg);
    double x = mc - in.cfg.K;

    // recompute the three coefficients independently
    double qB = quad_form(in.st.B, in.v), sw = 0.0;
    for (int k = 0; k < in.cfg.K; ++k) sw += quad_form(in.st.A[k], in.v) / qB;
    double a = d.eta_ee * in.cfg.P_BS * kLn2;
    double b = (d.mu.array() + 1.0).sum();
    double c = (d.eta_ee * in.cfg.rho + d.vartheta) * in.cfg.sigma2 * (in.cfg.K1 + 1.0) * kLn2 * sw;
    if (b * b - 4.0 * a * c >= 0.0) {
      double resid = a * x * x - b * x + c;
      double scale = std::max({a * x * x, std::abs(b * x), std::abs(c)});
      CHECK(std::abs(resid) <= 1e-8 * scale);
    }
  }

  // sigma2 = 0 kills c: the stationary point is b/a + K exactly
  SystemConfig noiseless = in.cfg;
  noiseless.sigma2 = 0.0;
  DualState d{Eigen::VectorXd::Zero(in.cfg.K), 0.4, 2.0, 1};
  double a = d.eta_ee * noiseless.P_BS * kLn2;
  double b = static_cast<double>(in.cfg.K);  // mu = 0
  CHECK(optimal_M_continuous(d, in.v, in.st, noiseless) ==
        doctest::Approx(b / a + in.cfg.K).epsilon(1e-12));

  DualState dead{Eigen::VectorXd::Zero(in.cfg.K), 0.0, 0.0, 1};
  CHECK_THROWS_AS(optimal_M_continuous(dead, in.v, in.st, in.cfg), std::invalid_argument);

  // clamps: an enormous Dinkelbach level pushes M to the floor K+1, a tiny
  // one with expensive-rate duals to the ceiling
  DualState hot{Eigen::VectorXd::Zero(in.cfg.K), 0.0, 1e12, 1};
  CHECK(optimal_M(hot, in.v, in.st, in.cfg) == in.cfg.K + 1);
  DualState cold{Eigen::VectorXd::Constant(in.cfg.K, 50.0), 0.0, 1e-9, 1};
  CHECK(optimal_M(cold, in.v, in.st, in.cfg) == in.cfg.M_max);
}

TEST_CASE("optimal p: water level, projection and the KKT residual") {
  Instance in = make_instance(0);
  const int M = 20;

  // synthetic: negligible channel term leaves the pure water level
  SystemConfig c1 = test::tiny_cfg(1, 4, 8);
  ChannelStatistics st;
  st.B = Eigen::MatrixXcd::Identity(4, 4);
  st.A = {1e-12 * Eigen::MatrixXcd::Identity(4, 4)};
  DualState d1{Eigen::VectorXd::Zero(1), 0.0, 2.5, 1};
  Eigen::VectorXd p1 = optimal_p(d1, 8, Eigen::VectorXcd::Ones(4), st, c1);
  CHECK(p1[0] == doctest::Approx(1.0 / (kLn2 * 2.5 * c1.rho)).epsilon(1e-9));

  // dominant channel term projects to zero
  st.A = {1e30 * Eigen::MatrixXcd::Identity(4, 4)};
  p1 = optimal_p(d1, 8, Eigen::VectorXcd::Ones(4), st, c1);
  CHECK(p1[0] == 0.0);

  DualState dead{Eigen::VectorXd::Zero(1), 0.0, 0.0, 1};
  CHECK_THROWS_AS(optimal_p(dead, 8, Eigen::VectorXcd::Ones(4), st, c1), std::invalid_argument);
  CHECK_THROWS_AS(optimal_p(d1, 1, Eigen::VectorXcd::Ones(4), st, c1), std::invalid_argument);

  // KKT: d/dp_k [ sum (1+mu_k) R_k(p) - (eta rho + vartheta) sum p ] = 0 at
  // every strictly positive coordinate of the closed form
  auto rng = substream(24, Stream::init, 0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    DualState d{Eigen::VectorXd::Zero(in.cfg.K), u01(rng), 0.5 + u01(rng), 1};
    for (int k = 0; k < in.cfg.K; ++k) d.mu[k] = 2.0 * u01(rng);
    double level = d.eta_ee * in.cfg.rho + d.vartheta;
    Eigen::VectorXd p = optimal_p(d, M, in.v, in.st, in.cfg);

    auto lag = [&](const Eigen::VectorXd& pp) {
      Eigen::VectorXd r = rate_lower_bound(pp, M, in.v, in.st, in.cfg);
      double val = -level * pp.sum();
      for (int k = 0; k < in.cfg.K; ++k) val += (1.0 + d.mu[k]) * r[k];
      return val;
    };
    for (int k = 0; k < in.cfg.K; ++k) {
      if (!(p[k] > 0.0)) continue;
      double h = std::min(1e-6 * std::max(p[k], 1.0), 0.5 * p[k]);
      Eigen::VectorXd hi = p, lo = p;
      hi[k] += h;
      lo[k] -= h;
      double fd = (lag(hi) - lag(lo)) / (2.0 * h);
      CHECK(std::abs(fd) <= 1e-4 * level);
    }
  }
}

TEST_CASE("multiplier updates: projected subgradients with the sqrt(l) step") {
  SystemConfig cfg = test::tiny_cfg();
  DualState d{Eigen::VectorXd::Zero(cfg.K), 0.3, 1.0, 4};
  d.mu << 0.5, 0.0, 2.0;

  Eigen::VectorXd rates(cfg.K), p(cfg.K);
  rates << cfg.R_min, cfg.R_min + 5.0, cfg.R_min - 2.0;
  p << 0.5, 0.4, 0.4;  // sum 1.3 over a 1.0 budget

  DualState next = update_multipliers(d, rates, p, cfg);
  CHECK(next.mu[0] == doctest::Approx(0.5).epsilon(1e-14));          // active QoS: no motion
  CHECK(next.mu[1] == 0.0);                                          // slack QoS: projected at 0
  CHECK(next.mu[2] == doctest::Approx(2.0 + 0.1 * 2.0).epsilon(1e-12));  // violated: grows
  // vartheta step is sqrt(4)/10 = 0.2 against a 0.3 W overdraw
  CHECK(next.vartheta == doctest::Approx(0.3 + 0.2 * 0.3).epsilon(1e-10));
  CHECK(next.iter == 5);

  // underspent budget with a small multiplier projects back to zero
  d.vartheta = 0.01;
  p << 0.1, 0.1, 0.1;
  next = update_multipliers(d, rates, p, cfg);
  CHECK(next.vartheta == 0.0);
}

TEST_CASE("optimize_power_antennas: feasibility, incumbent, M freezing") {
  Instance in = make_instance(0);
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(in.cfg.K, in.cfg.P_TX / in.cfg.K);
  Eigen::VectorXd r0 = rate_lower_bound(p0, in.cfg.M_max, in.v, in.st, in.cfg);
  double ee0 = energy_efficiency(p0, in.cfg.M_max, r0, in.cfg);

  PowerAntennaResult res = optimize_power_antennas(in.v, in.cfg.M_max, p0, in.st, in.cfg, true);
  CHECK(res.p.sum() <= in.cfg.P_TX * (1.0 + 1e-6));
  CHECK(res.M >= in.cfg.K + 1);
  CHECK(res.M <= in.cfg.M_max);
  CHECK(res.ee >= ee0 - 1e-12);  // the entry iterate is always a candidate
  CHECK((res.p.array() >= 0.0).all());
  CHECK((res.dual.mu.array() >= 0.0).all());
  CHECK(res.dual.vartheta >= 0.0);
  CHECK(res.iters >= 10);
  CHECK(res.iters <= in.cfg.max_iter_alg2);
  Eigen::VectorXd back = rate_lower_bound(res.p, res.M, in.v, in.st, in.cfg);
  CHECK(test::max_abs(back - res.rates) == 0.0);
  CHECK(test::max_abs(res.qos_slack - (res.rates.array() - in.cfg.R_min).matrix()) == 0.0);

  PowerAntennaResult frozen = optimize_power_antennas(in.v, 17, p0, in.st, in.cfg, false);
  CHECK(frozen.M == 17);

  // pricier antennas can only shrink the chosen array
  int prev_m = in.cfg.M_max + 1;
  for (double scale : {0.25, 1.0, 4.0, 16.0}) {
    SystemConfig c = in.cfg;
    c.P_BS = scale * in.cfg.P_BS;
    PowerAntennaResult r = optimize_power_antennas(in.v, c.M_max, p0, in.st, c, true);
    CHECK(r.M <= prev_m);
    prev_m = r.M;
  }
}

TEST_CASE("optimize_power_antennas: tight budgets saturate, absurd QoS is reported") {
  Instance in = make_instance(1);
  SystemConfig tight = in.cfg;
  tight.P_TX = dbm_to_watt(20.0);  // far below the unconstrained optimum
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(tight.K, tight.P_TX / tight.K);
  PowerAntennaResult res = optimize_power_antennas(in.v, tight.M_max, p0, in.st, tight, true);
  CHECK(res.feasible_power);
  CHECK(res.p.sum() >= 0.9 * tight.P_TX);

  SystemConfig absurd = in.cfg;
  absurd.R_min = 60.0;  // unreachable inside the budget
  p0 = Eigen::VectorXd::Constant(absurd.K, absurd.P_TX / absurd.K);
  PowerAntennaResult bad = optimize_power_antennas(in.v, absurd.M_max, p0, in.st, absurd, true);
  CHECK(bad.feasible_power);      // the optimizer never buys QoS with the budget
  CHECK_FALSE(bad.feasible_qos);  // and says so instead of pretending
  CHECK(bad.qos_slack.minCoeff() < 0.0);
}

TEST_CASE("optimize_power_antennas is phase-blind at K1 = 0") {
  SystemConfig cfg = test::tiny_cfg();
  cfg.K1 = 0.0;
  SetupGeometry geo = test::draw_geo(cfg, 0);
  ChannelStatistics st = compute_statistics(geo, cfg);
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(cfg.K, cfg.P_TX / cfg.K);

  auto rng = substream(25, Stream::init, 0);
  PowerAntennaResult base =
      optimize_power_antennas(Eigen::VectorXcd::Ones(cfg.N), cfg.M_max, p0, st, cfg, true);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd v = test::random_unit_v(cfg.N, rng);
    PowerAntennaResult r = optimize_power_antennas(v, cfg.M_max, p0, st, cfg, true);
    CHECK(r.ee == doctest::Approx(base.ee).epsilon(1e-9));
    CHECK(r.M == base.M);
  }
}
