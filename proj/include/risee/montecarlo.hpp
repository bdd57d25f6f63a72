#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "risee/channel.hpp"
#include "risee/config.hpp"
#include "risee/statistics.hpp"

namespace risee {

// order-independent reduction; keeps accumulations reproducible regardless of
// how the work was partitioned
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(const std::vector<double>& x);

struct InstantRates {
  Eigen::VectorXd rates;  // K, bps/Hz
  bool ok = true;         // false: ZF gram too ill-conditioned, excluded
  double cond = 0.0;
};

// Exact per-realization ZF rate: H = D_M + G_M diag(v) F (first M rows),
// R_k = log2(1 + p_k / (sigma^2 [(H^H H)^-1]_kk)). Realizations whose gram
// condition number exceeds 1e12 come back flagged.
InstantRates instantaneous_rates(const ChannelRealization& real, const Eigen::VectorXcd& v,
                                 const Eigen::VectorXd& p, int M, const SystemConfig& cfg);

// The bound's quadratic forms are written in the conjugate phase convention:
// the mean of H^H H involves F^H diag(a_N) conj(v), so a solution's v maps to
// surface phases conj(v) when a realization is materialized. Applying v
// directly breaks the bound for K1 > 0 by tens of dB on LoS-heavy users.
inline Eigen::VectorXcd surface_phases(const Eigen::VectorXcd& v) { return v.conjugate(); }

struct LbValidation {
  Eigen::VectorXd mc_mean, mc_stderr, rate_lb, gap;  // per user
  std::vector<bool> pass;  // mean >= lb - 3 stderr
  int excluded = 0;
  int total = 0;
  bool warn_excluded = false;  // more than 1% of draws excluded
};

// Monte Carlo check of the statistical bound at the solution's (M, p, v);
// realization streams derive from (cfg.seed, geo.index, t). T >= 1 required.
LbValidation validate_lower_bound(const SetupGeometry& geo, const Solution& sol,
                                  const SystemConfig& cfg, int T);

// Empirical complementary CDF with ties merged: pairs (value, P(X >= value))
// ascending in value. Empty input is an error.
std::vector<std::pair<double, double>> ccdf(const std::vector<double>& samples);

// mean over solutions of sum(p) / P_TX
double power_utilization(const std::vector<Solution>& sols, const SystemConfig& cfg);

}  // namespace risee
