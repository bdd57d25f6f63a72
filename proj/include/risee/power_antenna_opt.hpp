#pragma once

#include <Eigen/Dense>

#include "risee/config.hpp"
#include "risee/statistics.hpp"

namespace risee {

struct DualState {
  Eigen::VectorXd mu;     // K, >= 0
  double vartheta = 0.0;  // >= 0
  double eta_ee = 0.0;    // current Dinkelbach level
  int iter = 0;           // subgradient iteration l
};

struct PowerAntennaResult {
  int M = 0;
  Eigen::VectorXd p;
  DualState dual;
  Eigen::VectorXd rates;     // lower-bound rates at (M, p)
  double ee = 0.0;
  Eigen::VectorXd qos_slack; // rates - R_min, per user
  bool feasible_power = true;
  bool feasible_qos = true;
  bool converged = true;
  int iters = 0;
};

// p_k = (2^r - 1) sigma^2 (K1+1) v^H A_k v / ((M-K) v^H B v); inverse of the
// rate lower bound.
Eigen::VectorXd implied_power(const Eigen::VectorXd& rates, int M, const Eigen::VectorXcd& v,
                              const ChannelStatistics& st, const SystemConfig& cfg);

// Positive root of the stationarity quadratic in (M - K), before rounding.
double optimal_M_continuous(const DualState& dual, const Eigen::VectorXcd& v,
                            const ChannelStatistics& st, const SystemConfig& cfg);
// rounded to nearest and clamped to [K+1, M_max]
int optimal_M(const DualState& dual, const Eigen::VectorXcd& v, const ChannelStatistics& st,
              const SystemConfig& cfg);

// p_k = [ (1+mu_k)/(ln2 (eta rho + vartheta)) - sigma^2 (K1+1)/(M-K) * vAv/vBv ]^+
Eigen::VectorXd optimal_p(const DualState& dual, int M, const Eigen::VectorXcd& v,
                          const ChannelStatistics& st, const SystemConfig& cfg);

// mu_k <- [mu_k - (r_k - R_min)/10]^+ ;  vartheta <- [vartheta - sqrt(l)/10 (P_TX - sum p)]^+
DualState update_multipliers(const DualState& dual, const Eigen::VectorXd& rates,
                             const Eigen::VectorXd& p, const SystemConfig& cfg);

// Dinkelbach level + closed forms + subgradient loop. Returns the candidate
// with the best EE among those with sum(p) <= P_TX (1 + 1e-6); candidates are
// the evaluated entry point (M_init, p_init), every iterate, and — when an
// iterate overshoots the budget — its scaling onto sum(p) = P_TX (primal
// recovery; when the budget binds the raw iterates stay infeasible forever).
// A power-feasible entry guarantees a feasible answer. QoS shortfalls are
// flagged, not fatal.
PowerAntennaResult optimize_power_antennas(const Eigen::VectorXcd& v, int M_init,
                                           const Eigen::VectorXd& p_init,
                                           const ChannelStatistics& st, const SystemConfig& cfg,
                                           bool optimize_M);

}  // namespace risee
