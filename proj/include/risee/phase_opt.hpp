#pragma once

#include <Eigen/Dense>
#include <vector>

#include "risee/config.hpp"
#include "risee/statistics.hpp"

namespace risee {

struct PhaseOptResult {
  Eigen::VectorXcd v;
  int outer_iters = 0;  // gamma rounds executed
  bool converged = true;
  std::vector<double> sum_rate_trace;  // sum of lower-bound rates, entry 0 = at v_init
};

// gamma_k = [ (D_k + S_k) / (ln2 D_k) - 1 ]^+ with D_k = sigma^2 (K1+1) v^H A_k v
// and S_k = p_k (M-K) v^H B v.
Eigen::VectorXd update_gamma(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                             const ChannelStatistics& st, const SystemConfig& cfg);

// u_k = 1 / (D_k + S_k); held through the inner loop, refreshed after v moves
Eigen::VectorXd compute_u(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                          const ChannelStatistics& st, const SystemConfig& cfg);

// beta_k = (1 + gamma_k) S_k / (D_k + S_k)
Eigen::VectorXd update_beta(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                            const Eigen::VectorXd& gamma, const ChannelStatistics& st,
                            const SystemConfig& cfg);

// C = sum_k u_k [ (1+gamma_k) p_k (M-K) B - beta_k (sigma^2 (K1+1) A_k + p_k (M-K) B) ]
Eigen::MatrixXcd build_C(const Eigen::VectorXd& gamma, const Eigen::VectorXd& beta,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& p, int M,
                         const ChannelStatistics& st, const SystemConfig& cfg);

// Closed-form coordinate update of entry n: theta_n = arg(sum_{i != n} C_{n,i} v_i);
// z = 0 keeps the previous phase. Never decreases v^H C v.
void phase_step_analytic(int n, Eigen::VectorXcd& v, const Eigen::MatrixXcd& C);

// MM step: Q = C - lambda_min(C) I (PSD), v <- exp(j arg(Q v_prev)) elementwise;
// zero entries of Q v_prev keep their previous value. Never decreases v^H C v.
Eigen::VectorXcd phase_step_sfp(const Eigen::VectorXcd& v, const Eigen::MatrixXcd& C);

// Triple loop: gamma rounds (outer), u/beta/C rounds (middle), coordinate or
// SFP sweeps (inner). method must be analytic or sfp.
PhaseOptResult optimize_phases(const Eigen::VectorXd& p, int M, const Eigen::VectorXcd& v_init,
                               const ChannelStatistics& st, const SystemConfig& cfg,
                               PhaseMethod method);

}  // namespace risee
