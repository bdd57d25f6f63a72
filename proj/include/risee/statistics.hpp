#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "risee/channel.hpp"
#include "risee/config.hpp"

namespace risee {

// Statistical-CSI objects every optimizer consumes. Immutable after
// construction; safe to share across threads.
struct ChannelStatistics {
  Eigen::MatrixXcd Lambda;           // K x K, Hermitian positive definite
  Eigen::MatrixXcd B;                // N x N, Hermitian
  std::vector<Eigen::MatrixXcd> A;   // K matrices, N x N, Hermitian
  Eigen::MatrixXcd s;                // K x N, row k = s_k^H
  Eigen::VectorXcd a_N;
  Eigen::VectorXd lambda_inv_diag;   // real diagonal of Lambda^-1
  double k1_alpha_g = 0.0;           // K1 * alpha_G, rebuilds A_k from (B, s)
};

// (M, p, v) plus duals, rates and bookkeeping of one optimization run.
struct Solution {
  int M = 0;
  Eigen::VectorXd p;       // K, watts
  Eigen::VectorXcd v;      // N, unit modulus, [v]_n = e^{+j theta_n}
  Eigen::VectorXd mu;      // K, QoS multipliers
  double vartheta = 0.0;   // power multiplier
  Eigen::VectorXd rates;   // lower-bound rates, bps/Hz
  double ee = 0.0;         // bps/Hz/W
  bool feasible_power = true;
  bool feasible_qos = true;
  bool converged = true;
  int outer_iters = 0;            // alternating iterations executed
  std::vector<double> eta_trace;  // EE after init and after each outer iteration
};

// re(v^H X v); takes expressions so blocks/products evaluate lazily
template <typename XDerived, typename VDerived>
double quad_form(const Eigen::MatrixBase<XDerived>& X, const Eigen::MatrixBase<VDerived>& v) {
  using std::real;
  return real((v.adjoint() * X.derived() * v).value());
}

// Hermitian symmetrization; removes the imaginary residue that would
// otherwise leak into logs and ratios downstream.
inline void symmetrize(Eigen::MatrixXcd& X) { X = 0.5 * (X + X.adjoint()).eval(); }

// Builds Lambda, B, A_k, s_k from the drop. Throws std::runtime_error when
// Lambda is numerically singular (condition number above 1e12).
ChannelStatistics compute_statistics(const SetupGeometry& geo, const SystemConfig& cfg);

// Re-derives every A_k from (lambda_inv_diag, B, s); A_k does not depend on
// (v, p, M), so this is idempotent — kept because the alternating driver
// executes the refresh step as written.
void recompute_A(ChannelStatistics& st);

// R_k = log2(1 + p_k (M-K) v^H B v / (sigma^2 (K1+1) v^H A_k v)).
// M <= K is a precondition error; v^H A_k v <= 0 is reported, never clamped.
Eigen::VectorXd rate_lower_bound(const Eigen::VectorXd& p, int M, const Eigen::VectorXcd& v,
                                 const ChannelStatistics& st, const SystemConfig& cfg);

double energy_efficiency(const Eigen::VectorXd& p, int M, const Eigen::VectorXd& rates,
                         const SystemConfig& cfg);

}  // namespace risee
