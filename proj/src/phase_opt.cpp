#include "risee/phase_opt.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace risee {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// D_k = sigma^2 (K1+1) v^H A_k v, S_k = p_k (M-K) v^H B v
void forms(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
           const ChannelStatistics& st, const SystemConfig& cfg, Eigen::VectorXd& D,
           Eigen::VectorXd& S) {
  if (M <= cfg.K) throw std::invalid_argument("phase_opt: M must exceed K");
  const double qB = quad_form(st.B, v);
  const double noise = cfg.sigma2 * (cfg.K1 + 1.0);
  D.resize(cfg.K);
  S.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double qA = quad_form(st.A[k], v);
    if (!(qA > 0.0))
      throw std::runtime_error("phase_opt: v^H A_k v <= 0 (degenerate statistics)");
    D[k] = noise * qA;
    S[k] = p[k] * (M - cfg.K) * qB;
  }
}

// objective of the gamma-augmented problem; convergence metric of the outer loop
double eq15_objective(const Eigen::VectorXd& gamma, const Eigen::VectorXd& D,
                      const Eigen::VectorXd& S) {
  double f = 0.0;
  for (int k = 0; k < gamma.size(); ++k)
    f += std::log2(1.0 + gamma[k]) - gamma[k] + (1.0 + gamma[k]) * S[k] / (D[k] + S[k]);
  return f;
}

// sum-of-ratios objective; convergence metric of the middle loop
double eq17_objective(const Eigen::VectorXd& gamma, const Eigen::VectorXd& D,
                      const Eigen::VectorXd& S) {
  double f = 0.0;
  for (int k = 0; k < gamma.size(); ++k) f += (1.0 + gamma[k]) * S[k] / (D[k] + S[k]);
  return f;
}

}  // namespace

Eigen::VectorXd update_gamma(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                             const ChannelStatistics& st, const SystemConfig& cfg) {
  Eigen::VectorXd D, S;
  forms(v, p, M, st, cfg, D, S);
  Eigen::VectorXd g(cfg.K);
  for (int k = 0; k < cfg.K; ++k) g[k] = std::max(0.0, (D[k] + S[k]) / (kLn2 * D[k]) - 1.0);
  return g;
}

Eigen::VectorXd compute_u(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                          const ChannelStatistics& st, const SystemConfig& cfg) {
  Eigen::VectorXd D, S;
  forms(v, p, M, st, cfg, D, S);
  Eigen::VectorXd u(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double den = D[k] + S[k];
    if (!(den > 0.0)) throw std::runtime_error("compute_u: nonpositive denominator");
    u[k] = 1.0 / den;
  }
  return u;
}

Eigen::VectorXd update_beta(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                            const Eigen::VectorXd& gamma, const ChannelStatistics& st,
                            const SystemConfig& cfg) {
  Eigen::VectorXd D, S;
  forms(v, p, M, st, cfg, D, S);
  Eigen::VectorXd b(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double den = D[k] + S[k];
    if (!(den > 0.0)) throw std::runtime_error("update_beta: nonpositive denominator");
    b[k] = (1.0 + gamma[k]) * S[k] / den;
  }
  return b;
}

Eigen::MatrixXcd build_C(const Eigen::VectorXd& gamma, const Eigen::VectorXd& beta,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& p, int M,
                         const ChannelStatistics& st, const SystemConfig& cfg) {
  const double noise = cfg.sigma2 * (cfg.K1 + 1.0);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(cfg.N, cfg.N);
  for (int k = 0; k < cfg.K; ++k) {
    double pterm = p[k] * (M - cfg.K);
    // (1+gamma) p (M-K) B - beta (noise A_k + p (M-K) B)
    C += u[k] * ((1.0 + gamma[k]) * pterm - beta[k] * pterm) * st.B;
    C -= (u[k] * beta[k] * noise) * st.A[k];
  }
  symmetrize(C);
  return C;
}

void phase_step_analytic(int n, Eigen::VectorXcd& v, const Eigen::MatrixXcd& C) {
  // z = sum_{i != n} C_{n,i} v_i; the two trace terms collapse to this by
  // Hermitian symmetry of C
  std::complex<double> z = (C.row(n) * v).value() - C(n, n) * v[n];
  if (z != std::complex<double>(0.0, 0.0)) v[n] = z / std::abs(z);
}

Eigen::VectorXcd phase_step_sfp(const Eigen::VectorXcd& v, const Eigen::MatrixXcd& C) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("phase_step_sfp: eigenvalue solver failed");
  double lmin = es.eigenvalues().minCoeff();
  // MM minorizer needs the PSD shift C - lmin I
  Eigen::VectorXcd w = C * v - lmin * v;
  Eigen::VectorXcd out = v;
  for (int n = 0; n < v.size(); ++n) {
    double a = std::abs(w[n]);
    if (a > 0.0) out[n] = w[n] / a;
  }
  return out;
}

PhaseOptResult optimize_phases(const Eigen::VectorXd& p, int M, const Eigen::VectorXcd& v_init,
                               const ChannelStatistics& st, const SystemConfig& cfg,
                               PhaseMethod method) {
  if (method == PhaseMethod::gradient)
    throw std::invalid_argument("optimize_phases: method must be analytic or sfp");
  PhaseOptResult res;
  res.v = v_init;
  res.sum_rate_trace.push_back(rate_lower_bound(p, M, res.v, st, cfg).sum());

  Eigen::VectorXd D, S;
  double f15_prev = 0.0;
  bool have_f15 = false;
  res.converged = false;
  int outer = 0;
  for (; outer < cfg.max_iter_outer; ++outer) {
    Eigen::VectorXd gamma = update_gamma(res.v, p, M, st, cfg);

    double f17_prev = 0.0;
    bool have_f17 = false;
    for (int mid = 0; mid < cfg.max_iter_mid; ++mid) {
      Eigen::VectorXd u = compute_u(res.v, p, M, st, cfg);
      Eigen::VectorXd beta = update_beta(res.v, p, M, gamma, st, cfg);
      Eigen::MatrixXcd C = build_C(gamma, beta, u, p, M, st, cfg);

      // lambda_min(C) is fixed while C is; hoist it out of the inner loop
      // instead of re-eigensolving inside phase_step_sfp every iteration
      double lmin = 0.0;
      if (method == PhaseMethod::sfp) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
          throw std::runtime_error("optimize_phases: eigenvalue solver failed");
        lmin = es.eigenvalues().minCoeff();
      }

      for (int it = 0; it < cfg.max_iter_inner; ++it) {
        Eigen::VectorXcd v_prev = res.v;
        if (method == PhaseMethod::analytic) {
          for (int n = 0; n < cfg.N; ++n) phase_step_analytic(n, res.v, C);
        } else {
          Eigen::VectorXcd w = C * res.v - lmin * res.v;
          for (int n = 0; n < cfg.N; ++n) {
            double a = std::abs(w[n]);
            if (a > 0.0) res.v[n] = w[n] / a;
          }
        }
        if ((res.v - v_prev).norm() < cfg.eps_phase) break;
      }

      forms(res.v, p, M, st, cfg, D, S);
      double f17 = eq17_objective(gamma, D, S);
      if (have_f17 && std::abs(f17 - f17_prev) < cfg.eps_obj) break;
      f17_prev = f17;
      have_f17 = true;
    }

    forms(res.v, p, M, st, cfg, D, S);
    res.sum_rate_trace.push_back(rate_lower_bound(p, M, res.v, st, cfg).sum());
    double f15 = eq15_objective(gamma, D, S);
    if (have_f15 && std::abs(f15 - f15_prev) < cfg.eps_obj) {
      ++outer;
      res.converged = true;
      break;
    }
    f15_prev = f15;
    have_f15 = true;
  }
  res.outer_iters = outer;
  return res;
}

}  // namespace risee
