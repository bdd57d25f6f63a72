#include "risee/baselines.hpp"

#include <cmath>

namespace risee {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kArmijoSlope = 1e-4;
constexpr double kArmijoShrink = 0.5;
constexpr int kMaxBacktracks = 40;

double sum_rate(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                const ChannelStatistics& st, const SystemConfig& cfg) {
  return rate_lower_bound(p, M, v, st, cfg).sum();
}

}  // namespace

Eigen::VectorXd sum_rate_gradient(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                                  const ChannelStatistics& st, const SystemConfig& cfg) {
  const double noise = cfg.sigma2 * (cfg.K1 + 1.0);
  const double qB = quad_form(st.B, v);
  Eigen::VectorXcd Bv = st.B * v;
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(cfg.N);
  for (int k = 0; k < cfg.K; ++k) {
    double qA = quad_form(st.A[k], v);
    double Sk = p[k] * (M - cfg.K) * qB;
    double Dk = noise * qA;
    double pref = 1.0 / (kLn2 * (1.0 + Sk / Dk));  // d log2(1 + S/D)
    Eigen::VectorXcd Av = st.A[k] * v;
    for (int n = 0; n < cfg.N; ++n) {
      // d(v^H X v)/d theta_n = 2 Im(conj(v_n) (X v)_n)
      double dqB = 2.0 * std::imag(std::conj(v[n]) * Bv[n]);
      double dqA = 2.0 * std::imag(std::conj(v[n]) * Av[n]);
      double dS = p[k] * (M - cfg.K) * dqB;
      double dD = noise * dqA;
      grad[n] += pref * (dS * Dk - Sk * dD) / (Dk * Dk);
    }
  }
  return grad;
}

GradientResult gradient_ascent_phases(const Eigen::VectorXd& p, int M,
                                      const Eigen::VectorXcd& v_init,
                                      const ChannelStatistics& st, const SystemConfig& cfg) {
  GradientResult res;
  Eigen::VectorXd th(cfg.N);
  for (int n = 0; n < cfg.N; ++n) th[n] = std::arg(v_init[n]);
  auto to_v = [&](const Eigen::VectorXd& t) {
    Eigen::VectorXcd v(cfg.N);
    for (int n = 0; n < cfg.N; ++n) v[n] = std::polar(1.0, t[n]);
    return v;
  };

  res.v = to_v(th);
  double f = sum_rate(res.v, p, M, st, cfg);
  res.sum_rate_trace.push_back(f);
  res.converged = false;

  for (int it = 0; it < cfg.max_iter_grad; ++it) {
    Eigen::VectorXd g = sum_rate_gradient(res.v, p, M, st, cfg);
    double g2 = g.squaredNorm();
    if (g2 == 0.0) {  // exactly stationary (e.g. K1 = 0)
      res.converged = true;
      break;
    }
    double step = 1.0;
    double f_new = f;
    Eigen::VectorXd th_new;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      th_new = th + step * g;
      f_new = sum_rate(to_v(th_new), p, M, st, cfg);
      if (f_new >= f + kArmijoSlope * step * g2) {
        accepted = true;
        break;
      }
      step *= kArmijoShrink;
    }
    if (!accepted) break;  // step underflow; treat as stationary
    th = th_new;
    res.v = to_v(th);
    res.iters = it + 1;
    res.sum_rate_trace.push_back(f_new);
    if (std::abs(f_new - f) < cfg.eps_obj) {  // shared stopping rule
      f = f_new;
      res.converged = true;
      break;
    }
    f = f_new;
  }
  return res;
}

}  // namespace risee
