#include "risee/power_antenna_opt.hpp"

#include <cmath>
#include <stdexcept>

namespace risee {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kBudgetSlack = 1e-6;  // sum(p) <= P_TX (1 + slack) counts as feasible

// w_k = v^H A_k v / v^H B v, the per-user channel quality entering every
// closed form here; v is fixed throughout Algorithm 2 so callers hoist it
Eigen::VectorXd quad_ratios(const Eigen::VectorXcd& v, const ChannelStatistics& st,
                            const SystemConfig& cfg) {
  const double qB = quad_form(st.B, v);
  Eigen::VectorXd w(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double qA = quad_form(st.A[k], v);
    if (!(qA > 0.0) || !(qB > 0.0))
      throw std::runtime_error("power_antenna_opt: nonpositive quadratic form");
    w[k] = qA / qB;
  }
  return w;
}

}  // namespace

Eigen::VectorXd implied_power(const Eigen::VectorXd& rates, int M, const Eigen::VectorXcd& v,
                              const ChannelStatistics& st, const SystemConfig& cfg) {
  if (M <= cfg.K) throw std::invalid_argument("implied_power: M must exceed K");
  Eigen::VectorXd w = quad_ratios(v, st, cfg);
  const double noise = cfg.sigma2 * (cfg.K1 + 1.0);
  Eigen::VectorXd p(cfg.K);
  for (int k = 0; k < cfg.K; ++k)
    p[k] = (std::exp2(rates[k]) - 1.0) * noise * w[k] / (M - cfg.K);
  return p;
}

double optimal_M_continuous(const DualState& dual, const Eigen::VectorXcd& v,
                            const ChannelStatistics& st, const SystemConfig& cfg) {
  const double a = dual.eta_ee * cfg.P_BS * kLn2;
  if (!(a > 0.0))
    throw std::invalid_argument("optimal_M: requires a positive Dinkelbach level");
  const double b = (dual.mu.array() + 1.0).sum();
  const double c = (dual.eta_ee * cfg.rho + dual.vartheta) * cfg.sigma2 * (cfg.K1 + 1.0) * kLn2 *
                   quad_ratios(v, st, cfg).sum();
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) disc = 0.0;  // no real stationary point; boundary via the clamp
  return (b + std::sqrt(disc)) / (2.0 * a) + cfg.K;
}

int optimal_M(const DualState& dual, const Eigen::VectorXcd& v, const ChannelStatistics& st,
              const SystemConfig& cfg) {
  double mc = optimal_M_continuous(dual, v, st, cfg);
  long long m = std::llround(mc);
  if (m < cfg.K + 1) m = cfg.K + 1;
  if (m > cfg.M_max) m = cfg.M_max;
  return static_cast<int>(m);
}

Eigen::VectorXd optimal_p(const DualState& dual, int M, const Eigen::VectorXcd& v,
                          const ChannelStatistics& st, const SystemConfig& cfg) {
  if (M <= cfg.K) throw std::invalid_argument("optimal_p: M must exceed K");
  const double level = dual.eta_ee * cfg.rho + dual.vartheta;
  if (!(level > 0.0))
    throw std::invalid_argument("optimal_p: eta_ee * rho + vartheta must be positive");
  Eigen::VectorXd w = quad_ratios(v, st, cfg);
  const double noise = cfg.sigma2 * (cfg.K1 + 1.0);
  Eigen::VectorXd p(cfg.K);
  for (int k = 0; k < cfg.K; ++k)
    p[k] = std::max(0.0, (1.0 + dual.mu[k]) / (kLn2 * level) - noise / (M - cfg.K) * w[k]);
  return p;
}

DualState update_multipliers(const DualState& dual, const Eigen::VectorXd& rates,
                             const Eigen::VectorXd& p, const SystemConfig& cfg) {
  DualState next = dual;
  for (int k = 0; k < cfg.K; ++k)
    next.mu[k] = std::max(0.0, dual.mu[k] - cfg.mu_step * (rates[k] - cfg.R_min));
  double step = cfg.vartheta_step * std::sqrt(static_cast<double>(dual.iter));
  next.vartheta = std::max(0.0, dual.vartheta - step * (cfg.P_TX - p.sum()));
  next.iter = dual.iter + 1;
  return next;
}

PowerAntennaResult optimize_power_antennas(const Eigen::VectorXcd& v, int M_init,
                                           const Eigen::VectorXd& p_init,
                                           const ChannelStatistics& st, const SystemConfig& cfg,
                                           bool optimize_M) {
  PowerAntennaResult best;
  bool have_best = false;
  auto record = [&](int M, const Eigen::VectorXd& p, const Eigen::VectorXd& rates,
                    const DualState& dual) {
    if (p.sum() > cfg.P_TX * (1.0 + kBudgetSlack)) return;
    double ee = energy_efficiency(p, M, rates, cfg);
    if (!have_best || ee > best.ee) {
      best.M = M;
      best.p = p;
      best.rates = rates;
      best.ee = ee;
      best.dual = dual;
      have_best = true;
    }
  };
  // When the budget binds, the dual iterates approach sum(p) = P_TX from
  // above and never pass the feasibility filter; the budget projection of
  // the iterate is the standard primal recovery and is what realizes the
  // binding optimum (reduced M, full utilization). Duals keep seeing the
  // raw iterate.
  auto consider = [&](int M, const Eigen::VectorXd& p, const Eigen::VectorXd& rates,
                      const DualState& dual) {
    record(M, p, rates, dual);
    double sp = p.sum();
    if (sp > cfg.P_TX * (1.0 + kBudgetSlack)) {
      Eigen::VectorXd proj = p * (cfg.P_TX / sp);
      record(M, proj, rate_lower_bound(proj, M, v, st, cfg), dual);
    }
  };

  int M = M_init;
  Eigen::VectorXd p = p_init;
  DualState dual{Eigen::VectorXd::Zero(cfg.K), 0.0, 0.0, 1};  // cold start

  // the entry point is iterate 0; recording it keeps the returned EE from
  // ever dropping below the caller's current point
  Eigen::VectorXd rates = rate_lower_bound(p, M, v, st, cfg);
  consider(M, p, rates, dual);

  bool converged = false;
  double eta_prev = 0.0;
  bool have_eta = false;
  int l = 1;
  constexpr int kMinIters = 10;  // let the subgradients act before early-stopping
  for (; l <= cfg.max_iter_alg2; ++l) {
    dual.eta_ee = energy_efficiency(p, M, rates, cfg);
    dual.iter = l;
    if (optimize_M) {
      if (dual.eta_ee > 0.0) {
        M = optimal_M(dual, v, st, cfg);
      } else {
        M = cfg.M_max;  // eta -> 0 limit of the closed form before the clamp
      }
    }
    if (!(dual.eta_ee * cfg.rho + dual.vartheta > 0.0)) break;  // p collapsed and no budget pressure
    p = optimal_p(dual, M, v, st, cfg);
    rates = rate_lower_bound(p, M, v, st, cfg);
    consider(M, p, rates, dual);  // dual as used to produce this iterate
    DualState updated = update_multipliers(dual, rates, p, cfg);
    dual.mu = updated.mu;
    dual.vartheta = updated.vartheta;

    if (have_eta && have_best && l >= kMinIters &&
        std::abs(dual.eta_ee - eta_prev) <= cfg.eps_outer * std::max(std::abs(eta_prev), 1e-12)) {
      converged = true;
      break;
    }
    eta_prev = dual.eta_ee;
    have_eta = true;
  }

  if (!have_best) {
    // entry point was already over budget and no iterate recovered: report
    // the last iterate as best effort, flagged infeasible
    best.M = M;
    best.p = p;
    best.rates = rates;
    best.ee = energy_efficiency(p, M, rates, cfg);
    best.dual = dual;
  }
  best.qos_slack = best.rates.array() - cfg.R_min;
  best.feasible_power = best.p.sum() <= cfg.P_TX * (1.0 + kBudgetSlack);
  best.feasible_qos = (best.qos_slack.array() >= -1e-9).all();
  best.converged = converged;
  best.iters = std::min(l, cfg.max_iter_alg2);
  return best;
}

}  // namespace risee
