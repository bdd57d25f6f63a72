#include "risee/alternating.hpp"

#include <cmath>

#include "risee/baselines.hpp"
#include "risee/phase_opt.hpp"
#include "risee/power_antenna_opt.hpp"

namespace risee {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBudgetSlack = 1e-6;
}  // namespace

Solution maximize_ee(const ChannelStatistics& st, const SystemConfig& cfg, Strategy strategy,
                     std::mt19937_64& rng) {
  Solution sol;

  // frozen init draw order: phases first (always), then M only when it stays
  // random -- strategies compared on one (seed, setup) consume matched draws
  std::uniform_real_distribution<double> theta(0.0, 2.0 * kPi);
  sol.v.resize(cfg.N);
  for (int n = 0; n < cfg.N; ++n) sol.v[n] = std::polar(1.0, theta(rng));
  if (optimizes_m(strategy)) {
    sol.M = cfg.M_max;  // warm start from the rate-richest point
  } else {
    std::uniform_int_distribution<int> mdraw(cfg.K + 1, cfg.M_max);
    sol.M = mdraw(rng);
  }
  sol.p = Eigen::VectorXd::Constant(cfg.K, cfg.P_TX / cfg.K);
  sol.mu = Eigen::VectorXd::Zero(cfg.K);

  // working copy; the A_k refresh below mutates it (to no effect, by design)
  ChannelStatistics work = st;

  sol.rates = rate_lower_bound(sol.p, sol.M, sol.v, work, cfg);
  sol.ee = energy_efficiency(sol.p, sol.M, sol.rates, cfg);
  sol.eta_trace.push_back(sol.ee);

  if (strategy == Strategy::random_all) {
    sol.feasible_power = sol.p.sum() <= cfg.P_TX * (1.0 + kBudgetSlack);
    sol.feasible_qos = (sol.rates.array() >= cfg.R_min - 1e-9).all();
    sol.converged = true;
    return sol;
  }

  sol.converged = false;
  int outer = 0;
  for (; outer < cfg.max_iter_alg3; ++outer) {
    if (optimizes_v(strategy)) {
      if (cfg.method == PhaseMethod::gradient) {
        sol.v = gradient_ascent_phases(sol.p, sol.M, sol.v, work, cfg).v;
      } else {
        sol.v = optimize_phases(sol.p, sol.M, sol.v, work, cfg, cfg.method).v;
      }
    }
    recompute_A(work);  // refresh step, executed as written (A_k is (v,p,M)-free)
    PowerAntennaResult pa =
        optimize_power_antennas(sol.v, sol.M, sol.p, work, cfg, optimizes_m(strategy));
    sol.M = pa.M;
    sol.p = pa.p;
    sol.mu = pa.dual.mu;
    sol.vartheta = pa.dual.vartheta;
    sol.rates = pa.rates;
    sol.feasible_power = pa.feasible_power;
    sol.feasible_qos = pa.feasible_qos;
    double ee_prev = sol.ee;
    sol.ee = pa.ee;
    sol.eta_trace.push_back(sol.ee);
    if (std::abs(sol.ee - ee_prev) < cfg.eps_outer * std::max(std::abs(ee_prev), 1e-12)) {
      ++outer;
      sol.converged = true;
      break;
    }
  }
  sol.outer_iters = outer;
  return sol;
}

Solution maximize_ee(const SetupGeometry& geo, const SystemConfig& cfg, Strategy strategy,
                     std::mt19937_64& rng) {
  ChannelStatistics st = compute_statistics(geo, cfg);
  return maximize_ee(st, cfg, strategy, rng);
}

}  // namespace risee
