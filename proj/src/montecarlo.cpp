#include "risee/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "risee/rng.hpp"

namespace risee {

namespace {
constexpr double kCondLimit = 1e12;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

InstantRates instantaneous_rates(const ChannelRealization& real, const Eigen::VectorXcd& v,
                                 const Eigen::VectorXd& p, int M, const SystemConfig& cfg) {
  if (M <= cfg.K) throw std::invalid_argument("instantaneous_rates: M must exceed K");
  InstantRates out;
  // cascaded channel limited to the first M antennas of the array
  Eigen::MatrixXcd H =
      real.D.topRows(M) + real.G.topRows(M) * v.asDiagonal() * real.F;  // M x K
  Eigen::MatrixXcd gram = H.adjoint() * H;
  symmetrize(gram);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  out.cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(lo > 0.0) || out.cond > kCondLimit) {
    out.ok = false;  // ZF inverse would amplify float noise past rate accuracy
    out.rates = Eigen::VectorXd::Zero(cfg.K);
    return out;
  }

  Eigen::MatrixXcd inv = gram.llt().solve(Eigen::MatrixXcd::Identity(cfg.K, cfg.K));
  out.rates.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k)
    out.rates[k] = std::log2(1.0 + p[k] / (cfg.sigma2 * inv(k, k).real()));
  return out;
}

LbValidation validate_lower_bound(const SetupGeometry& geo, const Solution& sol,
                                  const SystemConfig& cfg, int T) {
  if (T <= 0) throw std::invalid_argument("validate_lower_bound: T must be >= 1");
  LbValidation out;
  out.total = T;
  LosComponents los = los_components(geo, cfg);

  const Eigen::VectorXcd v_phys = surface_phases(sol.v);
  std::vector<std::vector<double>> samples(cfg.K);
  for (auto& s : samples) s.reserve(T);
  for (int t = 0; t < T; ++t) {
    auto rng = substream(cfg.seed, Stream::realization, static_cast<std::uint64_t>(geo.index),
                         static_cast<std::uint64_t>(t));
    ChannelRealization re = sample_realization(geo, cfg, los, rng);
    InstantRates ir = instantaneous_rates(re, v_phys, sol.p, sol.M, cfg);
    if (!ir.ok) {
      ++out.excluded;
      continue;
    }
    for (int k = 0; k < cfg.K; ++k) samples[k].push_back(ir.rates[k]);
  }
  int used = T - out.excluded;
  if (used <= 1) throw std::runtime_error("validate_lower_bound: too few usable realizations");
  out.warn_excluded = out.excluded > T / 100;

  out.mc_mean.resize(cfg.K);
  out.mc_stderr.resize(cfg.K);
  out.rate_lb = sol.rates;
  out.gap.resize(cfg.K);
  out.pass.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double mean = pairwise_sum(samples[k]) / used;
    std::vector<double> sq(samples[k].size());
    for (size_t i = 0; i < sq.size(); ++i) sq[i] = (samples[k][i] - mean) * (samples[k][i] - mean);
    double var = pairwise_sum(sq) / (used - 1);
    out.mc_mean[k] = mean;
    out.mc_stderr[k] = std::sqrt(var / used);
    out.gap[k] = mean - out.rate_lb[k];
    out.pass[k] = mean >= out.rate_lb[k] - 3.0 * out.mc_stderr[k];
  }
  return out;
}

std::vector<std::pair<double, double>> ccdf(const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("ccdf: empty sample");
  std::vector<double> s = samples;
  std::sort(s.begin(), s.end());
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;  // merge ties
    out.emplace_back(s[i], (n - static_cast<double>(i)) / n);  // P(X >= s_i)
    i = j;
  }
  return out;
}

double power_utilization(const std::vector<Solution>& sols, const SystemConfig& cfg) {
  if (sols.empty()) throw std::invalid_argument("power_utilization: no solutions");
  std::vector<double> u(sols.size());
  for (size_t i = 0; i < sols.size(); ++i) u[i] = sols[i].p.sum() / cfg.P_TX;
  return pairwise_sum(u) / static_cast<double>(u.size());
}

}  // namespace risee
