#include "risee/statistics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace risee {

namespace {
constexpr double kCondLimit = 1e12;
}

ChannelStatistics compute_statistics(const SetupGeometry& geo, const SystemConfig& cfg) {
  ChannelStatistics st;
  LosComponents los = los_components(geo, cfg);
  st.a_N = los.a_N;
  Eigen::MatrixXcd F = los.F_los * geo.alpha_F.cwiseSqrt().asDiagonal();  // N x K

  st.Lambda = geo.alpha_G * (F.adjoint() * F);
  st.Lambda += ((cfg.K1 + 1.0) * geo.alpha_D).asDiagonal();
  symmetrize(st.Lambda);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(st.Lambda, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kCondLimit)
    throw std::runtime_error("compute_statistics: Lambda is numerically singular (cond > 1e12)");

  Eigen::LLT<Eigen::MatrixXcd> llt(st.Lambda);
  Eigen::MatrixXcd linv = llt.solve(Eigen::MatrixXcd::Identity(cfg.K, cfg.K));
  st.lambda_inv_diag = linv.diagonal().real();

  // s_k^H = row k of Lambda^-1 F^H diag(a_N)
  st.s = llt.solve(F.adjoint()) * st.a_N.asDiagonal();

  st.B = (geo.alpha_G * cfg.K1) *
         (st.a_N.conjugate().asDiagonal() * (F * llt.solve(F.adjoint())) * st.a_N.asDiagonal());
  st.B += Eigen::MatrixXcd::Identity(cfg.N, cfg.N) / static_cast<double>(cfg.N);
  symmetrize(st.B);

  st.k1_alpha_g = cfg.K1 * geo.alpha_G;
  st.A.resize(cfg.K);
  recompute_A(st);
  return st;
}

void recompute_A(ChannelStatistics& st) {
  const int K = static_cast<int>(st.s.rows());
  for (int k = 0; k < K; ++k) {
    st.A[k] = st.lambda_inv_diag[k] * st.B -
              st.k1_alpha_g * (st.s.row(k).adjoint() * st.s.row(k));
    symmetrize(st.A[k]);
  }
}

Eigen::VectorXd rate_lower_bound(const Eigen::VectorXd& p, int M, const Eigen::VectorXcd& v,
                                 const ChannelStatistics& st, const SystemConfig& cfg) {
  if (M <= cfg.K)
    throw std::invalid_argument("rate_lower_bound: M must exceed K (rate is null at M == K)");
  const double qB = quad_form(st.B, v);
  const double noise = cfg.sigma2 * (cfg.K1 + 1.0);
  Eigen::VectorXd r(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double qA = quad_form(st.A[k], v);
    if (!(qA > 0.0))
      throw std::runtime_error("rate_lower_bound: v^H A_k v <= 0 (degenerate statistics, k=" +
                               std::to_string(k) + ")");
    r[k] = std::log2(1.0 + p[k] * (M - cfg.K) * qB / (noise * qA));
  }
  return r;
}

double energy_efficiency(const Eigen::VectorXd& p, int M, const Eigen::VectorXd& rates,
                         const SystemConfig& cfg) {
  double consumed = cfg.rho * p.sum() + cfg.P_FIX + M * cfg.P_BS + cfg.N * cfg.P_RIS;
  return rates.sum() / consumed;
}

}  // namespace risee
