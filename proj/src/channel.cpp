#include "risee/channel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace risee {

using std::complex;
constexpr double kPi = 3.14159265358979323846;

PathLoss path_loss(double d_g, const Eigen::VectorXd& d_F, const Eigen::VectorXd& d_D) {
  if (!(d_g > 0.0)) throw std::domain_error("path_loss: BS-RIS distance must be positive");
  if (d_F.size() != d_D.size()) throw std::invalid_argument("path_loss: size mismatch");
  PathLoss pl;
  pl.alpha_G = db_to_lin(-25.0 * std::log10(d_g));
  pl.alpha_F.resize(d_F.size());
  pl.alpha_D.resize(d_D.size());
  for (Eigen::Index k = 0; k < d_F.size(); ++k) {
    if (!(d_F[k] > 0.0) || !(d_D[k] > 0.0))
      throw std::domain_error("path_loss: UE distances must be positive");
    pl.alpha_F[k] = db_to_lin(-10.6 - 20.0 * std::log10(d_F[k]));
    pl.alpha_D[k] = db_to_lin(-35.6 - 40.0 * std::log10(d_D[k]));
  }
  return pl;
}

Eigen::VectorXcd steering_ula(int M, double phi, double spacing_ratio) {
  Eigen::VectorXcd a(M);
  double step = 2.0 * kPi * spacing_ratio * std::sin(phi);
  for (int x = 0; x < M; ++x) a[x] = std::polar(1.0, step * x);
  return a;
}

Eigen::VectorXcd steering_uspa(int N, double varphi, double phi, double spacing_ratio) {
  int X = static_cast<int>(std::llround(std::sqrt(static_cast<double>(N))));
  if (X * X != N) throw std::domain_error("steering_uspa: N must be a perfect square");
  Eigen::VectorXcd a(N);
  double cx = 2.0 * kPi * spacing_ratio * std::sin(phi) * std::sin(varphi);
  double cy = 2.0 * kPi * spacing_ratio * std::cos(phi);
  for (int y = 0; y < X; ++y)
    for (int x = 0; x < X; ++x) a[y * X + x] = std::polar(1.0, cx * x + cy * y);
  return a;
}

SetupGeometry sample_setup(const SystemConfig& cfg, std::mt19937_64& rng) {
  SetupGeometry geo;
  geo.bs_pos = {cfg.bs_x, cfg.bs_y};
  geo.ris_pos = {cfg.ris_x, cfg.ris_y};
  geo.ue_pos.resize(cfg.K);
  geo.aod_ris_az.resize(cfg.K);
  geo.aod_ris_el.resize(cfg.K);

  // draw order is frozen: positions, per-UE departure angles, BS departure,
  // RIS arrival pair -- reordering would silently change every experiment
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < cfg.K; ++k) {
    double r = cfg.ue_radius * std::sqrt(u01(rng));  // uniform over the disk
    double psi = 2.0 * kPi * u01(rng);
    geo.ue_pos[k] = {cfg.ue_center_x + r * std::cos(psi), cfg.ue_center_y + r * std::sin(psi)};
  }
  std::uniform_real_distribution<double> az_ue(-kPi / 3.0, kPi / 3.0);
  std::uniform_real_distribution<double> el(0.0, kPi / 2.0);
  for (int k = 0; k < cfg.K; ++k) {
    geo.aod_ris_az[k] = az_ue(rng);
    geo.aod_ris_el[k] = el(rng);
  }
  std::uniform_real_distribution<double> half(-kPi / 2.0, kPi / 2.0);
  geo.aod_bs = half(rng);
  geo.aoa_ris_az = half(rng);
  geo.aoa_ris_el = el(rng);

  double d_g = (geo.bs_pos - geo.ris_pos).norm();
  Eigen::VectorXd d_F(cfg.K), d_D(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    d_F[k] = (geo.ris_pos - geo.ue_pos[k]).norm();
    d_D[k] = (geo.bs_pos - geo.ue_pos[k]).norm();
  }
  PathLoss pl = path_loss(d_g, d_F, d_D);
  geo.alpha_G = pl.alpha_G;
  geo.alpha_F = pl.alpha_F;
  geo.alpha_D = pl.alpha_D;
  return geo;
}

LosComponents los_components(const SetupGeometry& geo, const SystemConfig& cfg) {
  LosComponents los;
  los.a_M = steering_ula(cfg.M_max, geo.aod_bs, cfg.spacing_ratio);
  los.a_N = steering_uspa(cfg.N, geo.aoa_ris_az, geo.aoa_ris_el, cfg.spacing_ratio);
  los.G_los = los.a_M * los.a_N.adjoint();
  los.F_los.resize(cfg.N, cfg.K);
  for (int k = 0; k < cfg.K; ++k)
    los.F_los.col(k) = steering_uspa(cfg.N, geo.aod_ris_az[k], geo.aod_ris_el[k], cfg.spacing_ratio);
  return los;
}

Eigen::MatrixXcd ris_ue_channel(const SetupGeometry& geo, const SystemConfig& cfg) {
  LosComponents los = los_components(geo, cfg);
  return los.F_los * geo.alpha_F.cwiseSqrt().asDiagonal();
}

ChannelRealization sample_realization(const SetupGeometry& geo, const SystemConfig& cfg,
                                      const LosComponents& los, std::mt19937_64& rng) {
  ChannelRealization re;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto cn01 = [&]() { return complex<double>(gauss(rng) * inv_sqrt2, gauss(rng) * inv_sqrt2); };

  re.D.resize(cfg.M_max, cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double amp = std::sqrt(geo.alpha_D[k]);
    for (int m = 0; m < cfg.M_max; ++m) re.D(m, k) = amp * cn01();
  }
  double w_nlos = std::sqrt(geo.alpha_G / (cfg.K1 + 1.0));
  double w_los = std::sqrt(geo.alpha_G * cfg.K1 / (cfg.K1 + 1.0));
  re.G.resize(cfg.M_max, cfg.N);
  for (int n = 0; n < cfg.N; ++n)
    for (int m = 0; m < cfg.M_max; ++m) re.G(m, n) = w_nlos * cn01() + w_los * los.G_los(m, n);
  re.F = los.F_los * geo.alpha_F.cwiseSqrt().asDiagonal();
  return re;
}

ChannelRealization sample_realization(const SetupGeometry& geo, const SystemConfig& cfg,
                                      std::mt19937_64& rng) {
  LosComponents los = los_components(geo, cfg);
  return sample_realization(geo, cfg, los, rng);
}

}  // namespace risee
