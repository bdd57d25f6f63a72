#pragma once

// shared scaffolding for the test binaries: small configs, canned drops,
// random unit-modulus vectors and Hermitian matrices

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "risee/channel.hpp"
#include "risee/config.hpp"
#include "risee/rng.hpp"
#include "risee/statistics.hpp"

namespace test {

constexpr double kPi = 3.14159265358979323846;

// desk-scale system; keeps every optimizer call in the millisecond range
inline risee::SystemConfig tiny_cfg(int K = 3, int N = 16, int M_max = 24) {
  risee::SystemConfig cfg;
  cfg.K = K;
  cfg.N = N;
  cfg.M_max = M_max;
  cfg.P_TX = risee::dbm_to_watt(30.0);
  cfg.sigma2 = risee::dbm_to_watt(-95.0);
  cfg.t_realizations = 50;
  cfg.s_setups = 2;
  cfg.seed = 7;
  return cfg;
}

inline risee::SetupGeometry draw_geo(const risee::SystemConfig& cfg, int idx) {
  auto rng = risee::substream(cfg.seed, risee::Stream::setup, static_cast<std::uint64_t>(idx));
  risee::SetupGeometry geo = risee::sample_setup(cfg, rng);
  geo.index = idx;
  return geo;
}

inline Eigen::VectorXcd random_unit_v(int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  Eigen::VectorXcd v(N);
  for (int n = 0; n < N; ++n) v[n] = std::polar(1.0, ang(rng));
  return v;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = std::complex<double>(g(rng), g(rng));
  Eigen::MatrixXcd H = 0.5 * (X + X.adjoint());
  return H;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& X) {
  return X.derived().cwiseAbs().maxCoeff();
}

}  // namespace test
