#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "risee/config.hpp"

namespace risee {

// One random drop: user positions, angle draws and the derived path losses.
// Angles are drawn, not computed from positions (only distances feed the
// path-loss model).
struct SetupGeometry {
  int index = 0;  // setup number within the experiment, used for RNG lineage
  Eigen::Vector2d bs_pos, ris_pos;
  std::vector<Eigen::Vector2d> ue_pos;     // K
  double aod_bs = 0.0;                     // BS->RIS departure azimuth
  double aoa_ris_az = 0.0, aoa_ris_el = 0.0;  // arrival at the RIS from the BS
  Eigen::VectorXd aod_ris_az, aod_ris_el;  // RIS->UE departure, per user
  double alpha_G = 0.0;                    // linear gains
  Eigen::VectorXd alpha_F, alpha_D;
};

struct PathLoss {
  double alpha_G;
  Eigen::VectorXd alpha_F, alpha_D;
};

// Deterministic pieces shared by every realization of a given drop.
struct LosComponents {
  Eigen::VectorXcd a_M;    // M_max, ULA at the BS
  Eigen::VectorXcd a_N;    // N, USPA at the RIS (arrival side)
  Eigen::MatrixXcd G_los;  // M_max x N rank one, a_M a_N^H
  Eigen::MatrixXcd F_los;  // N x K, column k = a_N(departure angles of user k)
};

// One Monte Carlo draw. F carries its path loss and is identical across draws
// (purely LoS); D and G are refreshed.
struct ChannelRealization {
  Eigen::MatrixXcd D;  // M_max x K
  Eigen::MatrixXcd G;  // M_max x N
  Eigen::MatrixXcd F;  // N x K
};

// dB-domain path-loss models, returned as linear gains. Distances in meters,
// all strictly positive.
PathLoss path_loss(double d_g, const Eigen::VectorXd& d_F, const Eigen::VectorXd& d_D);

// entry x = exp(j 2 pi ratio x sin(phi)), x = 0..M-1
Eigen::VectorXcd steering_ula(int M, double phi, double spacing_ratio);

// entry (x, y) = exp(j 2 pi ratio (x sin(phi) sin(varphi) + y cos(phi))),
// linear index n = y*X + x with X = sqrt(N) (x is the fast index).
// varphi = azimuth, phi = elevation.
Eigen::VectorXcd steering_uspa(int N, double varphi, double phi, double spacing_ratio);

SetupGeometry sample_setup(const SystemConfig& cfg, std::mt19937_64& rng);
LosComponents los_components(const SetupGeometry& geo, const SystemConfig& cfg);

// F = F_los * diag(alpha_F)^(1/2): the actual RIS-UE channel
Eigen::MatrixXcd ris_ue_channel(const SetupGeometry& geo, const SystemConfig& cfg);

ChannelRealization sample_realization(const SetupGeometry& geo, const SystemConfig& cfg,
                                      std::mt19937_64& rng);
// same, reusing precomputed LoS parts (hot path of the Monte Carlo loop)
ChannelRealization sample_realization(const SetupGeometry& geo, const SystemConfig& cfg,
                                      const LosComponents& los, std::mt19937_64& rng);

}  // namespace risee
