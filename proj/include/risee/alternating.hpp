#pragma once

#include <random>

#include "risee/config.hpp"
#include "risee/statistics.hpp"

namespace risee {

// Full alternating driver. Initialization (rng draw order is frozen):
// theta_n ~ U[0, 2pi) always; M = M_max when the strategy optimizes M, else
// M ~ U{K+1..M_max}; p = P_TX / K. random_all returns the initial point
// evaluated. cfg.method selects the phase optimizer (gradient allowed as a
// baseline drop-in).
Solution maximize_ee(const SetupGeometry& geo, const SystemConfig& cfg, Strategy strategy,
                     std::mt19937_64& rng);

// same, with precomputed statistics (sweeps reuse one drop many times)
Solution maximize_ee(const ChannelStatistics& st, const SystemConfig& cfg, Strategy strategy,
                     std::mt19937_64& rng);

}  // namespace risee
