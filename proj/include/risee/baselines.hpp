#pragma once

#include <Eigen/Dense>
#include <vector>

#include "risee/config.hpp"
#include "risee/statistics.hpp"

namespace risee {

struct GradientResult {
  Eigen::VectorXcd v;
  int iters = 0;  // accepted ascent steps
  bool converged = true;
  std::vector<double> sum_rate_trace;  // entry 0 = at v_init
};

// d(sum_k R_k)/d(theta_n) at v = exp(j theta), via
// d(v^H X v)/d(theta_n) = 2 Im(conj(v_n) (X v)_n).
Eigen::VectorXd sum_rate_gradient(const Eigen::VectorXcd& v, const Eigen::VectorXd& p, int M,
                                  const ChannelStatistics& st, const SystemConfig& cfg);

// Steepest ascent on the sum of lower-bound rates over theta with Armijo
// backtracking (init step 1, shrink 0.5, slope 1e-4) and the shared
// |f(t+1) - f(t)| < eps_obj stopping rule.
GradientResult gradient_ascent_phases(const Eigen::VectorXd& p, int M,
                                      const Eigen::VectorXcd& v_init,
                                      const ChannelStatistics& st, const SystemConfig& cfg);

}  // namespace risee
