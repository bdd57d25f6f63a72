#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>

namespace risee {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }
inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

enum class PhaseMethod { analytic, sfp, gradient };
enum class Strategy { p_only, p_v, p_M, p_v_M, random_all };

PhaseMethod parse_method(const std::string& s);      // throws std::invalid_argument
Strategy parse_strategy(const std::string& s);
const char* to_string(PhaseMethod m);
const char* to_string(Strategy s);
bool optimizes_v(Strategy s);
bool optimizes_m(Strategy s);

// All scalar parameters of the system. Powers are stored linearly in watts;
// the config file takes them in the units its key names say (dBm/dBW/W).
struct SystemConfig {
  int K = 10;        // users
  int N = 100;       // RIS elements, perfect square
  int M_max = 256;   // BS antenna budget
  double P_TX = dbm_to_watt(50.0);
  double sigma2 = dbm_to_watt(-95.0);
  double K1 = 3.5;   // Rician factor of the BS-RIS link
  double R_min = 1.0;
  double rho = 1.2;  // PA inefficiency
  double P_FIX = dbw_to_watt(9.0);
  double P_BS = 1.0;
  double P_RIS = dbm_to_watt(10.0);
  double spacing_ratio = 0.5;  // d / lambda

  // drop geometry: BS at the origin, RIS on the x axis, users in a disk
  double bs_x = 0.0, bs_y = 0.0;
  double ris_x = 100.0, ris_y = 0.0;
  double ue_center_x = 100.0, ue_center_y = 50.0;
  double ue_radius = 15.0;

  // tolerances and iteration caps (not config-file keys; fixed here and
  // overridable programmatically)
  double eps_phase = 1e-6;  // inner loop ||v - v_prev||
  double eps_obj = 1e-3;    // middle/outer objective change, shared with the gradient baseline
  double eps_outer = 1e-4;  // relative EE change, Algorithms 2 and 3
  int max_iter_inner = 100;
  int max_iter_mid = 50;
  int max_iter_outer = 50;
  int max_iter_alg2 = 500;
  int max_iter_alg3 = 30;
  int max_iter_grad = 2000;
  double mu_step = 0.1;        // subgradient steps: mu uses 1/10,
  double vartheta_step = 0.1;  // vartheta uses sqrt(l)/10

  int t_realizations = 500;
  int s_setups = 50;
  std::uint64_t seed = 1;
  PhaseMethod method = PhaseMethod::analytic;
  Strategy strategy = Strategy::p_v_M;

  void validate() const;   // throws std::invalid_argument naming the bad field
  int uspa_side() const;   // sqrt(N); call validate() first
};

// Config file problem with a file/line anchored message. Missing required keys
// map to CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Flat key = value file, '#' comments. All sixteen keys are required:
// p_tx_dbm sigma2_dbm k_users n_ris m_max r_min rho p_fix_dbw p_bs_w
// p_ris_dbm k1 t_realizations s_setups seed method strategy
SystemConfig parse_config(std::istream& in, const std::string& name);
SystemConfig load_config(const std::string& path);

// Canonical key=value dump of the sixteen file keys (post-override values);
// basis of the manifest hash so identical (config, seed) hash identically.
std::string canonical_config_string(const SystemConfig& cfg);
std::uint64_t fnv1a64(const std::string& s);

}  // namespace risee
