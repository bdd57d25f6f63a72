#include "risee/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace risee {

PhaseMethod parse_method(const std::string& s) {
  if (s == "analytic") return PhaseMethod::analytic;
  if (s == "sfp") return PhaseMethod::sfp;
  if (s == "gradient") return PhaseMethod::gradient;
  throw std::invalid_argument("unknown method '" + s + "' (expected analytic|sfp|gradient)");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "p_only") return Strategy::p_only;
  if (s == "p_v") return Strategy::p_v;
  if (s == "p_M") return Strategy::p_M;
  if (s == "p_v_M") return Strategy::p_v_M;
  if (s == "random_all") return Strategy::random_all;
  throw std::invalid_argument("unknown strategy '" + s +
                              "' (expected p_only|p_v|p_M|p_v_M|random_all)");
}

const char* to_string(PhaseMethod m) {
  switch (m) {
    case PhaseMethod::analytic: return "analytic";
    case PhaseMethod::sfp: return "sfp";
    case PhaseMethod::gradient: return "gradient";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::p_only: return "p_only";
    case Strategy::p_v: return "p_v";
    case Strategy::p_M: return "p_M";
    case Strategy::p_v_M: return "p_v_M";
    case Strategy::random_all: return "random_all";
  }
  return "?";
}

bool optimizes_v(Strategy s) { return s == Strategy::p_v || s == Strategy::p_v_M; }
bool optimizes_m(Strategy s) { return s == Strategy::p_M || s == Strategy::p_v_M; }

int SystemConfig::uspa_side() const {
  int side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(N))));
  return side;
}

void SystemConfig::validate() const {
  if (K < 1) throw std::invalid_argument("k_users must be >= 1");
  if (N < 1) throw std::invalid_argument("n_ris must be >= 1");
  int side = uspa_side();
  if (side * side != N) throw std::invalid_argument("n_ris must be a perfect square");
  if (M_max <= K) throw std::invalid_argument("m_max must exceed k_users (ZF feasibility)");
  if (!(P_TX > 0.0)) throw std::invalid_argument("p_tx_dbm converts to a nonpositive power");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2_dbm converts to a nonpositive power");
  if (!(P_FIX > 0.0) || !(P_BS > 0.0) || !(P_RIS > 0.0))
    throw std::invalid_argument("consumption constants must be positive");
  if (K1 < 0.0) throw std::invalid_argument("k1 must be >= 0");
  if (rho < 1.0) throw std::invalid_argument("rho must be >= 1");
  if (R_min < 0.0) throw std::invalid_argument("r_min must be >= 0");
  if (spacing_ratio <= 0.0) throw std::invalid_argument("spacing_ratio must be positive");
  if (t_realizations < 1) throw std::invalid_argument("t_realizations must be >= 1");
  if (s_setups < 1) throw std::invalid_argument("s_setups must be >= 1");
  if (ue_radius < 0.0) throw std::invalid_argument("ue_radius must be >= 0");
}

namespace {

const std::vector<std::string> kRequiredKeys = {
    "p_tx_dbm", "sigma2_dbm", "k_users", "n_ris", "m_max", "r_min", "rho", "p_fix_dbw",
    "p_bs_w", "p_ris_dbm", "k1", "t_realizations", "s_setups", "seed", "method", "strategy"};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& name, const std::string& val, const std::string& where) {
  try {
    size_t pos = 0;
    double d = std::stod(val, &pos);
    if (pos != val.size()) throw std::invalid_argument("trailing junk");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(where + ": key '" + name + "' needs a number, got '" + val + "'");
  }
}

long long parse_int(const std::string& name, const std::string& val, const std::string& where) {
  try {
    size_t pos = 0;
    long long i = std::stoll(val, &pos);
    if (pos != val.size()) throw std::invalid_argument("trailing junk");
    return i;
  } catch (const std::exception&) {
    throw ConfigError(where + ": key '" + name + "' needs an integer, got '" + val + "'");
  }
}

std::uint64_t parse_u64(const std::string& name, const std::string& val, const std::string& where) {
  try {
    size_t pos = 0;
    unsigned long long u = std::stoull(val, &pos);
    if (pos != val.size()) throw std::invalid_argument("trailing junk");
    return u;
  } catch (const std::exception&) {
    throw ConfigError(where + ": key '" + name + "' needs an unsigned integer, got '" + val + "'");
  }
}

}  // namespace

SystemConfig parse_config(std::istream& in, const std::string& name) {
  std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) + ": expected 'key = value', got '" +
                        trim(line) + "'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (std::find(kRequiredKeys.begin(), kRequiredKeys.end(), key) == kRequiredKeys.end())
      throw ConfigError(name + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw ConfigError(name + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                        "' (first at line " + std::to_string(kv[key].second) + ")");
    kv[key] = {val, lineno};
  }
  for (const auto& k : kRequiredKeys)
    if (!kv.count(k)) throw ConfigError(name + ": missing config key '" + k + "'");

  auto at = [&](const char* k) { return kv.at(k).first; };
  auto where = [&](const char* k) { return name + ":" + std::to_string(kv.at(k).second); };

  SystemConfig cfg;
  cfg.P_TX = dbm_to_watt(parse_double("p_tx_dbm", at("p_tx_dbm"), where("p_tx_dbm")));
  cfg.sigma2 = dbm_to_watt(parse_double("sigma2_dbm", at("sigma2_dbm"), where("sigma2_dbm")));
  cfg.K = static_cast<int>(parse_int("k_users", at("k_users"), where("k_users")));
  cfg.N = static_cast<int>(parse_int("n_ris", at("n_ris"), where("n_ris")));
  cfg.M_max = static_cast<int>(parse_int("m_max", at("m_max"), where("m_max")));
  cfg.R_min = parse_double("r_min", at("r_min"), where("r_min"));
  cfg.rho = parse_double("rho", at("rho"), where("rho"));
  cfg.P_FIX = dbw_to_watt(parse_double("p_fix_dbw", at("p_fix_dbw"), where("p_fix_dbw")));
  cfg.P_BS = parse_double("p_bs_w", at("p_bs_w"), where("p_bs_w"));
  cfg.P_RIS = dbm_to_watt(parse_double("p_ris_dbm", at("p_ris_dbm"), where("p_ris_dbm")));
  cfg.K1 = parse_double("k1", at("k1"), where("k1"));
  cfg.t_realizations =
      static_cast<int>(parse_int("t_realizations", at("t_realizations"), where("t_realizations")));
  cfg.s_setups = static_cast<int>(parse_int("s_setups", at("s_setups"), where("s_setups")));
  cfg.seed = parse_u64("seed", at("seed"), where("seed"));
  try {
    cfg.method = parse_method(at("method"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where("method") + ": " + e.what());
  }
  try {
    cfg.strategy = parse_strategy(at("strategy"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where("strategy") + ": " + e.what());
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_config(in, path);
}

std::string canonical_config_string(const SystemConfig& cfg) {
  char buf[1024];
  // dB-domain keys are re-derived from the stored linear values so overrides
  // land in the hash too
  std::snprintf(buf, sizeof buf,
                "k1=%.17g\nk_users=%d\nm_max=%d\nmethod=%s\nn_ris=%d\np_bs_w=%.17g\n"
                "p_fix_dbw=%.17g\np_ris_dbm=%.17g\np_tx_dbm=%.17g\nr_min=%.17g\nrho=%.17g\n"
                "s_setups=%d\nseed=%llu\nsigma2_dbm=%.17g\nstrategy=%s\nt_realizations=%d\n",
                cfg.K1, cfg.K, cfg.M_max, to_string(cfg.method), cfg.N, cfg.P_BS,
                10.0 * std::log10(cfg.P_FIX), watt_to_dbm(cfg.P_RIS), watt_to_dbm(cfg.P_TX),
                cfg.R_min, cfg.rho, cfg.s_setups, static_cast<unsigned long long>(cfg.seed),
                watt_to_dbm(cfg.sigma2), to_string(cfg.strategy), cfg.t_realizations);
  return std::string(buf);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace risee
