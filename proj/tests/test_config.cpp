#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "risee/config.hpp"

using namespace risee;

namespace {

const char* kGood =
    "p_tx_dbm = 30\n"
    "sigma2_dbm = -95\n"
    "k_users = 3\n"
    "n_ris = 16\n"
    "m_max = 24\n"
    "r_min = 1.0\n"
    "rho = 1.2\n"
    "p_fix_dbw = 9\n"
    "p_bs_w = 1.0\n"
    "p_ris_dbm = 10\n"
    "k1 = 3.5\n"
    "t_realizations = 50\n"
    "s_setups = 4\n"
    "seed = 7\n"
    "method = analytic\n"
    "strategy = p_v_M\n";

SystemConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "mem");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string drop_key(const std::string& key) {
  std::istringstream in(kGood);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind(key + " ", 0) != 0) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(dbw_to_watt(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dbw_to_watt(9.0) == doctest::Approx(7.943282347242816).epsilon(1e-14));
  CHECK(db_to_lin(-50.0) == doctest::Approx(1e-5).epsilon(1e-14));
  CHECK(watt_to_dbm(dbm_to_watt(17.25)) == doctest::Approx(17.25).epsilon(1e-12));
}

TEST_CASE("valid file parses with unit handling") {
  SystemConfig cfg = parse(kGood);
  CHECK(cfg.K == 3);
  CHECK(cfg.N == 16);
  CHECK(cfg.M_max == 24);
  CHECK(cfg.P_TX == doctest::Approx(1.0).epsilon(1e-14));          // 30 dBm
  CHECK(cfg.sigma2 == doctest::Approx(3.1622776601683796e-13).epsilon(1e-12));
  CHECK(cfg.P_FIX == doctest::Approx(7.943282347242816).epsilon(1e-14));  // 9 dBW
  CHECK(cfg.P_BS == doctest::Approx(1.0).epsilon(1e-14));          // plain watts
  CHECK(cfg.P_RIS == doctest::Approx(0.01).epsilon(1e-14));        // 10 dBm
  CHECK(cfg.K1 == doctest::Approx(3.5));
  CHECK(cfg.R_min == doctest::Approx(1.0));
  CHECK(cfg.rho == doctest::Approx(1.2));
  CHECK(cfg.t_realizations == 50);
  CHECK(cfg.s_setups == 4);
  CHECK(cfg.seed == 7);
  CHECK(cfg.method == PhaseMethod::analytic);
  CHECK(cfg.strategy == Strategy::p_v_M);
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text = std::string("# header\n\n") + kGood + "   # trailing comment line\n";
  CHECK_NOTHROW(parse(text));
  SystemConfig cfg = parse("p_tx_dbm = 30 # inline\n" + drop_key("p_tx_dbm"));
  CHECK(cfg.P_TX == doctest::Approx(1.0));
}

TEST_CASE("every missing key is reported by name") {
  const char* keys[] = {"p_tx_dbm", "sigma2_dbm", "k_users", "n_ris",
                        "m_max",    "r_min",      "rho",     "p_fix_dbw",
                        "p_bs_w",   "p_ris_dbm",  "k1",      "t_realizations",
                        "s_setups", "seed",       "method",  "strategy"};
  for (const char* k : keys) {
    std::string msg = parse_error(drop_key(k));
    CAPTURE(k);
    CHECK(msg.find("missing config key") != std::string::npos);
    CHECK(msg.find(std::string("'") + k + "'") != std::string::npos);
  }
}

TEST_CASE("unknown, duplicate and malformed lines carry file:line anchors") {
  std::string msg = parse_error(kGood + std::string("bogus_key = 1\n"));
  CHECK(msg.find("unknown key 'bogus_key'") != std::string::npos);
  CHECK(msg.find("mem:17") != std::string::npos);

  msg = parse_error(kGood + std::string("k1 = 4\n"));
  CHECK(msg.find("duplicate key 'k1'") != std::string::npos);

  msg = parse_error(std::string("just words\n") + kGood);
  CHECK(msg.find("expected 'key = value'") != std::string::npos);
  CHECK(msg.find("mem:1") != std::string::npos);

  msg = parse_error("k1 = banana\n" + drop_key("k1"));
  CHECK(msg.find("needs a number") != std::string::npos);
  CHECK(msg.find("banana") != std::string::npos);

  msg = parse_error("seed = 12x\n" + drop_key("seed"));
  CHECK(msg.find("seed") != std::string::npos);
  CHECK(msg.find("unsigned integer") != std::string::npos);

  msg = parse_error("method = newton\n" + drop_key("method"));
  CHECK(msg.find("unknown method 'newton'") != std::string::npos);

  msg = parse_error("strategy = everything\n" + drop_key("strategy"));
  CHECK(msg.find("unknown strategy 'everything'") != std::string::npos);
}

TEST_CASE("validate rejects inconsistent systems") {
  std::string msg = parse_error("n_ris = 10\n" + drop_key("n_ris"));
  CHECK(msg.find("perfect square") != std::string::npos);

  msg = parse_error("m_max = 3\n" + drop_key("m_max"));  // K = 3
  CHECK(msg.find("m_max must exceed k_users") != std::string::npos);

  msg = parse_error("k_users = 0\n" + drop_key("k_users"));
  CHECK(msg.find("k_users") != std::string::npos);

  msg = parse_error("rho = 0.5\n" + drop_key("rho"));
  CHECK(msg.find("rho") != std::string::npos);

  msg = parse_error("k1 = -1\n" + drop_key("k1"));
  CHECK(msg.find("k1 must be >= 0") != std::string::npos);

  msg = parse_error("t_realizations = 0\n" + drop_key("t_realizations"));
  CHECK(msg.find("t_realizations") != std::string::npos);
}

TEST_CASE("method and strategy parsers round-trip") {
  for (const char* m : {"analytic", "sfp", "gradient"})
    CHECK(std::string(to_string(parse_method(m))) == m);
  for (const char* s : {"p_only", "p_v", "p_M", "p_v_M", "random_all"})
    CHECK(std::string(to_string(parse_strategy(s))) == s);
  CHECK_THROWS_AS(parse_method(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy("pvM"), std::invalid_argument);

  CHECK(optimizes_v(Strategy::p_v));
  CHECK(optimizes_v(Strategy::p_v_M));
  CHECK_FALSE(optimizes_v(Strategy::p_M));
  CHECK_FALSE(optimizes_v(Strategy::random_all));
  CHECK(optimizes_m(Strategy::p_M));
  CHECK(optimizes_m(Strategy::p_v_M));
  CHECK_FALSE(optimizes_m(Strategy::p_only));
}

TEST_CASE("canonical string is order and whitespace independent") {
  // same values, reshuffled lines, extra spacing and comments
  std::string shuffled =
      "strategy=p_v_M\n"
      "seed   =   7\n"
      "method = analytic   # default\n"
      "k1 = 3.5\n"
      "p_ris_dbm = 10\n"
      "p_bs_w = 1.0\n"
      "p_fix_dbw = 9\n"
      "rho = 1.2\n"
      "r_min = 1.0\n"
      "m_max = 24\n"
      "n_ris = 16\n"
      "k_users = 3\n"
      "sigma2_dbm = -95\n"
      "p_tx_dbm = 30\n"
      "s_setups = 4\n"
      "t_realizations = 50\n";
  SystemConfig a = parse(kGood);
  SystemConfig b = parse(shuffled);
  CHECK(canonical_config_string(a) == canonical_config_string(b));
  CHECK(fnv1a64(canonical_config_string(a)) == fnv1a64(canonical_config_string(b)));

  b.seed = 8;  // a post-parse override must change the hash
  CHECK(canonical_config_string(a) != canonical_config_string(b));
  CHECK(fnv1a64(canonical_config_string(a)) != fnv1a64(canonical_config_string(b)));
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
