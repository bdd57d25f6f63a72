// Experiment runner: evaluates the optimizer over randomized drops and emits
// CSV + a JSON manifest per subcommand. Setups run in parallel into indexed
// slots; a single writer emits rows in slot order, so output is byte-identical
// for a given (config, seed) regardless of --threads.
#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "risee/alternating.hpp"
#include "risee/baselines.hpp"
#include "risee/channel.hpp"
#include "risee/config.hpp"
#include "risee/montecarlo.hpp"
#include "risee/phase_opt.hpp"
#include "risee/rng.hpp"

using namespace risee;
namespace fs = std::filesystem;

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + p.string());
  out << body;
}

// one drop: geometry + statistics, shared across budgets/strategies/methods
struct Drop {
  SetupGeometry geo;
  ChannelStatistics st;
  std::string error;  // non-empty: statistics failed (conditioning), skip
};

std::vector<Drop> make_drops(const SystemConfig& cfg) {
  std::vector<Drop> drops(cfg.s_setups);
  for (int s = 0; s < cfg.s_setups; ++s) {
    auto rng = substream(cfg.seed, Stream::setup, s);
    drops[s].geo = sample_setup(cfg, rng);
    drops[s].geo.index = s;
    try {
      drops[s].st = compute_statistics(drops[s].geo, cfg);
    } catch (const std::exception& e) {
      drops[s].error = e.what();
    }
  }
  return drops;
}

const Strategy kAllStrategies[] = {Strategy::p_only, Strategy::p_v, Strategy::p_M,
                                   Strategy::p_v_M, Strategy::random_all};
const PhaseMethod kAllMethods[] = {PhaseMethod::analytic, PhaseMethod::sfp,
                                   PhaseMethod::gradient};

std::vector<double> budgets_dbm() {
  std::vector<double> b;
  for (double x = 20.0; x <= 50.0 + 1e-9; x += 5.0) b.push_back(x);
  return b;
}

struct RunContext {
  SystemConfig cfg;
  fs::path outdir;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  nlohmann::json overrides = nlohmann::json::object();
};

void write_manifest(const RunContext& rc, const std::string& subcommand,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["subcommand"] = subcommand;
  m["seed"] = rc.cfg.seed;
  std::string canon = canonical_config_string(rc.cfg);
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  m["config_hash_fnv1a64"] = hex;
  m["config_canonical"] = canon;
  m["overrides"] = rc.overrides;
  m["outputs"] = outputs;
  m["versions"] = {
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", __VERSION__},
      {"cxx", static_cast<long>(__cplusplus)},
      {"risee", "1.0.0"},
  };
  write_text(rc.outdir / "manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- sweep ----

int run_sweep(const RunContext& rc) {
  const SystemConfig& cfg = rc.cfg;
  std::vector<Drop> drops = make_drops(cfg);
  std::vector<double> budgets = budgets_dbm();

  struct Cell {
    std::vector<Solution> sols;        // per setup
    std::vector<std::string> status;   // "ok" or error text
  };
  const int nb = static_cast<int>(budgets.size());
  const int ns = 5;
  std::vector<Cell> cells(nb * ns);
  for (auto& c : cells) {
    c.sols.resize(cfg.s_setups);
    c.status.assign(cfg.s_setups, "ok");
  }

  parallel_for(cfg.s_setups, rc.threads, [&](int s) {
    for (int bi = 0; bi < nb; ++bi) {
      SystemConfig c = cfg;
      c.P_TX = dbm_to_watt(budgets[bi]);
      for (int si = 0; si < ns; ++si) {
        Cell& cell = cells[bi * ns + si];
        if (!drops[s].error.empty()) {
          cell.status[s] = drops[s].error;
          continue;
        }
        try {
          auto rng = substream(cfg.seed, Stream::init, s);
          cell.sols[s] = maximize_ee(drops[s].st, c, kAllStrategies[si], rng);
        } catch (const std::exception& e) {
          cell.status[s] = e.what();
        }
      }
    }
  });

  std::string csv =
      "p_tx_dbm,strategy,setup,seed,status,ee_bps_hz_w,sum_rate_bps_hz,m_active,sum_p_w,"
      "utilization,outer_iters,converged,feasible_power,feasible_qos\n";
  std::string summary =
      "p_tx_dbm,strategy,n_setups,n_ok,mean_ee_bps_hz_w,mean_m_active,mean_utilization\n";
  for (int bi = 0; bi < nb; ++bi)
    for (int si = 0; si < ns; ++si) {
      const Cell& cell = cells[bi * ns + si];
      double see = 0, sm = 0, su = 0;
      int ok = 0;
      for (int s = 0; s < cfg.s_setups; ++s) {
        const Solution& sol = cell.sols[s];
        bool good = cell.status[s] == "ok";
        double ptx = dbm_to_watt(budgets[bi]);
        csv += g17(budgets[bi]) + "," + to_string(kAllStrategies[si]) + "," + std::to_string(s) +
               "," + std::to_string(cfg.seed) + "," + sanitize(cell.status[s]) + ",";
        if (good) {
          csv += g17(sol.ee) + "," + g17(sol.rates.sum()) + "," + std::to_string(sol.M) + "," +
                 g17(sol.p.sum()) + "," + g17(sol.p.sum() / ptx) + "," +
                 std::to_string(sol.outer_iters) + "," + std::to_string(int(sol.converged)) + "," +
                 std::to_string(int(sol.feasible_power)) + "," +
                 std::to_string(int(sol.feasible_qos)) + "\n";
          see += sol.ee;
          sm += sol.M;
          su += sol.p.sum() / ptx;
          ++ok;
        } else {
          csv += "nan,nan,0,nan,nan,0,0,0,0\n";
        }
      }
      summary += g17(budgets[bi]) + std::string(",") + to_string(kAllStrategies[si]) + "," +
                 std::to_string(cfg.s_setups) + "," + std::to_string(ok) + "," +
                 (ok ? g17(see / ok) : "nan") + "," + (ok ? g17(sm / ok) : "nan") + "," +
                 (ok ? g17(su / ok) : "nan") + "\n";
    }
  write_text(rc.outdir / "sweep.csv", csv);
  write_text(rc.outdir / "sweep_summary.csv", summary);
  write_manifest(rc, "sweep", {"sweep.csv", "sweep_summary.csv"});
  return 0;
}

// ----------------------------------------------------------------- ccdf ----

int run_ccdf(const RunContext& rc) {
  const SystemConfig& cfg = rc.cfg;
  std::vector<Drop> drops = make_drops(cfg);
  const int ns = 5;
  std::vector<std::vector<Solution>> sols(ns, std::vector<Solution>(cfg.s_setups));
  std::vector<std::vector<std::string>> status(ns);
  for (auto& v : status) v.assign(cfg.s_setups, "ok");

  parallel_for(cfg.s_setups, rc.threads, [&](int s) {
    for (int si = 0; si < ns; ++si) {
      if (!drops[s].error.empty()) {
        status[si][s] = drops[s].error;
        continue;
      }
      try {
        auto rng = substream(cfg.seed, Stream::init, s);
        sols[si][s] = maximize_ee(drops[s].st, cfg, kAllStrategies[si], rng);
      } catch (const std::exception& e) {
        status[si][s] = e.what();
      }
    }
  });

  std::string rate_samples = "strategy,setup,seed,ue,rate_lb_bps_hz,status\n";
  std::string ee_samples = "strategy,setup,seed,ee_bps_hz_w,status\n";
  std::string rate_curve = "strategy,rate_bps_hz,ccdf\n";
  std::string ee_curve = "strategy,ee_bps_hz_w,ccdf\n";
  for (int si = 0; si < ns; ++si) {
    std::vector<double> rates, ees;
    for (int s = 0; s < cfg.s_setups; ++s) {
      bool good = status[si][s] == "ok";
      ee_samples += std::string(to_string(kAllStrategies[si])) + "," + std::to_string(s) + "," +
                    std::to_string(cfg.seed) + "," + (good ? g17(sols[si][s].ee) : "nan") + "," +
                    sanitize(status[si][s]) + "\n";
      for (int k = 0; k < cfg.K; ++k)
        rate_samples += std::string(to_string(kAllStrategies[si])) + "," + std::to_string(s) +
                        "," + std::to_string(cfg.seed) + "," + std::to_string(k) + "," +
                        (good ? g17(sols[si][s].rates[k]) : "nan") + "," +
                        sanitize(status[si][s]) + "\n";
      if (good) {
        ees.push_back(sols[si][s].ee);
        for (int k = 0; k < cfg.K; ++k) rates.push_back(sols[si][s].rates[k]);
      }
    }
    if (!rates.empty())
      for (auto& [x, pr] : ccdf(rates))
        rate_curve +=
            std::string(to_string(kAllStrategies[si])) + "," + g17(x) + "," + g17(pr) + "\n";
    if (!ees.empty())
      for (auto& [x, pr] : ccdf(ees))
        ee_curve +=
            std::string(to_string(kAllStrategies[si])) + "," + g17(x) + "," + g17(pr) + "\n";
  }
  write_text(rc.outdir / "rate_samples.csv", rate_samples);
  write_text(rc.outdir / "ee_samples.csv", ee_samples);
  write_text(rc.outdir / "rate_ccdf.csv", rate_curve);
  write_text(rc.outdir / "ee_ccdf.csv", ee_curve);
  write_manifest(rc, "ccdf",
                 {"rate_samples.csv", "ee_samples.csv", "rate_ccdf.csv", "ee_ccdf.csv"});
  return 0;
}

// --------------------------------------------------------------- rician ----

int run_rician(const RunContext& rc) {
  const SystemConfig& cfg = rc.cfg;
  // 0 kills the LoS terms, 3.5 is the reference point, 35 is LoS-dominant
  const double k1s[] = {0.0, 3.5, 35.0};
  std::vector<double> budgets = budgets_dbm();
  std::vector<Drop> drops = make_drops(cfg);  // geometry does not depend on K1

  const int nk = 3, nb = static_cast<int>(budgets.size());
  struct Cell {
    std::vector<Solution> sols;
    std::vector<std::string> status;
  };
  std::vector<Cell> cells(nk * nb);
  for (auto& c : cells) {
    c.sols.resize(cfg.s_setups);
    c.status.assign(cfg.s_setups, "ok");
  }

  parallel_for(cfg.s_setups, rc.threads, [&](int s) {
    for (int ki = 0; ki < nk; ++ki) {
      SystemConfig ck = cfg;
      ck.K1 = k1s[ki];
      ChannelStatistics st;
      std::string st_err;
      try {
        st = compute_statistics(drops[s].geo, ck);  // statistics do depend on K1
      } catch (const std::exception& e) {
        st_err = e.what();
      }
      for (int bi = 0; bi < nb; ++bi) {
        Cell& cell = cells[ki * nb + bi];
        if (!st_err.empty()) {
          cell.status[s] = st_err;
          continue;
        }
        SystemConfig c = ck;
        c.P_TX = dbm_to_watt(budgets[bi]);
        try {
          auto rng = substream(cfg.seed, Stream::init, s);
          cell.sols[s] = maximize_ee(st, c, cfg.strategy, rng);
        } catch (const std::exception& e) {
          cell.status[s] = e.what();
        }
      }
    }
  });

  std::string csv =
      "k1,p_tx_dbm,strategy,setup,seed,status,ee_bps_hz_w,m_active,sum_p_w\n";
  std::string summary = "k1,p_tx_dbm,strategy,n_ok,mean_ee_bps_hz_w\n";
  for (int ki = 0; ki < nk; ++ki)
    for (int bi = 0; bi < nb; ++bi) {
      const Cell& cell = cells[ki * nb + bi];
      double see = 0;
      int ok = 0;
      for (int s = 0; s < cfg.s_setups; ++s) {
        bool good = cell.status[s] == "ok";
        csv += g17(k1s[ki]) + "," + g17(budgets[bi]) + "," + to_string(cfg.strategy) + "," +
               std::to_string(s) + "," + std::to_string(cfg.seed) + "," +
               sanitize(cell.status[s]) + ",";
        if (good) {
          const Solution& sol = cell.sols[s];
          csv += g17(sol.ee) + "," + std::to_string(sol.M) + "," + g17(sol.p.sum()) + "\n";
          see += sol.ee;
          ++ok;
        } else {
          csv += "nan,0,nan\n";
        }
      }
      summary += g17(k1s[ki]) + "," + g17(budgets[bi]) + "," + to_string(cfg.strategy) + "," +
                 std::to_string(ok) + "," + (ok ? g17(see / ok) : "nan") + "\n";
    }
  write_text(rc.outdir / "rician.csv", csv);
  write_text(rc.outdir / "rician_summary.csv", summary);
  write_manifest(rc, "rician", {"rician.csv", "rician_summary.csv"});
  return 0;
}

// ---------------------------------------------------------- convergence ----

// Phase-only traces at fixed M = M_max, p = P_TX/K: one sum-rate trajectory
// per (method, setup). Iteration 0 is the objective at the random init.
int run_convergence(const RunContext& rc) {
  const SystemConfig& cfg = rc.cfg;
  std::vector<Drop> drops = make_drops(cfg);

  struct Trace {
    std::vector<double> f;
    int iters = 0;
    std::string status = "ok";
  };
  std::vector<std::array<Trace, 3>> traces(cfg.s_setups);

  parallel_for(cfg.s_setups, rc.threads, [&](int s) {
    if (!drops[s].error.empty()) {
      for (auto& t : traces[s]) t.status = drops[s].error;
      return;
    }
    auto rng = substream(cfg.seed, Stream::init, s);
    std::uniform_real_distribution<double> theta(0.0, 2.0 * 3.14159265358979323846);
    Eigen::VectorXcd v0(cfg.N);
    for (int n = 0; n < cfg.N; ++n) v0[n] = std::polar(1.0, theta(rng));
    Eigen::VectorXd p = Eigen::VectorXd::Constant(cfg.K, cfg.P_TX / cfg.K);
    for (int mi = 0; mi < 3; ++mi) {
      try {
        if (kAllMethods[mi] == PhaseMethod::gradient) {
          GradientResult r = gradient_ascent_phases(p, cfg.M_max, v0, drops[s].st, cfg);
          traces[s][mi].f = r.sum_rate_trace;
          traces[s][mi].iters = r.iters;
        } else {
          PhaseOptResult r =
              optimize_phases(p, cfg.M_max, v0, drops[s].st, cfg, kAllMethods[mi]);
          traces[s][mi].f = r.sum_rate_trace;
          traces[s][mi].iters = r.outer_iters;
        }
      } catch (const std::exception& e) {
        traces[s][mi].status = e.what();
      }
    }
  });

  std::string csv = "method,setup,seed,iter,sum_rate_bps_hz,status\n";
  for (int mi = 0; mi < 3; ++mi)
    for (int s = 0; s < cfg.s_setups; ++s) {
      const Trace& t = traces[s][mi];
      if (t.status != "ok") {
        csv += std::string(to_string(kAllMethods[mi])) + "," + std::to_string(s) + "," +
               std::to_string(cfg.seed) + ",0,nan," + sanitize(t.status) + "\n";
        continue;
      }
      for (size_t it = 0; it < t.f.size(); ++it)
        csv += std::string(to_string(kAllMethods[mi])) + "," + std::to_string(s) + "," +
               std::to_string(cfg.seed) + "," + std::to_string(it) + "," + g17(t.f[it]) +
               ",ok\n";
    }

  // setup-mean trace with last value carried forward past each trace's end
  std::string summary = "method,iter,mean_sum_rate_bps_hz,n_setups\n";
  for (int mi = 0; mi < 3; ++mi) {
    size_t maxlen = 0;
    int nok = 0;
    for (int s = 0; s < cfg.s_setups; ++s)
      if (traces[s][mi].status == "ok" && !traces[s][mi].f.empty()) {
        maxlen = std::max(maxlen, traces[s][mi].f.size());
        ++nok;
      }
    for (size_t it = 0; it < maxlen; ++it) {
      double acc = 0;
      for (int s = 0; s < cfg.s_setups; ++s) {
        const Trace& t = traces[s][mi];
        if (t.status != "ok" || t.f.empty()) continue;
        acc += it < t.f.size() ? t.f[it] : t.f.back();
      }
      summary += std::string(to_string(kAllMethods[mi])) + "," + std::to_string(it) + "," +
                 (nok ? g17(acc / nok) : "nan") + "," + std::to_string(nok) + "\n";
    }
  }
  write_text(rc.outdir / "convergence.csv", csv);
  write_text(rc.outdir / "convergence_summary.csv", summary);
  write_manifest(rc, "convergence", {"convergence.csv", "convergence_summary.csv"});
  return 0;
}

// --------------------------------------------------------------- timing ----

// Wall-clock of one phase-optimization call per method on identical inputs.
// The measured columns are *not* reproducible bit-for-bit across runs; every
// other subcommand's CSV is.
int run_timing(const RunContext& rc) {
  const SystemConfig& cfg = rc.cfg;
  std::vector<Drop> drops = make_drops(cfg);

  struct Row {
    double seconds[3] = {0, 0, 0};
    int iters[3] = {0, 0, 0};
    std::string status = "ok";
  };
  std::vector<Row> rows(cfg.s_setups);

  // timing: run sequentially so measurements do not contend for cores
  for (int s = 0; s < cfg.s_setups; ++s) {
    if (!drops[s].error.empty()) {
      rows[s].status = drops[s].error;
      continue;
    }
    auto rng = substream(cfg.seed, Stream::init, s);
    std::uniform_real_distribution<double> theta(0.0, 2.0 * 3.14159265358979323846);
    Eigen::VectorXcd v0(cfg.N);
    for (int n = 0; n < cfg.N; ++n) v0[n] = std::polar(1.0, theta(rng));
    Eigen::VectorXd p = Eigen::VectorXd::Constant(cfg.K, cfg.P_TX / cfg.K);
    try {
      for (int mi = 0; mi < 3; ++mi) {
        auto t0 = std::chrono::steady_clock::now();
        if (kAllMethods[mi] == PhaseMethod::gradient) {
          GradientResult r = gradient_ascent_phases(p, cfg.M_max, v0, drops[s].st, cfg);
          rows[s].iters[mi] = r.iters;
        } else {
          PhaseOptResult r =
              optimize_phases(p, cfg.M_max, v0, drops[s].st, cfg, kAllMethods[mi]);
          rows[s].iters[mi] = r.outer_iters;
        }
        auto t1 = std::chrono::steady_clock::now();
        rows[s].seconds[mi] = std::chrono::duration<double>(t1 - t0).count();
      }
    } catch (const std::exception& e) {
      rows[s].status = e.what();
    }
  }

  std::string csv = "method,setup,seed,seconds,iters,status\n";
  for (int mi = 0; mi < 3; ++mi)
    for (int s = 0; s < cfg.s_setups; ++s)
      csv += std::string(to_string(kAllMethods[mi])) + "," + std::to_string(s) + "," +
             std::to_string(cfg.seed) + "," +
             (rows[s].status == "ok" ? g17(rows[s].seconds[mi]) : "nan") + "," +
             std::to_string(rows[s].iters[mi]) + "," + sanitize(rows[s].status) + "\n";

  std::string summary = "method,n_ok,median_seconds,mean_seconds,mean_iters\n";
  for (int mi = 0; mi < 3; ++mi) {
    std::vector<double> sec;
    double ssum = 0, isum = 0;
    for (int s = 0; s < cfg.s_setups; ++s)
      if (rows[s].status == "ok") {
        sec.push_back(rows[s].seconds[mi]);
        ssum += rows[s].seconds[mi];
        isum += rows[s].iters[mi];
      }
    std::string med = "nan", mean = "nan", mit = "nan";
    if (!sec.empty()) {
      std::sort(sec.begin(), sec.end());
      size_t n = sec.size();
      med = g17(n % 2 ? sec[n / 2] : 0.5 * (sec[n / 2 - 1] + sec[n / 2]));
      mean = g17(ssum / n);
      mit = g17(isum / n);
    }
    summary += std::string(to_string(kAllMethods[mi])) + "," + std::to_string(sec.size()) + "," +
               med + "," + mean + "," + mit + "\n";
  }
  write_text(rc.outdir / "timing.csv", csv);
  write_text(rc.outdir / "timing_summary.csv", summary);
  write_manifest(rc, "timing", {"timing.csv", "timing_summary.csv"});
  return 0;
}

// ---------------------------------------------------------- validate-lb ----

int run_validate_lb(const RunContext& rc) {
  const SystemConfig& cfg = rc.cfg;
  std::vector<Drop> drops = make_drops(cfg);

  struct Res {
    Solution sol;
    LbValidation lv;
    std::string status = "ok";
  };
  std::vector<Res> res(cfg.s_setups);

  parallel_for(cfg.s_setups, rc.threads, [&](int s) {
    if (!drops[s].error.empty()) {
      res[s].status = drops[s].error;
      return;
    }
    try {
      auto rng = substream(cfg.seed, Stream::init, s);
      res[s].sol = maximize_ee(drops[s].st, cfg, cfg.strategy, rng);
      res[s].lv = validate_lower_bound(drops[s].geo, res[s].sol, cfg, cfg.t_realizations);
    } catch (const std::exception& e) {
      res[s].status = e.what();
    }
  });

  std::string csv =
      "setup,seed,ue,status,mc_mean_bps_hz,mc_stderr,rate_lb_bps_hz,gap,pass,excluded,total\n";
  int pairs = 0, held = 0, positive = 0;
  for (int s = 0; s < cfg.s_setups; ++s) {
    if (res[s].status != "ok") {
      csv += std::to_string(s) + "," + std::to_string(cfg.seed) + ",0," +
             sanitize(res[s].status) + ",nan,nan,nan,nan,0,0,0\n";
      continue;
    }
    const LbValidation& lv = res[s].lv;
    for (int k = 0; k < cfg.K; ++k) {
      csv += std::to_string(s) + "," + std::to_string(cfg.seed) + "," + std::to_string(k) +
             ",ok," + g17(lv.mc_mean[k]) + "," + g17(lv.mc_stderr[k]) + "," +
             g17(lv.rate_lb[k]) + "," + g17(lv.gap[k]) + "," + std::to_string(int(lv.pass[k])) +
             "," + std::to_string(lv.excluded) + "," + std::to_string(lv.total) + "\n";
      ++pairs;
      held += lv.pass[k];
      positive += lv.gap[k] > 0.0;
    }
  }
  write_text(rc.outdir / "validate_lb.csv", csv);
  write_manifest(rc, "validate-lb", {"validate_lb.csv"});
  std::printf("validate-lb: %d/%d pairs hold (3-sigma), %d strictly positive gaps\n", held,
              pairs, positive);
  return held == pairs ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided massive MIMO energy-efficiency simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> strategy_override, method_override;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  app.add_option("--config", config_path, "config file (key = value)")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_override, "override config seed");
  app.add_option("--strategy", strategy_override,
                 "override strategy: p_only|p_v|p_M|p_v_M|random_all");
  app.add_option("--method", method_override, "override phase method: analytic|sfp|gradient");
  app.add_option("--threads", threads, "worker threads for setup parallelism");

  auto* sweep = app.add_subcommand("sweep", "EE / antennas / utilization vs power budget");
  auto* cc = app.add_subcommand("ccdf", "rate and EE CCDFs at the config budget");
  auto* rician = app.add_subcommand("rician", "EE vs budget for K1 in {0, 3.5, 35}");
  auto* conv = app.add_subcommand("convergence", "phase optimizer sum-rate traces per method");
  auto* timing = app.add_subcommand("timing", "phase optimizer wall-clock per method");
  auto* vlb = app.add_subcommand("validate-lb", "Monte Carlo check of the rate bound");
  // let `risee sweep --config ...` work, not just `risee --config ... sweep`
  for (auto* sub : {sweep, cc, rician, conv, timing, vlb}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  RunContext rc;
  try {
    rc.cfg = load_config(config_path);
    if (seed_override) {
      rc.cfg.seed = *seed_override;
      rc.overrides["seed"] = *seed_override;
    }
    if (strategy_override) {
      rc.cfg.strategy = parse_strategy(*strategy_override);
      rc.overrides["strategy"] = *strategy_override;
    }
    if (method_override) {
      rc.cfg.method = parse_method(*method_override);
      rc.overrides["method"] = *method_override;
    }
    rc.cfg.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  rc.threads = std::max(1, threads);
  rc.outdir = out_dir;

  try {
    fs::create_directories(rc.outdir);
    if (sweep->parsed()) return run_sweep(rc);
    if (cc->parsed()) return run_ccdf(rc);
    if (rician->parsed()) return run_rician(rc);
    if (conv->parsed()) return run_convergence(rc);
    if (timing->parsed()) return run_timing(rc);
    if (vlb->parsed()) return run_validate_lb(rc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
