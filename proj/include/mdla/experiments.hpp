#ifndef MDLA_EXPERIMENTS_HPP
#define MDLA_EXPERIMENTS_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdla/fit.hpp"
#include "mdla/front_path.hpp"
#include "mdla/regeneration.hpp"
#include "mdla/rng.hpp"
#include "mdla/sim1d.hpp"
#include "mdla/simhd.hpp"

namespace mdla {

struct ExperimentConfig {
  std::string mode = "run";  // run | sweep | validate | analyze
  std::vector<double> k_values;
  int dimension = 1;
  double horizon = 100.0;
  long replicas = 1;
  std::uint64_t master_seed = 0;
  double leakage_tol = 1e-6;
  std::string output_path = "out";
  bool record_particles = false;
  double fit_lo = 0.0, fit_hi = 0.0;  // both 0: second half of the horizon
  double regen_alpha = 0.1;
};

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.replicas < 1)
    throw std::invalid_argument("config: replicas must be >= 1");
  if (!(cfg.horizon > 0.0))
    throw std::invalid_argument("config: horizon must be > 0");
  for (double k : cfg.k_values)
    if (k < 0.0) throw std::invalid_argument("config: k must be >= 0");
  if (cfg.fit_lo != 0.0 || cfg.fit_hi != 0.0) {
    if (!(cfg.fit_lo < cfg.fit_hi) || cfg.fit_hi > cfg.horizon)
      throw std::invalid_argument("config: fit window must satisfy lo < hi <= horizon");
  }
}

// Per-(density index, replica) seed, a pure function of the master seed so
// a sweep reproduces the corresponding single runs bit for bit.
inline std::uint64_t replica_seed(std::uint64_t master_seed, long k_index,
                                  long replica) {
  std::uint64_t h = mix64(master_seed, 0xa24baed4963ee407ULL);
  h = mix64(h, std::uint64_t(k_index));
  return mix64(h, std::uint64_t(replica));
}

// ---- flat key=value configuration -------------------------------------

inline void apply_setting(ExperimentConfig& cfg, const std::string& key,
                          const std::string& value) {
  auto to_d = [&](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("config: bad number: " + s);
    return v;
  };
  auto to_b = [&](const std::string& s) {
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    throw std::invalid_argument("config: bad boolean: " + s);
  };
  if (key == "mode") {
    cfg.mode = value;
  } else if (key == "k") {
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.k_values.push_back(to_d(item));
  } else if (key == "dim") {
    cfg.dimension = int(to_d(value));
  } else if (key == "horizon") {
    cfg.horizon = to_d(value);
  } else if (key == "replicas") {
    cfg.replicas = long(to_d(value));
  } else if (key == "seed") {
    cfg.master_seed = std::stoull(value);
  } else if (key == "leakage-tol") {
    cfg.leakage_tol = to_d(value);
  } else if (key == "out") {
    cfg.output_path = value;
  } else if (key == "record-particles") {
    cfg.record_particles = to_b(value);
  } else if (key == "alpha") {
    cfg.regen_alpha = to_d(value);
  } else if (key == "fit-window") {
    const auto colon = value.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("config: fit-window wants lo:hi");
    cfg.fit_lo = to_d(value.substr(0, colon));
    cfg.fit_hi = to_d(value.substr(colon + 1));
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value, got: " + line);
    auto trim = [](std::string s) {
      const auto l = s.find_first_not_of(" \t");
      const auto r = s.find_last_not_of(" \t");
      return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
    };
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

// ---- output helpers ----------------------------------------------------

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<SeriesPoint> front_series(const FrontPath& path,
                                             int n_points = 256) {
  std::vector<SeriesPoint> s;
  s.reserve(std::size_t(n_points));
  for (int i = 1; i <= n_points; ++i) {
    const double t = path.horizon * double(i) / double(n_points);
    s.push_back({t, double(path.position_at(t))});
  }
  return s;
}

struct KSummary {
  double k = 0.0;
  long k_index = 0;
  FitResult speed_fit;
  FitResult exponent_fit;
  bool speed_valid = false;
  bool exponent_valid = false;
  std::vector<long> regen_counts;  // per replica, 1D recorded runs only
  std::vector<double> final_positions;
  double max_leakage = 0.0;
  long total_front_jumps = 0;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<KSummary> per_k;
  double wall_seconds = 0.0;
  std::vector<std::string> files_written;
};

// Runs every (density, replica) cell sequentially, writes trajectory (and,
// for d >= 2, diameter) files, and returns the reduced summary.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.k_values.empty()) cfg.k_values.push_back(1.0);
  validate_config(cfg);
  const auto t_start = std::chrono::steady_clock::now();

  ExperimentSummary sum;
  sum.config = cfg;
  const double w_lo = (cfg.fit_lo == 0.0 && cfg.fit_hi == 0.0)
                          ? cfg.horizon / 2.0
                          : cfg.fit_lo;
  const double w_hi =
      (cfg.fit_lo == 0.0 && cfg.fit_hi == 0.0) ? cfg.horizon : cfg.fit_hi;

  for (long ki = 0; ki < long(cfg.k_values.size()); ++ki) {
    KSummary ks;
    ks.k = cfg.k_values[std::size_t(ki)];
    ks.k_index = ki;
    std::vector<FitResult> speed_fits, exp_fits;

    const std::string traj_path =
        cfg.output_path + "_k" + std::to_string(ki) + "_trajectory.tsv";
    std::ofstream traj(traj_path);
    if (!traj) throw std::runtime_error("cannot write " + traj_path);
    sum.files_written.push_back(traj_path);
    std::ofstream diam;
    if (cfg.dimension >= 2) {
      const std::string diam_path =
          cfg.output_path + "_k" + std::to_string(ki) + "_diameter.tsv";
      diam.open(diam_path);
      if (!diam) throw std::runtime_error("cannot write " + diam_path);
      sum.files_written.push_back(diam_path);
    }

    for (long r = 0; r < cfg.replicas; ++r) {
      SimConfig sc;
      sc.k_density = ks.k;
      sc.horizon = cfg.horizon;
      sc.master_seed = replica_seed(cfg.master_seed, ki, r);
      sc.leakage_tol = cfg.leakage_tol;
      sc.record_particles = cfg.record_particles;
      sc.dimension = cfg.dimension;

      FrontPath front;
      if (cfg.dimension == 1) {
        RunRecord run = simulate_1d(sc);
        front = run.front;
        ks.max_leakage = std::max(ks.max_leakage, run.leakage_bound);
        if (cfg.record_particles)
          ks.regen_counts.push_back(
              long(detect_regenerations(run, cfg.regen_alpha).size()));
      } else {
        HDRunRecord run = simulate_d(sc);
        front = run.front;
        ks.max_leakage = std::max(ks.max_leakage, run.leakage_bound);
        for (const auto& dp : run.diameter_series) {
          diam << r << '\t' << fmt17(dp.time) << '\t' << dp.diameter << '\t'
               << dp.x << '\n';
        }
      }
      for (std::size_t e = 0; e < front.jump_times.size(); ++e) {
        traj << r << '\t' << e << '\t' << fmt17(front.jump_times[e]) << '\t'
             << front.positions[e] << '\n';
      }
      ks.total_front_jumps += long(front.jump_times.size());
      ks.final_positions.push_back(double(front.final_position()));

      const auto series = front_series(front);
      // Stalled fronts make either fit degenerate; skip those replicas
      // rather than failing the whole sweep.
      try {
        speed_fits.push_back(fit_speed(series, {w_lo, w_hi}));
      } catch (const std::exception&) {
      }
      try {
        exp_fits.push_back(fit_exponent(series, {w_lo, w_hi}));
      } catch (const std::exception&) {
      }
    }
    if (!speed_fits.empty()) {
      ks.speed_fit = pool_fits(speed_fits);
      ks.speed_valid = true;
    }
    if (!exp_fits.empty()) {
      ks.exponent_fit = pool_fits(exp_fits);
      ks.exponent_valid = true;
    }
    sum.per_k.push_back(std::move(ks));
  }

  sum.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return sum;
}

// Summary file: deterministic body; wall clock on a trailing comment line so
// repeated identical runs differ only there.
inline std::string write_summary(const ExperimentSummary& sum) {
  const auto& cfg = sum.config;
  const std::string path = cfg.output_path + "_summary.txt";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "mode=" << cfg.mode << "\n";
  out << "dim=" << cfg.dimension << "\n";
  out << "horizon=" << fmt17(cfg.horizon) << "\n";
  out << "replicas=" << cfg.replicas << "\n";
  out << "seed=" << cfg.master_seed << "\n";
  out << "leakage-tol=" << fmt17(cfg.leakage_tol) << "\n";
  out << "record-particles=" << (cfg.record_particles ? 1 : 0) << "\n";
  for (const auto& ks : sum.per_k) {
    out << "k[" << ks.k_index << "]=" << fmt17(ks.k) << "\n";
    out << "k[" << ks.k_index << "].front_jumps=" << ks.total_front_jumps << "\n";
    out << "k[" << ks.k_index << "].max_leakage=" << fmt17(ks.max_leakage) << "\n";
    if (ks.speed_valid) {
      out << "k[" << ks.k_index << "].speed=" << fmt17(ks.speed_fit.speed)
          << " stderr=" << fmt17(ks.speed_fit.speed_stderr) << " window=["
          << fmt17(ks.speed_fit.window_lo) << ","
          << fmt17(ks.speed_fit.window_hi)
          << "] r2=" << fmt17(ks.speed_fit.r_squared) << "\n";
    }
    if (ks.exponent_valid) {
      out << "k[" << ks.k_index
          << "].exponent=" << fmt17(ks.exponent_fit.exponent)
          << " stderr=" << fmt17(ks.exponent_fit.exponent_stderr)
          << " excluded=" << ks.exponent_fit.excluded_nonpositive << "\n";
    }
    if (!ks.regen_counts.empty()) {
      out << "k[" << ks.k_index << "].regenerations=";
      for (std::size_t i = 0; i < ks.regen_counts.size(); ++i)
        out << (i ? "," : "") << ks.regen_counts[i];
      out << "\n";
    }
  }
  out << "# wall_clock_seconds " << sum.wall_seconds << "\n";
  return path;
}

// Re-fit a written trajectory file: rows replica, event_index, time, front.
inline std::map<long, std::vector<SeriesPoint>> load_trajectory(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("analyze: cannot open " + path);
  std::map<long, std::vector<SeriesPoint>> per_replica;
  long rep, idx;
  double t;
  long pos;
  while (in >> rep >> idx >> t >> pos)
    per_replica[rep].push_back({t, double(pos)});
  return per_replica;
}

struct AnalyzeResult {
  FitResult speed;
  FitResult exponent;
  bool exponent_valid = false;
  long replicas = 0;
};

inline AnalyzeResult analyze_trajectory(const std::string& path,
                                        std::pair<double, double> window) {
  const auto per_replica = load_trajectory(path);
  if (per_replica.empty())
    throw std::runtime_error("analyze: no rows in " + path);
  std::vector<FitResult> speed_fits, exp_fits;
  for (const auto& [rep, series] : per_replica) {
    (void)rep;
    speed_fits.push_back(fit_speed(series, window));
    try {
      exp_fits.push_back(fit_exponent(series, window));
    } catch (const std::exception&) {
    }
  }
  AnalyzeResult out;
  out.replicas = long(per_replica.size());
  out.speed = pool_fits(speed_fits);
  if (!exp_fits.empty()) {
    out.exponent = pool_fits(exp_fits);
    out.exponent_valid = true;
  }
  return out;
}

}  // namespace mdla

#endif  // MDLA_EXPERIMENTS_HPP
