// Command-line driver: run / sweep / validate / analyze.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdla/acceptance.hpp"
#include "mdla/experiments.hpp"

namespace {

struct Flags {
  std::string config_file;
  std::vector<double> k;
  int dim = 0;
  double horizon = 0.0;
  long replicas = 0;
  std::string seed;
  double leakage_tol = 0.0;
  std::string out;
  bool record_particles = false;
  std::string fit_window;
  double alpha = 0.0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "flat key=value config file");
  cmd->add_option("--k", f.k, "particle density (repeatable)");
  cmd->add_option("--dim", f.dim, "lattice dimension");
  cmd->add_option("--horizon", f.horizon, "simulation horizon");
  cmd->add_option("--replicas", f.replicas, "independent replicas");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--leakage-tol", f.leakage_tol, "window truncation budget");
  cmd->add_option("--out", f.out, "output path prefix");
  cmd->add_flag("--record-particles", f.record_particles,
                "record particle trajectories");
  cmd->add_option("--fit-window", f.fit_window, "fit window lo:hi");
  cmd->add_option("--alpha", f.alpha, "regeneration barrier slope");
}

// Config file first, explicit flags override.
mdla::ExperimentConfig build_config(const CLI::App* cmd, const Flags& f,
                                    const std::string& mode) {
  mdla::ExperimentConfig cfg;
  cfg.mode = mode;
  if (!f.config_file.empty()) mdla::load_config_file(cfg, f.config_file);
  if (cmd->count("--k")) {
    cfg.k_values.clear();
    for (double k : f.k) cfg.k_values.push_back(k);
  }
  if (cmd->count("--dim")) cfg.dimension = f.dim;
  if (cmd->count("--horizon")) cfg.horizon = f.horizon;
  if (cmd->count("--replicas")) cfg.replicas = f.replicas;
  if (cmd->count("--seed")) mdla::apply_setting(cfg, "seed", f.seed);
  if (cmd->count("--leakage-tol")) cfg.leakage_tol = f.leakage_tol;
  if (cmd->count("--out")) cfg.output_path = f.out;
  if (cmd->count("--record-particles")) cfg.record_particles = true;
  if (cmd->count("--fit-window"))
    mdla::apply_setting(cfg, "fit-window", f.fit_window);
  if (cmd->count("--alpha")) cfg.regen_alpha = f.alpha;
  cfg.mode = mode;
  return cfg;
}

int do_run(const mdla::ExperimentConfig& cfg) {
  mdla::ExperimentSummary sum = mdla::run_experiment(cfg);
  const std::string summary_path = mdla::write_summary(sum);
  for (const auto& ks : sum.per_k) {
    std::printf("k=%g", ks.k);
    if (ks.speed_valid)
      std::printf(" speed=%.6g+-%.6g", ks.speed_fit.speed,
                  ks.speed_fit.speed_stderr);
    if (ks.exponent_valid)
      std::printf(" exponent=%.6g+-%.6g", ks.exponent_fit.exponent,
                  ks.exponent_fit.exponent_stderr);
    std::printf(" front_jumps=%ld leakage<=%.3g\n", ks.total_front_jumps,
                ks.max_leakage);
  }
  std::printf("summary: %s (%.1fs)\n", summary_path.c_str(), sum.wall_seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-particle aggregation simulator and analytics"};
  app.require_subcommand(1);

  Flags run_f, sweep_f, analyze_f;
  CLI::App* run_cmd = app.add_subcommand("run", "single-density simulation");
  add_common(run_cmd, run_f);
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "simulate several densities");
  add_common(sweep_cmd, sweep_f);
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "run the full acceptance suite");
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "re-fit a written trajectory file");
  std::string analyze_path;
  analyze_cmd->add_option("trajectory", analyze_path, "trajectory .tsv file")
      ->required();
  add_common(analyze_cmd, analyze_f);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      auto cfg = build_config(run_cmd, run_f, "run");
      if (cfg.k_values.size() > 1) {
        std::fprintf(stderr, "run: one density only; use sweep for several\n");
        return 2;
      }
      return do_run(cfg);
    }
    if (sweep_cmd->parsed()) {
      return do_run(build_config(sweep_cmd, sweep_f, "sweep"));
    }
    if (validate_cmd->parsed()) {
      const auto results = mdla::acceptance::run_all(std::cout);
      for (const auto& r : results)
        if (!r.passed) return 1;
      return 0;
    }
    if (analyze_cmd->parsed()) {
      auto cfg = build_config(analyze_cmd, analyze_f, "analyze");
      std::pair<double, double> window{cfg.fit_lo, cfg.fit_hi};
      if (window.first == 0.0 && window.second == 0.0)
        window = {cfg.horizon / 2.0, cfg.horizon};
      const auto res = mdla::analyze_trajectory(analyze_path, window);
      std::printf("replicas=%ld speed=%.6g+-%.6g", res.replicas,
                  res.speed.speed, res.speed.speed_stderr);
      if (res.exponent_valid)
        std::printf(" exponent=%.6g+-%.6g", res.exponent.exponent,
                    res.exponent.exponent_stderr);
      std::printf("\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
