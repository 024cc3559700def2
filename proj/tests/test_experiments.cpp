#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mdla/experiments.hpp"

using namespace mdla;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drop the trailing wall-clock comment so reruns compare byte for byte.
std::string strip_comments(const std::string& s) {
  std::stringstream in(s), out;
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out << line << '\n';
  return out.str();
}

std::string tmp_path(const char* stem) {
  return std::string("/tmp/mdla_test_") + stem;
}

}  // namespace

TEST_CASE("settings parser covers every key") {
  ExperimentConfig cfg;
  apply_setting(cfg, "mode", "sweep");
  apply_setting(cfg, "k", "0.5,2,3");
  apply_setting(cfg, "dim", "2");
  apply_setting(cfg, "horizon", "250");
  apply_setting(cfg, "replicas", "4");
  apply_setting(cfg, "seed", "987");
  apply_setting(cfg, "leakage-tol", "1e-8");
  apply_setting(cfg, "out", "/tmp/x");
  apply_setting(cfg, "record-particles", "yes");
  apply_setting(cfg, "alpha", "0.2");
  apply_setting(cfg, "fit-window", "100:200");
  REQUIRE(cfg.mode == "sweep");
  REQUIRE(cfg.k_values == std::vector<double>{0.5, 2.0, 3.0});
  REQUIRE(cfg.dimension == 2);
  REQUIRE(cfg.horizon == 250.0);
  REQUIRE(cfg.replicas == 4);
  REQUIRE(cfg.master_seed == 987);
  REQUIRE(cfg.leakage_tol == 1e-8);
  REQUIRE(cfg.output_path == "/tmp/x");
  REQUIRE(cfg.record_particles);
  REQUIRE(cfg.regen_alpha == 0.2);
  REQUIRE(cfg.fit_lo == 100.0);
  REQUIRE(cfg.fit_hi == 200.0);

  REQUIRE_THROWS_AS(apply_setting(cfg, "bogus", "1"), std::invalid_argument);
  REQUIRE_THROWS_AS(apply_setting(cfg, "record-particles", "maybe"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(apply_setting(cfg, "horizon", "12x"), std::invalid_argument);
  REQUIRE_THROWS_AS(apply_setting(cfg, "fit-window", "100"),
                    std::invalid_argument);
}

TEST_CASE("config files strip comments and whitespace") {
  const std::string path = tmp_path("cfg");
  {
    std::ofstream out(path);
    out << "# an experiment\n";
    out << "  k = 1.5  # density\n";
    out << "horizon=40\n";
    out << "\n";
    out << "seed = 11\n";
  }
  ExperimentConfig cfg;
  load_config_file(cfg, path);
  REQUIRE(cfg.k_values == std::vector<double>{1.5});
  REQUIRE(cfg.horizon == 40.0);
  REQUIRE(cfg.master_seed == 11);
  REQUIRE_THROWS_AS(load_config_file(cfg, "/nonexistent/zz"),
                    std::runtime_error);
  {
    std::ofstream out(path);
    out << "no equals sign\n";
  }
  REQUIRE_THROWS_AS(load_config_file(cfg, path), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.k_values = {1.0};
  validate_config(cfg);
  cfg.replicas = 0;
  REQUIRE_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.replicas = 1;
  cfg.k_values = {-1.0};
  REQUIRE_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.k_values = {1.0};
  cfg.fit_lo = 50.0;
  cfg.fit_hi = 40.0;
  REQUIRE_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.fit_hi = 1e9;
  REQUIRE_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("replica seeds are pure and collision free over a sweep") {
  REQUIRE(replica_seed(1, 2, 3) == replica_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (long ki = 0; ki < 8; ++ki)
    for (long r = 0; r < 64; ++r) seen.insert(replica_seed(42, ki, r));
  REQUIRE(seen.size() == 8 * 64);
  REQUIRE(replica_seed(1, 0, 0) != replica_seed(2, 0, 0));
}

TEST_CASE("experiment output is deterministic modulo the wall clock line") {
  ExperimentConfig cfg;
  cfg.k_values = {2.0};
  cfg.horizon = 120.0;
  cfg.replicas = 2;
  cfg.master_seed = 77;
  cfg.output_path = tmp_path("runA");
  const auto s1 = run_experiment(cfg);
  const std::string p1 = write_summary(s1);
  cfg.output_path = tmp_path("runB");
  const auto s2 = run_experiment(cfg);
  const std::string p2 = write_summary(s2);
  REQUIRE(strip_comments(slurp(p1)) == strip_comments(slurp(p2)));
  REQUIRE(slurp(s1.files_written.at(0)) == slurp(s2.files_written.at(0)));
  for (const auto& f : s1.files_written) std::remove(f.c_str());
  for (const auto& f : s2.files_written) std::remove(f.c_str());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("sweep cells only depend on the density index") {
  // A density shared between two sweeps at the same index must reproduce
  // the same trajectory bit for bit.
  ExperimentConfig a;
  a.k_values = {1.0, 2.0};
  a.horizon = 80.0;
  a.replicas = 2;
  a.master_seed = 5;
  a.output_path = tmp_path("swA");
  const auto sa = run_experiment(a);

  ExperimentConfig b = a;
  b.k_values = {5.0, 2.0};
  b.output_path = tmp_path("swB");
  const auto sb = run_experiment(b);

  REQUIRE(slurp(tmp_path("swA_k1_trajectory.tsv")) ==
          slurp(tmp_path("swB_k1_trajectory.tsv")));
  REQUIRE(slurp(tmp_path("swA_k0_trajectory.tsv")) !=
          slurp(tmp_path("swB_k0_trajectory.tsv")));
  for (const auto& f : sa.files_written) std::remove(f.c_str());
  for (const auto& f : sb.files_written) std::remove(f.c_str());
}

TEST_CASE("analysis of a written trajectory matches the in-run fit") {
  ExperimentConfig cfg;
  cfg.k_values = {3.0};
  cfg.horizon = 150.0;
  cfg.replicas = 3;
  cfg.master_seed = 19;
  cfg.output_path = tmp_path("an");
  const auto sum = run_experiment(cfg);
  REQUIRE(sum.per_k.size() == 1);
  const auto& ks = sum.per_k.front();
  REQUIRE(ks.final_positions.size() == 3);
  REQUIRE(ks.max_leakage <= cfg.leakage_tol);

  const auto res = analyze_trajectory(tmp_path("an_k0_trajectory.tsv"),
                                      {cfg.horizon / 2.0, cfg.horizon});
  REQUIRE(res.replicas == 3);
  // The in-run fit samples the path on a uniform grid; the re-fit uses the
  // raw jumps, so agreement is approximate but close for a dense staircase.
  REQUIRE(res.speed.speed ==
          Catch::Approx(ks.speed_fit.speed).epsilon(0.15));
  REQUIRE_THROWS_AS(analyze_trajectory("/nonexistent/zz", {0.0, 1.0}),
                    std::runtime_error);
  for (const auto& f : sum.files_written) std::remove(f.c_str());
  std::remove((tmp_path("an") + "_summary.txt").c_str());
}

TEST_CASE("recorded 1D experiments report regeneration counts") {
  ExperimentConfig cfg;
  cfg.k_values = {2.0};
  cfg.horizon = 40.0;
  cfg.replicas = 2;
  cfg.master_seed = 23;
  cfg.record_particles = true;
  cfg.output_path = tmp_path("rg");
  const auto sum = run_experiment(cfg);
  REQUIRE(sum.per_k.front().regen_counts.size() == 2);
  for (long c : sum.per_k.front().regen_counts) REQUIRE(c >= 1);
  const std::string sp = write_summary(sum);
  REQUIRE(slurp(sp).find(".regenerations=") != std::string::npos);
  for (const auto& f : sum.files_written) std::remove(f.c_str());
  std::remove(sp.c_str());
}

TEST_CASE("two dimensional experiments write the diameter series") {
  ExperimentConfig cfg;
  cfg.k_values = {2.0};
  cfg.dimension = 2;
  cfg.horizon = 25.0;
  cfg.replicas = 1;
  cfg.master_seed = 31;
  cfg.output_path = tmp_path("hd");
  const auto sum = run_experiment(cfg);
  REQUIRE(sum.files_written.size() == 2);
  const std::string diam = slurp(tmp_path("hd_k0_diameter.tsv"));
  REQUIRE_FALSE(diam.empty());
  long rep, d, x;
  double t;
  std::stringstream ss(diam);
  long rows = 0, prev_d = -1;
  while (ss >> rep >> t >> d >> x) {
    REQUIRE(rep == 0);
    REQUIRE(d >= prev_d);
    prev_d = d;
    ++rows;
  }
  REQUIRE(rows > 0);
  for (const auto& f : sum.files_written) std::remove(f.c_str());
}
