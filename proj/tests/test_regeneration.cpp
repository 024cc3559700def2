#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "mdla/regeneration.hpp"
#include "mdla/sim1d.hpp"

using namespace mdla;

TEST_CASE("empty medium regenerates until the barrier lifts") {
  SimConfig cfg;
  cfg.k_density = 0.0;
  cfg.horizon = 60.0;
  cfg.master_seed = 3;
  cfg.record_particles = true;
  auto run = simulate_1d(cfg);
  const auto regens = detect_regenerations(run, 0.1);
  // X stays at 0, so t regenerates iff the barrier is still flat at offset
  // t, i.e. t <= alpha^{-3/2} ~ 31.6.
  std::vector<long> expect;
  for (long t = 0; t <= 31; ++t) expect.push_back(t);
  REQUIRE(regens == expect);
}

TEST_CASE("recorded run: time zero regenerates and detection is stable") {
  SimConfig cfg;
  cfg.k_density = 3.0;
  cfg.horizon = 50.0;
  cfg.master_seed = 41;
  cfg.record_particles = true;
  auto run = simulate_1d(cfg);
  auto copy = run;
  const auto a = detect_regenerations(run, 0.1);
  const auto b = detect_regenerations(copy, 0.1);
  REQUIRE(a == b);
  REQUIRE_FALSE(a.empty());
  REQUIRE(a.front() == 0);
  REQUIRE(std::is_sorted(a.begin(), a.end()));
  REQUIRE(a.back() <= 50);
  // Re-running on the already-refined record must agree as well.
  const auto again = detect_regenerations(run, 0.1);
  REQUIRE(again == a);
}

TEST_CASE("a particle touching the receding barrier vetoes the time") {
  // Front jumps to 1 at t = 0.5; one particle starts at 2 and steps down to
  // 1 at t = 0.6.  At t = 1 the barrier is still flat, so the condition
  // needs the particle strictly above X_1 = 1; it sits exactly on it.
  RunRecord run;
  run.config.record_particles = true;
  run.config.horizon = 2.0;
  run.front.horizon = 2.0;
  run.front.jump_times = {0.5};
  run.front.positions = {1};
  run.refine_seed = 9;
  ParticleRecord b;
  b.id = 1;
  b.init_pos = 2;
  b.final_pos = 1;
  b.min_bound = 1;
  b.history.push_back({0.6, 0.6, 2, 1, -1, 0});
  run.particles.push_back(b);
  const auto regens = detect_regenerations(run, 1.0);
  REQUIRE(regens == std::vector<long>{0});
}

TEST_CASE("runs without particle detail are rejected") {
  SimConfig cfg;
  cfg.k_density = 1.0;
  cfg.horizon = 10.0;
  cfg.master_seed = 2;
  auto run = simulate_1d(cfg);
  REQUIRE_THROWS_AS(detect_regenerations(run, 0.1), std::logic_error);
}
