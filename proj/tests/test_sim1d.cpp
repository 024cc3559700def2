#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mdla/sim1d.hpp"
#include "mdla/walk_law.hpp"

using namespace mdla;

TEST_CASE("empty medium and zero horizon edge cases") {
  SimConfig cfg;
  cfg.k_density = 0.0;
  cfg.horizon = 100.0;
  cfg.master_seed = 1;
  const auto run = simulate_1d(cfg);
  REQUIRE(run.front.jump_times.empty());
  REQUIRE(run.front.final_position() == 0);
  REQUIRE(run.frozen_count == 0);
  REQUIRE(run.materialized_particles == 0);

  SimConfig z;
  z.k_density = 2.0;
  z.horizon = 0.0;
  z.master_seed = 1;
  const auto rz = simulate_1d(z);
  REQUIRE(rz.front.jump_times.empty());
  REQUIRE(rz.event_count == 0);
}

TEST_CASE("front is a unit staircase and the run is deterministic") {
  SimConfig cfg;
  cfg.k_density = 1.0;
  cfg.horizon = 200.0;
  cfg.master_seed = 77;
  const auto a = simulate_1d(cfg);
  const auto b = simulate_1d(cfg);
  REQUIRE(a.front.jump_times == b.front.jump_times);
  REQUIRE(a.front.positions == b.front.positions);
  REQUIRE(a.event_count == b.event_count);
  for (std::size_t i = 0; i < a.front.positions.size(); ++i) {
    REQUIRE(a.front.positions[i] == long(i) + 1);
    if (i > 0) REQUIRE(a.front.jump_times[i] > a.front.jump_times[i - 1]);
  }
  REQUIRE(a.frozen_count >= a.front.final_position());
  REQUIRE(a.leakage_bound <= cfg.leakage_tol);
}

TEST_CASE("different seeds decorrelate") {
  SimConfig cfg;
  cfg.k_density = 1.0;
  cfg.horizon = 100.0;
  cfg.master_seed = 5;
  const auto a = simulate_1d(cfg);
  cfg.master_seed = 6;
  const auto b = simulate_1d(cfg);
  REQUIRE(a.front.jump_times != b.front.jump_times);
}

TEST_CASE("free-walk displacement follows the jump kernel") {
  // With adhesion off every particle performs an independent rate-1 walk,
  // so final - initial position over [0, t] follows the exact kernel law.
  const double t = 2.0;
  const WalkLaw law = walk_pmf(t, 1e-12);
  std::vector<long> disp;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SimConfig cfg;
    cfg.k_density = 3.0;
    cfg.horizon = t;
    cfg.master_seed = 1000 + seed;
    cfg.adhesion_disabled = true;
    cfg.record_particles = true;
    const auto run = simulate_1d(cfg);
    REQUIRE(run.front.final_position() == 0);
    REQUIRE(run.frozen_count == 0);
    for (const auto& pr : run.particles) {
      REQUIRE(pr.status == ParticleStatus::Active);
      disp.push_back(pr.final_pos - pr.init_pos);
    }
  }
  const double n = double(disp.size());
  REQUIRE(n >= 2000.0);
  double mean = 0.0, var = 0.0;
  for (long dly : disp) mean += double(dly);
  mean /= n;
  for (long dly : disp) var += (double(dly) - mean) * (double(dly) - mean);
  var /= n;
  REQUIRE(std::fabs(mean) < 5.0 * std::sqrt(t / n));
  REQUIRE(std::fabs(var - t) < 6.0 * t * std::sqrt(2.0 / n) + 0.1);
  for (long k = -2; k <= 2; ++k) {
    long c = 0;
    for (long dlv : disp) c += (dlv == k);
    const double p = law(k);
    const double se = std::sqrt(p * (1.0 - p) / n);
    REQUIRE(std::fabs(double(c) / n - p) < 5.0 * se);
  }
}

TEST_CASE("recorded histories are internally consistent") {
  SimConfig cfg;
  cfg.k_density = 2.0;
  cfg.horizon = 50.0;
  cfg.master_seed = 13;
  cfg.record_particles = true;
  const auto run = simulate_1d(cfg);
  REQUIRE_FALSE(run.particles.empty());
  const long xt = run.front.final_position();
  for (const auto& pr : run.particles) {
    long pos = pr.init_pos;
    double prev_t1 = 0.0;
    for (const auto& seg : pr.history) {
      REQUIRE((seg.kind == 0 || seg.kind == 1));
      REQUIRE(seg.t0 >= prev_t1);
      REQUIRE(seg.t1 >= seg.t0);
      REQUIRE(seg.t1 <= cfg.horizon + 1e-9);
      REQUIRE(seg.pos0 == pos);
      if (seg.kind == 0) {
        REQUIRE(seg.t0 == seg.t1);
        REQUIRE(std::labs(seg.disp) <= 1);  // 0 only for the freezing step
        if (seg.disp == 0) REQUIRE(pr.status == ParticleStatus::Frozen);
      } else {
        REQUIRE(std::labs(seg.disp) <= seg.n);
        REQUIRE((seg.n - seg.disp) % 2 == 0);
      }
      REQUIRE(seg.min_bound() >= pr.min_bound);
      pos = seg.pos0 + seg.disp;
      prev_t1 = seg.t1;
    }
    REQUIRE(pos == pr.final_pos);
    if (pr.status == ParticleStatus::Active) {
      REQUIRE(pr.final_pos > xt);  // mobile particles sit above the front
    } else {
      REQUIRE(pr.freeze_time >= 0.0);
      REQUIRE(pr.final_pos <= xt);
    }
  }
}

TEST_CASE("eager stream mode agrees with the lazy default in law") {
  // Same model, different sampling plumbing: compare mean front positions
  // across seed ensembles.
  const long reps = 16;
  const double t = 100.0;
  double lazy_sum = 0.0, eager_sum = 0.0, lazy_sq = 0.0, eager_sq = 0.0;
  for (long r = 0; r < reps; ++r) {
    SimConfig cfg;
    cfg.k_density = 1.0;
    cfg.horizon = t;
    cfg.master_seed = 300 + std::uint64_t(r);
    const double a = double(simulate_1d(cfg).front.final_position());
    cfg.lazy = false;
    const double b = double(simulate_1d(cfg).front.final_position());
    lazy_sum += a;
    lazy_sq += a * a;
    eager_sum += b;
    eager_sq += b * b;
  }
  const double ml = lazy_sum / double(reps), me = eager_sum / double(reps);
  const double vl = lazy_sq / double(reps) - ml * ml;
  const double ve = eager_sq / double(reps) - me * me;
  const double se = std::sqrt((vl + ve) / double(reps) + 1e-12);
  REQUIRE(std::fabs(ml - me) < 5.0 * se + 1e-9);
}

TEST_CASE("window budget is enforced") {
  SimConfig cfg;
  cfg.k_density = 1.0;
  cfg.horizon = 10000.0;
  cfg.leakage_tol = 1e-12;
  cfg.max_window_sites = 100;
  REQUIRE_THROWS_AS(simulate_1d(cfg), std::runtime_error);
}
