#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mdla/poisson_field.hpp"

using namespace mdla;

TEST_CASE("site draws are deterministic and order independent") {
  FieldConfig cfg;
  cfg.k_density = 2.0;
  cfg.master_seed = 99;
  cfg.dimension = 2;
  const auto a = site_count(cfg, {5, -3});
  // Querying other sites in between must not perturb the draw.
  (void)site_count(cfg, {0, 0});
  (void)site_count(cfg, {-17, 4});
  const auto b = site_count(cfg, {5, -3});
  REQUIRE(a.count == b.count);
  REQUIRE(a.particle_ids == b.particle_ids);
  REQUIRE(site_count_only(cfg, a.site.data(), 2) == a.count);
}

TEST_CASE("empirical density matches the configured mean") {
  FieldConfig cfg;
  cfg.k_density = 1.5;
  cfg.master_seed = 7;
  cfg.dimension = 1;
  const long n = 20000;
  long total = 0;
  std::vector<long> hist(12, 0);
  for (long x = 0; x < n; ++x) {
    const long c = site_count_only(cfg, &x, 1);
    total += c;
    if (c < long(hist.size())) ++hist[std::size_t(c)];
  }
  const double mean = double(total) / double(n);
  REQUIRE(std::fabs(mean - 1.5) < 5.0 * std::sqrt(1.5 / double(n)));
  // Spot check the pmf bins at 5 sigma each.
  for (long k = 0; k <= 6; ++k) {
    const double p = std::exp(-1.5 + double(k) * std::log(1.5) -
                              std::lgamma(double(k) + 1.0));
    const double se = std::sqrt(p * (1.0 - p) / double(n));
    REQUIRE(std::fabs(double(hist[std::size_t(k)]) / double(n) - p) <
            5.0 * se + 1e-9);
  }
}

TEST_CASE("thinned fields are nested across densities") {
  FieldConfig lo, hi;
  lo.master_seed = hi.master_seed = 31;
  lo.dimension = hi.dimension = 2;
  lo.thinning_reference = hi.thinning_reference = 4.0;
  lo.k_density = 1.0;
  hi.k_density = 3.0;
  long lo_total = 0, hi_total = 0;
  for (long x = -40; x < 40; ++x) {
    for (long y = -40; y < 40; ++y) {
      const auto a = site_count(lo, {x, y});
      const auto b = site_count(hi, {x, y});
      lo_total += a.count;
      hi_total += b.count;
      const std::set<std::uint64_t> big(b.particle_ids.begin(),
                                        b.particle_ids.end());
      for (auto id : a.particle_ids) REQUIRE(big.count(id) == 1);
    }
  }
  REQUIRE(lo_total < hi_total);
  // k == reference keeps everything: same law as the unthinned field's base.
  FieldConfig full = hi;
  full.k_density = 4.0;
  const auto f = site_count(full, {3, 3});
  REQUIRE(f.count >= site_count(hi, {3, 3}).count);
}

TEST_CASE("particle ids are distinct within and across sites") {
  FieldConfig cfg;
  cfg.k_density = 3.0;
  cfg.master_seed = 55;
  cfg.dimension = 1;
  std::set<std::uint64_t> seen;
  long total = 0;
  for (long x = 0; x < 2000; ++x) {
    const auto occ = site_count(cfg, {x});
    total += occ.count;
    for (auto id : occ.particle_ids) seen.insert(id);
  }
  REQUIRE(long(seen.size()) == total);
}

TEST_CASE("window materialization is row major with the last axis fastest") {
  FieldConfig cfg;
  cfg.k_density = 1.0;
  cfg.master_seed = 12;
  cfg.dimension = 2;
  const auto win = materialize_window(cfg, {0, 0}, {1, 2});
  REQUIRE(win.size() == 6);
  const std::vector<std::vector<long>> expect = {
      {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}};
  for (std::size_t i = 0; i < win.size(); ++i) {
    REQUIRE(win[i].site == expect[i]);
    REQUIRE(win[i].count == site_count(cfg, win[i].site).count);
  }
  REQUIRE(materialize_window(cfg, {0, 0}, {-1, 5}).empty());
}

TEST_CASE("argument validation") {
  FieldConfig cfg;
  cfg.dimension = 2;
  REQUIRE_THROWS_AS(site_count(cfg, {1}), std::invalid_argument);
  cfg.k_density = -1.0;
  REQUIRE_THROWS_AS(site_count(cfg, {1, 2}), std::invalid_argument);
  cfg.k_density = 5.0;
  cfg.thinning_reference = 4.0;
  REQUIRE_THROWS_AS(site_count(cfg, {1, 2}), std::invalid_argument);
  cfg.thinning_reference = 0.0;
  REQUIRE_THROWS_AS(materialize_window(cfg, {0}, {1, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(materialize_window(cfg, {0, 0}, {100000, 100000}, 1000),
                    std::runtime_error);
}
