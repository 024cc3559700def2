#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mdla/fit.hpp"

using namespace mdla;

namespace {

std::vector<SeriesPoint> power_series(double amp, double expo, long n) {
  std::vector<SeriesPoint> s;
  for (long i = 1; i <= n; ++i) {
    const double t = double(i);
    s.push_back({t, amp * std::pow(t, expo)});
  }
  return s;
}

}  // namespace

TEST_CASE("exponent fit recovers a pure power law exactly") {
  const auto s = power_series(3.0, 0.5, 100);
  const auto fr = fit_exponent(s, {1.0, 100.0});
  REQUIRE(fr.exponent == Catch::Approx(0.5).margin(1e-10));
  REQUIRE(fr.speed == Catch::Approx(3.0).margin(1e-8));
  REQUIRE(fr.exponent_stderr < 1e-10);
  REQUIRE(fr.r_squared == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(fr.excluded_nonpositive == 0);
  REQUIRE(fr.window_lo == 1.0);
  REQUIRE(fr.window_hi == 100.0);
}

TEST_CASE("exponent fit respects the window and skips nonpositive values") {
  auto s = power_series(2.0, 1.0, 100);
  // Corrupt points outside the window; they must not affect the fit.
  s[0].v = 1e9;
  s[99].v = -5.0;
  const auto fr = fit_exponent(s, {10.0, 90.0});
  REQUIRE(fr.exponent == Catch::Approx(1.0).margin(1e-10));
  REQUIRE(fr.excluded_nonpositive == 0);

  // Zeros inside the window are dropped and counted.
  auto z = power_series(2.0, 1.0, 100);
  z[20].v = 0.0;
  z[30].v = -1.0;
  const auto fz = fit_exponent(z, {10.0, 90.0});
  REQUIRE(fz.excluded_nonpositive == 2);
  REQUIRE(fz.exponent == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("speed fit recovers a linear law") {
  std::vector<SeriesPoint> s;
  for (long i = 0; i <= 60; ++i) s.push_back({double(i), 3.0 * i + 7.0});
  const auto fr = fit_speed(s, {0.0, 60.0});
  REQUIRE(fr.speed == Catch::Approx(3.0).margin(1e-10));
  REQUIRE(fr.speed_stderr < 1e-10);
  REQUIRE(fr.r_squared == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("fits reject degenerate inputs") {
  const auto few = power_series(1.0, 1.0, 10);
  REQUIRE_THROWS_AS(fit_exponent(few, {1.0, 10.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_speed(few, {1.0, 10.0}), std::invalid_argument);

  // Constant series has no value spread.
  std::vector<SeriesPoint> flat;
  for (long i = 1; i <= 40; ++i) flat.push_back({double(i), 2.0});
  REQUIRE_THROWS_AS(fit_speed(flat, {1.0, 40.0}), std::runtime_error);

  // Single repeated time has no time spread.
  std::vector<SeriesPoint> stacked;
  for (long i = 0; i < 40; ++i) stacked.push_back({3.0, double(i)});
  REQUIRE_THROWS_AS(fit_speed(stacked, {1.0, 40.0}), std::runtime_error);

  // All-nonpositive series leaves too few usable points.
  std::vector<SeriesPoint> neg;
  for (long i = 1; i <= 40; ++i) neg.push_back({double(i), -1.0});
  REQUIRE_THROWS_AS(fit_exponent(neg, {1.0, 40.0}), std::invalid_argument);
}

TEST_CASE("pooling averages replicas and reports between-replica spread") {
  FitResult a, b, c;
  a.exponent = 1.0; a.speed = 2.0; a.r_squared = 1.0; a.excluded_nonpositive = 1;
  b.exponent = 2.0; b.speed = 4.0; b.r_squared = 0.5;
  c.exponent = 3.0; c.speed = 6.0; c.r_squared = 0.9;
  const auto p = pool_fits({a, b, c});
  REQUIRE(p.exponent == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(p.speed == Catch::Approx(4.0).margin(1e-12));
  REQUIRE(p.excluded_nonpositive == 1);
  REQUIRE(p.r_squared == Catch::Approx(0.8).margin(1e-12));
  // sd = 1, stderr = 1/sqrt(3) for the exponent; doubled for the speed.
  REQUIRE(p.exponent_stderr == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-12));
  REQUIRE(p.speed_stderr == Catch::Approx(2.0 / std::sqrt(3.0)).margin(1e-12));

  const auto single = pool_fits({a});
  REQUIRE(single.exponent_stderr == 0.0);
  REQUIRE_THROWS_AS(pool_fits({}), std::invalid_argument);
}
