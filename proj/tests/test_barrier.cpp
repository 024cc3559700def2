#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mdla/barrier.hpp"

using namespace mdla;

TEST_CASE("barrier evaluation at alpha = 0.25") {
  const Barrier y(0.25);
  REQUIRE(y.flat_end() == Catch::Approx(8.0).margin(1e-12));
  REQUIRE(y(0.0) == 0.0);
  REQUIRE(y(8.0) == 0.0);
  // Just past the flat stretch the linear branch is far below the cap.
  REQUIRE(y(16.0) == Catch::Approx(0.25 * 8.0).margin(1e-12));
  // Far out the sqrt-log cap binds: s = 2^20 gives 2^10 * 20.
  const double s = std::exp2(20.0);
  REQUIRE(y(s) == Catch::Approx(std::exp2(10.0) * 20.0).margin(1e-6));
  REQUIRE(y(s) < 0.25 * (s - 8.0));
  REQUIRE_THROWS_AS(y(-1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(Barrier(0.0), std::invalid_argument);
  REQUIRE(barrier_eval(0.25, 16.0) == y(16.0));
}

TEST_CASE("barrier is nondecreasing") {
  for (double a : {0.05, 0.25, 1.0}) {
    const Barrier y(a);
    double prev = 0.0;
    for (double s = 0.0; s < 4000.0; s += 1.7) {
      const double v = y(s);
      REQUIRE(v >= prev - 1e-12);
      prev = v;
    }
  }
}

namespace {

// Front with jumps at 1, 2, 3, ... up to n: X_t = floor(t) on [0, n].
FrontPath unit_staircase(long n) {
  FrontPath p;
  p.horizon = double(n);
  for (long i = 1; i <= n; ++i) {
    p.jump_times.push_back(double(i));
    p.positions.push_back(i);
  }
  return p;
}

}  // namespace

TEST_CASE("history increments match hand values") {
  const FrontPath p = unit_staircase(10);
  REQUIRE(y_query(p, 10.0, 0.0) == 0.0);
  REQUIRE(y_query(p, 10.0, 3.5) == 4.0);  // X_10 - X_6.5 = 10 - 6
  REQUIRE(y_query(p, 10.0, 10.0) == 10.0);
  REQUIRE(std::isinf(y_query(p, 5.0, 6.0)));
  REQUIRE_THROWS_AS(y_query(p, 11.0, 1.0), std::out_of_range);
  REQUIRE_THROWS_AS(y_query(p, 5.0, -1.0), std::invalid_argument);
}

TEST_CASE("permissive profile against the staircase") {
  const FrontPath p = unit_staircase(64);
  const auto prof = permissive_check(p, 64.0, 0, 4);
  REQUIRE(prof.scales.size() == 5);
  for (const auto& sc : prof.scales) {
    REQUIRE(sc.observed == std::exp2(double(sc.i)));  // Y(2^i) = 2^i here
    REQUIRE(sc.threshold == permissive_threshold(sc.i));
    REQUIRE(sc.satisfied == (sc.observed >= sc.threshold));
  }
  // i = 0: threshold 0, satisfied; i = 4: needs 160 > 16, not satisfied.
  REQUIRE(prof.scales.front().satisfied);
  REQUIRE_FALSE(prof.scales.back().satisfied);
  REQUIRE_FALSE(prof.all_satisfied());
  REQUIRE_THROWS_AS(permissive_check(p, 65.0, 0, 2), std::out_of_range);
  REQUIRE_THROWS_AS(permissive_check(p, 10.0, 2, 1), std::invalid_argument);
}

TEST_CASE("exact infimum of the front-minus-barrier gap") {
  // Stalled front: X = 0 forever, so the gap is -y(t) once the barrier lifts.
  FrontPath stalled;
  stalled.horizon = 10.0;
  const double g = barrier_gap(stalled, 4.0, 1.0);
  const Barrier y1(1.0);
  REQUIRE(g == Catch::Approx(-y1(4.0)).margin(1e-12));
  REQUIRE(g < 0.0);

  // Fast staircase against a slow barrier: every offset clears it.
  const FrontPath p = unit_staircase(10);
  REQUIRE(barrier_gap(p, 10.0, 0.01) == 0.0);  // s = 0 pins the infimum at 0

  REQUIRE_THROWS_AS(barrier_gap(p, 11.0, 0.01), std::out_of_range);
}

TEST_CASE("grid variant validates its grid") {
  const FrontPath p = unit_staircase(4);
  std::vector<double> good = {0.0, 1.0, 2.0, 3.0, 4.0};
  REQUIRE(barrier_gap(p, 4.0, 0.01, good) == barrier_gap(p, 4.0, 0.01));
  std::vector<double> missing_offset = {0.0, 1.0, 2.0, 4.0};
  REQUIRE_THROWS_AS(barrier_gap(p, 4.0, 0.01, missing_offset),
                    std::invalid_argument);
  std::vector<double> missing_zero = {1.0, 2.0, 3.0, 4.0};
  REQUIRE_THROWS_AS(barrier_gap(p, 4.0, 0.01, missing_zero),
                    std::invalid_argument);
}
