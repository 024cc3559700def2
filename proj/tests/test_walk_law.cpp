#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mdla/walk_law.hpp"

using namespace mdla;

namespace {

// Independent oracle for P[W_t = k]: the walk position is a difference of
// two Poisson(t/2) counts, so the pmf is the bilateral series
//   sum_j e^{-t} (t/2)^{2j+|k|} / (j! (j+|k|)!),
// summed in log space until the terms vanish.
double skellam_pmf_oracle(double t, long k) {
  const long a = std::labs(k);
  const double lh = std::log(0.5 * t);
  double s = 0.0;
  for (long j = 0; j < 400; ++j) {
    const double lt = -t + double(2 * j + a) * lh - std::lgamma(double(j) + 1.0) -
                      std::lgamma(double(j + a) + 1.0);
    const double term = std::exp(lt);
    s += term;
    if (j > 5 && term < 1e-19 * s) break;
  }
  return s;
}

}  // namespace

TEST_CASE("walk pmf matches the bilateral series oracle") {
  for (double t : {0.5, 2.5, 12.0}) {
    const WalkLaw law = walk_pmf(t, 1e-13);
    for (long k = -10; k <= 10; ++k) {
      REQUIRE(law(k) == Catch::Approx(skellam_pmf_oracle(t, k)).margin(1e-12));
    }
  }
}

TEST_CASE("walk pmf matches the standard library Bessel function") {
  const double t = 3.25;
  const WalkLaw law = walk_pmf(t, 1e-13);
  for (long k = 0; k <= 12; ++k) {
    const double exact = std::exp(-t) * std::cyl_bessel_i(double(k), t);
    REQUIRE(law(k) == Catch::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("walk pmf basic structure") {
  const WalkLaw law = walk_pmf(9.0, 1e-12);
  REQUIRE(law.total_mass() >= 1.0 - 1e-12);
  REQUIRE(law.total_mass() <= 1.0 + 1e-12);
  for (long k = 1; k <= law.support_hi; ++k) REQUIRE(law(k) == law(-k));
  REQUIRE(std::fabs(law.mean()) < 1e-12);
  REQUIRE(law.variance() == Catch::Approx(9.0).margin(1e-8));

  const WalkLaw zero = walk_pmf(0.0, 1e-12);
  REQUIRE(zero(0) == 1.0);
  REQUIRE(zero.support_lo == 0);
  REQUIRE(zero.support_hi == 0);

  REQUIRE_THROWS_AS(walk_pmf(-1.0, 1e-12), std::invalid_argument);
  REQUIRE_THROWS_AS(walk_pmf(1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(walk_pmf(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("frozen reference values at t = 1") {
  // Pinned against the series oracle; these protect the tabulation from
  // silent regressions.
  const WalkLaw law = walk_pmf(1.0, 1e-13);
  REQUIRE(law(0) == Catch::Approx(0.4657596077).margin(1e-9));
  REQUIRE(max_zero_prob(1.0) == Catch::Approx(0.6736694).margin(1e-5));
  REQUIRE(max_zero_prob(1.0) ==
          Catch::Approx(skellam_pmf_oracle(1.0, 0) + skellam_pmf_oracle(1.0, 1))
              .margin(1e-12));
}

TEST_CASE("maximum tail via reflection is coherent") {
  for (double t : {1.0, 4.0, 25.0}) {
    REQUIRE(max_tail(t, 0) == 1.0);
    // Complement identity with the flat-max probability.
    REQUIRE(max_tail(t, 1) ==
            Catch::Approx(1.0 - max_zero_prob(t)).margin(1e-10));
    double prev = 1.0;
    for (long j = 1; j <= 12; ++j) {
      const double cur = max_tail(t, j);
      REQUIRE(cur <= prev + 1e-15);
      REQUIRE(cur >= 0.0);
      prev = cur;
    }
  }
  REQUIRE(max_tail(0.0, 3) == 0.0);
  REQUIRE_THROWS_AS(max_tail(1.0, -1), std::invalid_argument);
}

TEST_CASE("chernoff tail dominates the exact tail") {
  for (double t : {1.0, 9.0, 64.0}) {
    const WalkLaw law = walk_pmf(t, 1e-13);
    for (long m = 1; m <= 20; ++m) {
      REQUIRE(detail::walk_chernoff(t, double(m)) >= law.tail_geq(m) - 1e-12);
    }
  }
}

TEST_CASE("conditioned endpoint law") {
  const double t = 6.0;
  const WalkLaw base = walk_pmf(t, 1e-13);
  const WalkLaw cond = conditioned_endpoint(t, 1e-13);
  REQUIRE(cond.support_hi == 0);
  const double norm = base(0) + base(1);
  for (long k = cond.support_lo; k <= 0; ++k) {
    const double expect =
        std::max(0.0, (skellam_pmf_oracle(t, k) - skellam_pmf_oracle(t, k - 2)) / norm);
    REQUIRE(cond(k) == Catch::Approx(expect).margin(1e-11));
  }
  REQUIRE(cond.total_mass() == Catch::Approx(1.0).margin(1e-10));
  REQUIRE(cond.mean() <= 0.0);
  REQUIRE_THROWS_AS(conditioned_endpoint(0.0), std::invalid_argument);
}

TEST_CASE("theta root solves its equation and has the small-slope limit") {
  for (double a : {0.001, 0.01, 0.1, 0.5, 1.0}) {
    const double th = theta_root(a);
    REQUIRE(th > 0.0);
    REQUIRE(std::cosh(th) - 1.0 == Catch::Approx(a * th).margin(1e-12));
    // cosh expansion gives theta = 2a - a^3/3 + ...: just below 2a.
    REQUIRE(th <= 2.0 * a);
    if (a <= 0.1) REQUIRE(th / (2.0 * a) > 0.95);
  }
  REQUIRE_THROWS_AS(theta_root(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(theta_root(1.5), std::invalid_argument);
}

TEST_CASE("psi closed form") {
  REQUIRE(psi(0.5) == Catch::Approx(0.5 - 0.5 * std::log(2.0)).margin(1e-15));
  REQUIRE(psi(0.5) == Catch::Approx(0.15342640972002734).margin(1e-12));
  REQUIRE(psi(0.5) >= 0.1);
  // psi decreases to 0 as rho -> 1 and rises to 1 as rho -> 0.
  REQUIRE(psi(0.999) < psi(0.5));
  REQUIRE(psi(0.01) > psi(0.5));
  REQUIRE_THROWS_AS(psi(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(psi(1.0), std::invalid_argument);
}
