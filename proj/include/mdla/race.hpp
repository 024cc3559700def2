#ifndef MDLA_RACE_HPP
#define MDLA_RACE_HPP

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "mdla/rng.hpp"

namespace mdla {

struct RaceResult {
  double p_race = 0.0;
  double expected_increment_time = 0.0;
  double gamma = 0.0;
  int dimension = 2;
};

// Closed-form race between a direct advance clock V1 ~ Exp(gamma) and the
// transverse detour V2 + V3 + V4 with V2 ~ Exp((2d-2)/(2d) gamma),
// V3 ~ Exp(d), V4 ~ Exp(gamma):
//   P[V1 >= V2+V3+V4] = (d-1)/(2(2d-1)) * d/(gamma+d),
//   E[min(V1, V2+V3+V4)] = (1/gamma)(1 - p_race).
inline RaceResult race_stats(double gamma, int d) {
  if (!(gamma > 0.0)) throw std::invalid_argument("race_stats: gamma must be > 0");
  if (d < 2) throw std::invalid_argument("race_stats: d must be >= 2");
  RaceResult r;
  r.gamma = gamma;
  r.dimension = d;
  r.p_race = (double(d) - 1.0) / (2.0 * (2.0 * double(d) - 1.0)) *
             double(d) / (gamma + double(d));
  r.expected_increment_time = (1.0 - r.p_race) / gamma;
  return r;
}

template <class Rng>
RaceResult race_monte_carlo(double gamma, int d, long n, Rng& rng) {
  if (!(gamma > 0.0)) throw std::invalid_argument("race_monte_carlo: gamma must be > 0");
  if (d < 2) throw std::invalid_argument("race_monte_carlo: d must be >= 2");
  if (n < 10000) throw std::invalid_argument("race_monte_carlo: n must be >= 10^4");
  const double rate2 = (2.0 * double(d) - 2.0) / (2.0 * double(d)) * gamma;
  long wins = 0;
  double sum_t = 0.0;
  for (long i = 0; i < n; ++i) {
    const double v1 = exponential(rng, gamma);
    const double detour = exponential(rng, rate2) + exponential(rng, double(d)) +
                          exponential(rng, gamma);
    if (v1 >= detour) ++wins;
    sum_t += std::min(v1, detour);
  }
  RaceResult r;
  r.gamma = gamma;
  r.dimension = d;
  r.p_race = double(wins) / double(n);
  r.expected_increment_time = sum_t / double(n);
  return r;
}

// Density threshold (3d-1)/(4d-2) above which the race argument certifies
// linear growth; returned as an exact numerator/denominator pair.
inline std::pair<long, long> speed_threshold(int d) {
  if (d < 2) throw std::invalid_argument("speed_threshold: d must be >= 2");
  long num = 3L * d - 1;
  long den = 4L * d - 2;
  const long g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace mdla

#endif  // MDLA_RACE_HPP
