#ifndef MDLA_S_RATE_HPP
#define MDLA_S_RATE_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mdla/front_path.hpp"
#include "mdla/rng.hpp"
#include "mdla/walk_mc.hpp"

namespace mdla {

namespace detail {

// Step-function view of s -> Y_t(s), left-continuous: Y equals value[k] on
// (threshold[k-1], threshold[k]] with threshold[-1] = 0.
struct YSteps {
  std::vector<double> threshold;
  std::vector<double> value;
};

inline YSteps build_y_steps(const FrontPath& path, double t) {
  YSteps ys;
  const long xt = path.position_at(t);
  // Walk jumps backward in time: offsets s = t - tau ascending.
  long prev_pos = xt;
  for (std::size_t k = path.jump_times.size(); k-- > 0;) {
    const double tau = path.jump_times[k];
    if (tau > t) continue;
    // For s in (prev offset, t - tau], X_{t-s} is the position before this
    // jump boundary's successor; Y on that interval is xt - positions[k].
    ys.threshold.push_back(t - tau);
    ys.value.push_back(double(xt - path.positions[k]));
    prev_pos = path.positions[k];
  }
  (void)prev_pos;
  // Oldest interval: s in (last offset, t], X_{t-s} = 0.
  ys.threshold.push_back(t);
  ys.value.push_back(double(xt));
  return ys;
}

}  // namespace detail

// Nested Monte Carlo estimate of S(t) = (K/2) P[max_{0<=s<=t} W_s - Y_t(s)
// <= 0 | Y_t]: n fresh walks are run on [0, t] against the recorded front
// history.  Estimate and standard error both carry the K/2 scale.
template <class Rng>
SurvivalEstimate s_estimate(const FrontPath& path, double t, double k_density,
                            long n, Rng& rng) {
  if (t > path.horizon) throw std::out_of_range("s_estimate: t beyond horizon");
  if (t < 0.0) throw std::invalid_argument("s_estimate: t must be >= 0");
  if (n <= 0) throw std::invalid_argument("s_estimate: n must be > 0");
  const auto ys = detail::build_y_steps(path, t);
  long survived = 0;
  for (long i = 0; i < n; ++i) {
    double s = 0.0;
    long w = 0;
    std::size_t idx = 0;
    bool alive = true;
    for (;;) {
      s += exponential(rng);
      if (s > t) break;
      w += (rng.next() & 1) ? 1 : -1;
      // Y is nondecreasing and left-continuous, so on the stretch where the
      // walk holds this value the binding comparison is at the jump time.
      while (idx < ys.threshold.size() && s > ys.threshold[idx]) ++idx;
      const double yv = idx < ys.threshold.size()
                            ? ys.value[idx]
                            : std::numeric_limits<double>::infinity();
      if (double(w) > yv) {
        alive = false;
        break;
      }
    }
    if (alive) ++survived;
  }
  const double frac = double(survived) / double(n);
  SurvivalEstimate est;
  est.n_samples = n;
  est.point_estimate = 0.5 * k_density * frac;
  est.standard_error =
      0.5 * k_density * std::sqrt(frac * (1.0 - frac) / double(n));
  return est;
}

// Product lower bound on S(t):
//   S(t) >= (K/10) 2^{-i/2} prod_{i'>=i} (1 - e^{1 - max{1, j_{i'}/sqrt(2)}}),
// with j_{i'} = Y_t(2^{i'}) 2^{-i'/2}; factors become 1 once 2^{i'} > t.
inline double s_lower_bound(const FrontPath& path, double t, int i,
                            double k_density) {
  if (t > path.horizon) throw std::out_of_range("s_lower_bound: t beyond horizon");
  if (i < 0) throw std::invalid_argument("s_lower_bound: i must be >= 0");
  double product = 1.0;
  for (int ip = i;; ++ip) {
    const double scale = std::exp2(double(ip));
    if (scale > t) break;  // Y infinite from here on: factors are 1
    const double yv = y_query(path, t, scale);
    const double j = yv * std::exp2(-0.5 * double(ip));
    const double factor = 1.0 - std::exp(1.0 - std::max(1.0, j / std::sqrt(2.0)));
    product *= std::max(0.0, factor);
    if (product == 0.0) break;
  }
  return (k_density / 10.0) * std::exp2(-0.5 * double(i)) * product;
}

}  // namespace mdla

#endif  // MDLA_S_RATE_HPP
