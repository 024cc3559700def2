#ifndef MDLA_WALK_MC_HPP
#define MDLA_WALK_MC_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "mdla/rng.hpp"
#include "mdla/walk_law.hpp"

namespace mdla {

struct SurvivalEstimate {
  double point_estimate = 0.0;
  double standard_error = 0.0;
  long n_samples = 0;
};

// Running maximum of an exactly sampled rate-1 walk over [0, t].
template <class Rng>
long sample_walk_max(Rng& rng, double t) {
  double s = 0.0;
  long w = 0, m = 0;
  for (;;) {
    s += exponential(rng);
    if (s > t) return m;
    w += (rng.next() & 1) ? 1 : -1;
    if (w > m) m = w;
  }
}

struct BarrierSurvivalOptions {
  // Skip ahead in certified blocks when the walk is far below the barrier.
  bool block_skip = true;
  // Per-block crossing bound accepted when skipping.
  double block_eps = 1e-9;
  // Declare a walk a survivor once its certified future-crossing bound
  // drops below this.
  double certify_eps = 1e-7;
  // How often (in jump events) to attempt certification.
  long certify_interval = 256;
  // Require the spec'd horizon precondition before trusting t_max.
  bool check_horizon = true;
};

namespace detail {

// Certified bound on P[walk started at w at time s0 ever crosses the
// barrier after s0], by a union bound over dyadic lookahead blocks
// [s0 + 2^j, s0 + 2^{j+1}] with the Chernoff maximal inequality.
template <class B>
double future_crossing_bound(B&& barrier, double s0, double w, double stop_below) {
  double total = 0.0;
  // Block [s0, s0+1] first.
  {
    const double g = barrier(s0) - w;
    total += walk_chernoff(1.0, g);
  }
  double len = 1.0;
  for (int j = 0; j < 140; ++j) {
    const double g = barrier(s0 + len) - w;
    const double bound = walk_chernoff(2.0 * len, g);
    total += bound;
    if (total > stop_below) return total;
    if (bound < 1e-22 && len > 1.0) break;
    len *= 2.0;
  }
  return total;
}

}  // namespace detail

// Monte Carlo estimate of P[W_s <= barrier(max(s - shift, 0)) for all s]
// for an exactly sampled rate-1 continuous-time +-1 walk.
//
// The event is over all s >= 0; the simulation runs to t_max and certifies
// each surviving walk's post-horizon crossing probability with the maximal
// inequality, so the truncation bias is controlled explicitly.  When the
// walk sits far below the barrier, whole stretches are advanced with a
// single Skellam increment; the per-block crossing probability forfeited
// that way is capped at block_eps and accumulated.
template <class B, class Rng>
SurvivalEstimate barrier_survival(B&& barrier, double shift, double t_max, long n,
                                  Rng& rng, const BarrierSurvivalOptions& opt = {}) {
  if (!(t_max > 0.0)) throw std::invalid_argument("barrier_survival: t_max must be > 0");
  if (n < 10000) throw std::invalid_argument("barrier_survival: n must be >= 10^4");
  if (!(shift >= 0.0)) throw std::invalid_argument("barrier_survival: shift must be >= 0");
  auto beff = [&](double s) { return barrier(std::max(s - shift, 0.0)); };
  if (opt.check_horizon) {
    // t_max must be deep enough into the barrier's growth that the walk's
    // post-horizon crossing mass is negligible under the reflection-style
    // tail bound; concretely the residual bound from level zero must be tiny.
    const double residual = detail::future_crossing_bound(beff, t_max, 0.0, 1e300);
    if (!(residual <= 1e-4))
      throw std::invalid_argument(
          "barrier_survival: t_max too small, post-horizon crossing mass not negligible");
  }
  // Derived from block_eps: skip a stretch dt with gap g only when the
  // crossing bound within the block is below block_eps.
  const double c_skip = std::sqrt(2.0 * std::log(1.0 / opt.block_eps)) + 1.0;
  long survived = 0;
  for (long i = 0; i < n; ++i) {
    double s = 0.0;
    double w = 0.0;
    long events_since_check = 0;
    bool alive = true;
    while (alive) {
      if (s >= t_max) break;  // survivor by horizon
      const double g = beff(s) - w;
      if (opt.block_skip && g >= 2.0 * c_skip) {
        double dt = (g / c_skip) * (g / c_skip);
        if (dt > t_max - s) dt = t_max - s;
        if (dt >= 4.0) {
          w += double(skellam_increment(rng, dt));
          s += dt;
          if (w > beff(s)) alive = false;  // conservative: prob <= block_eps
          events_since_check = opt.certify_interval;  // force a check
          if (alive && events_since_check >= opt.certify_interval) {
            events_since_check = 0;
            if (detail::future_crossing_bound(beff, s, w, opt.certify_eps) <=
                opt.certify_eps)
              break;  // certified survivor
          }
          continue;
        }
      }
      if (++events_since_check >= opt.certify_interval) {
        events_since_check = 0;
        if (detail::future_crossing_bound(beff, s, w, opt.certify_eps) <=
            opt.certify_eps)
          break;  // certified survivor
      }
      s += exponential(rng);
      if (s > t_max) break;  // survivor by horizon
      w += (rng.next() & 1) ? 1.0 : -1.0;
      if (w > beff(s)) alive = false;
    }
    if (alive) ++survived;
  }
  SurvivalEstimate est;
  est.n_samples = n;
  est.point_estimate = double(survived) / double(n);
  est.standard_error =
      std::sqrt(est.point_estimate * (1.0 - est.point_estimate) / double(n));
  return est;
}

}  // namespace mdla

#endif  // MDLA_WALK_MC_HPP
