#ifndef MDLA_REGENERATION_HPP
#define MDLA_REGENERATION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mdla/barrier.hpp"
#include "mdla/rng.hpp"
#include "mdla/sim1d.hpp"

namespace mdla {

namespace detail {

// Replace a summarized history segment by exact conditional detail: given n
// jumps and net displacement disp over [t0, t1], the jump times are sorted
// iid uniforms and the directions are a uniformly random interleaving of
// (n+disp)/2 up-steps and (n-disp)/2 down-steps.
template <class Rng>
void refine_segment(ParticleRecord& pr, std::size_t k, Rng& rng) {
  const TrajectorySegment seg = pr.history[k];
  if (seg.kind != 1) return;
  std::vector<double> times(static_cast<std::size_t>(seg.n));
  for (auto& tv : times) tv = seg.t0 + (seg.t1 - seg.t0) * rng.uniform();
  std::sort(times.begin(), times.end());
  long ups = (seg.n + seg.disp) / 2;
  long downs = seg.n - ups;
  std::vector<TrajectorySegment> detail;
  detail.reserve(times.size());
  long pos = seg.pos0;
  for (double tv : times) {
    const long rem = ups + downs;
    const bool up = rng.uniform() * double(rem) < double(ups);
    const long d = up ? 1 : -1;
    (up ? ups : downs) -= 1;
    detail.push_back({tv, tv, pos, 1, d, 0});
    pos += d;
  }
  pr.history.erase(pr.history.begin() + static_cast<std::ptrdiff_t>(k));
  pr.history.insert(pr.history.begin() + static_cast<std::ptrdiff_t>(k),
                    detail.begin(), detail.end());
}

// Minimum margin of the live-particle condition at integer time t:
//   inf_{s >= 0} zeta(t-s) - (X_t - y_alpha(s)),
// restricted to history times u > u_stop (pass u_stop < 0 for a full scan;
// the pre-time-0 branch is included only then).  The trajectory is scanned
// recent-to-old; a constant piece on [a, b] is binding against the
// nondecreasing threshold H(u) = X_t - y(t-u) at u = b.  Summarized pieces
// are tested with their coarse minimum bound and refined into exact
// conditional detail only when inconclusive.  Scanning stops early once the
// barrier has receded below the particle's global minimum bound; the
// returned value is then a lower bound on the true margin over the scanned
// range, which is all the caller needs.
template <class Rng>
double condition2_margin(ParticleRecord& pr, double t, long xt,
                         const Barrier& y, Rng& rng, double u_stop = -1.0) {
  auto H = [&](double u) { return double(xt) - y(std::max(t - u, 0.0)); };
  double margin = std::numeric_limits<double>::infinity();
  auto account = [&](double vmin, double u_end) {
    margin = std::min(margin, vmin - H(u_end));
  };
  std::size_t m = pr.history.size();
  while (m > 0 && pr.history[m - 1].t0 > t) --m;
  // Piece after the last segment at or before t.
  if (m == 0) {
    account(double(pr.init_pos), t);
  } else {
    const auto& last = pr.history[m - 1];
    if (!(last.kind == 1 && last.t1 > t))
      account(double(last.pos0 + last.disp), t);
  }
  std::size_t k = m;
  while (k-- > 0) {
    const double u_end = std::min(pr.history[k].t1, t);
    if (u_end <= u_stop) return margin;
    {
      const double recede = double(xt) - double(pr.min_bound);
      if (margin > 0.0 && y(t - u_end) > recede) {
        // Every older piece clears the barrier by at least this much.
        return std::min(margin, double(pr.min_bound) - H(u_end));
      }
    }
    const double vmin = double(pr.history[k].min_bound());
    if (vmin - H(u_end) <= 0.0 && pr.history[k].kind == 1 &&
        pr.history[k].n > 0) {
      const std::size_t n = static_cast<std::size_t>(pr.history[k].n);
      refine_segment(pr, k, rng);
      k += n;  // resume from the most recent refined jump
      continue;
    }
    account(vmin, u_end);
    if (margin <= 0.0) return margin;
    // Constant stretch leading into this segment.
    const double u_prev = k > 0 ? pr.history[k - 1].t1 : 0.0;
    if (u_prev > u_stop)
      account(double(pr.history[k].pos0), std::min(pr.history[k].t0, t));
    if (margin <= 0.0) return margin;
  }
  if (u_stop < 0.0) {
    // Pre-time-0 history: initial position held constant; the binding
    // threshold over s >= t is at s = t, i.e. u = 0.
    account(double(pr.init_pos), 0.0);
  }
  return margin;
}

}  // namespace detail

// Integer regeneration times of a recorded run: times where the front
// history dominates the barrier (gap >= 0) and every particle still mobile
// at t stayed strictly above the receding barrier X_t - y_alpha(s) over its
// whole past (initial position held constant before time 0).
inline std::vector<long> detect_regenerations(RunRecord& run, double alpha) {
  if (!run.config.record_particles)
    throw std::logic_error("detect_regenerations: run lacks particle history");
  const Barrier y(alpha);
  Xoshiro256 refine_rng(run.refine_seed);
  const long t_max = static_cast<long>(std::floor(run.front.horizon));

  // Particles whose whole trajectory stayed above X_t can never violate the
  // condition at t; order by global minimum bound so only a prefix is ever
  // inspected.
  std::vector<std::size_t> order(run.particles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return run.particles[a].min_bound < run.particles[b].min_bound;
  });

  struct Memo {
    double margin = -1.0;  // < 0: no valid previous check
    long checked_x = 0;
    double checked_t = -1.0;
  };
  std::vector<Memo> memo(run.particles.size());

  std::vector<long> out;
  std::size_t frontier = 0;
  for (long t = 0; t <= t_max; ++t) {
    const long xt = run.front.position_at(double(t));
    if (barrier_gap(run.front, double(t), alpha) < 0.0) continue;
    while (frontier < order.size() &&
           run.particles[order[frontier]].min_bound <= xt)
      ++frontier;
    bool ok = true;
    for (std::size_t oi = 0; oi < frontier && ok; ++oi) {
      const std::size_t j = order[oi];
      ParticleRecord& pr = run.particles[j];
      if (pr.status == ParticleStatus::Frozen && pr.freeze_time <= double(t))
        continue;  // already part of the aggregate
      Memo& mm = memo[j];
      double margin;
      const double carried =
          mm.margin > 0.0 ? mm.margin - double(xt - mm.checked_x) : -1.0;
      if (carried > 0.0) {
        // Old pieces keep a positive margin; only newer history needs a look.
        const double fresh = detail::condition2_margin(pr, double(t), xt, y,
                                                       refine_rng, mm.checked_t);
        margin = std::min(carried, fresh);
      } else {
        margin = detail::condition2_margin(pr, double(t), xt, y, refine_rng);
      }
      if (margin <= 0.0) {
        ok = false;
      } else {
        mm.margin = margin;
        mm.checked_x = xt;
        mm.checked_t = double(t);
      }
    }
    if (ok) out.push_back(t);
  }
  return out;
}

}  // namespace mdla

#endif  // MDLA_REGENERATION_HPP
