#ifndef MDLA_SIM1D_HPP
#define MDLA_SIM1D_HPP

#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mdla/front_path.hpp"
#include "mdla/poisson_field.hpp"
#include "mdla/rng.hpp"
#include "mdla/walk_law.hpp"

namespace mdla {

struct SimConfig {
  double k_density = 1.0;
  double horizon = 100.0;
  std::uint64_t master_seed = 0;
  double leakage_tol = 1e-6;
  bool record_particles = false;
  int dimension = 1;
  // Engine knobs (defaults fine for all spec'd scales).
  bool lazy = true;                  // certified far-particle fast path
  double thinning_reference = 0.0;   // couple against a reference density
  long max_window_sites = 1L << 26;  // memory guard for the materialized window
  bool adhesion_disabled = false;    // free walks only; used by kernel checks
};

enum class ParticleStatus : std::uint8_t { Active, Frozen };

// One piece of a recorded trajectory.  kind 0: a single jump at t0 == t1
// (disp = +-1).  kind 1: a summarized stretch with n jumps and net
// displacement disp; the exact path inside is unknown but bounded below by
// pos0 - n, and can be filled in later by exact conditional refinement.
struct TrajectorySegment {
  double t0 = 0.0, t1 = 0.0;
  long pos0 = 0;
  long n = 0;
  long disp = 0;
  int kind = 0;

  long min_bound() const {
    if (kind == 0) return std::min(pos0, pos0 + disp);
    return pos0 - n;
  }
};

struct ParticleRecord {
  std::uint64_t id = 0;
  long init_pos = 0;
  long final_pos = 0;
  ParticleStatus status = ParticleStatus::Active;
  double freeze_time = -1.0;
  long min_bound = 0;  // lower bound on the whole-trajectory minimum
  std::vector<TrajectorySegment> history;  // present iff record_particles
};

struct RunRecord {
  SimConfig config;
  FrontPath front;
  long event_count = 0;      // detailed particle jumps executed
  long frozen_count = 0;
  long materialized_particles = 0;
  double leakage_bound = 0.0;
  long window_hi = 0;
  std::vector<ParticleRecord> particles;
  std::uint64_t refine_seed = 0;  // stream for post-hoc history refinement
};

namespace detail {

// Chernoff upper tail for Poisson(mean): P[N >= k] <= exp(-mean*h(k/mean)),
// h(x) = x ln x - x + 1, for k >= mean.
inline double poisson_upper_tail_bound(double mean, double k) {
  if (k <= mean) return 1.0;
  if (mean <= 0.0) return 0.0;
  const double x = k / mean;
  return std::exp(-mean * (x * std::log(x) - x + 1.0));
}

inline long poisson_chernoff_quantile(double mean, double tail) {
  if (mean <= 0.0) return 0;
  long lo = static_cast<long>(mean), hi = static_cast<long>(mean) + 1;
  while (poisson_upper_tail_bound(mean, double(hi)) > tail) {
    lo = hi;
    hi *= 2;
  }
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (poisson_upper_tail_bound(mean, double(mid)) <= tail)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

struct WindowPlan {
  long x_cap = 0;
  long hi = 1;
  double leakage_bound = 0.0;
};

// Static right-half-line window [1, hi].  On the high-probability event
// {X_T <= x_cap}, a particle starting at p > hi would have to travel left
// by p - x_cap - 1 to ever touch the front; the expected number of such
// excursions over the unmaterialized fringe is summed with the reflection
// tail bound and kept below leakage_tol / 2.
inline WindowPlan plan_window_1d(double k, double horizon, double tol) {
  WindowPlan plan;
  if (k <= 0.0) {
    plan.hi = 1;
    plan.leakage_bound = 0.0;
    return plan;
  }
  const double mean = k * horizon;
  plan.x_cap = poisson_chernoff_quantile(mean, tol / 2.0);
  const double rt = std::sqrt(std::max(horizon, 1e-12));
  const double geom = 1.0 - std::exp(-1.0 / rt);
  auto fringe = [&](long hi) {
    return k * std::exp(1.0) * std::exp(-double(hi - plan.x_cap) / rt) / geom;
  };
  long hi = plan.x_cap + 1;
  const double target = tol / 2.0;
  if (fringe(hi) > target) {
    const double need = rt * std::log(fringe(hi) / target);
    hi += static_cast<long>(std::ceil(need));
    while (fringe(hi) > target) ++hi;
  }
  plan.hi = hi;
  plan.leakage_bound =
      poisson_upper_tail_bound(mean, double(plan.x_cap)) + fringe(hi);
  return plan;
}

}  // namespace detail

class Sim1DEngine {
 public:
  explicit Sim1DEngine(const SimConfig& cfg) : cfg_(cfg), rng_(mix64(cfg.master_seed, 0x5157bd161073a01bULL)) {
    if (!(cfg.horizon >= 0.0)) throw std::invalid_argument("simulate_1d: horizon must be >= 0");
    if (!(cfg.leakage_tol > 0.0) || !(cfg.leakage_tol < 1.0))
      throw std::invalid_argument("simulate_1d: leakage_tol must be in (0,1)");
    if (cfg.k_density < 0.0) throw std::invalid_argument("simulate_1d: k_density must be >= 0");
  }

  RunRecord run() {
    setup();
    loop();
    return finalize();
  }

 private:
  static constexpr long kDormantMinDist = 16;
  static constexpr double kBlockDivisor = 4.0;

  struct P {
    long pos = 0;
    long min_bound = 0;
    long init_pos = 0;
    long n = 0;  // dormant: jumps in block; cond: jumps remaining
    double t_ref = 0.0, t_end = 0.0;
    double freeze_time = -1.0;
    std::uint64_t id = 0;
    std::uint64_t stream_seed = 0;
    std::uint64_t stream_ctr = 0;
    std::uint32_t epoch = 0;
    enum class M : std::uint8_t { Free, Cond, Dormant, Frozen } mode = M::Free;
    std::vector<TrajectorySegment> history;
  };

  struct Ev {
    double t;
    std::uint32_t i;
    std::uint32_t epoch;
    bool operator>(const Ev& o) const { return t > o.t; }
  };

  struct Wk {
    long theta;
    std::uint32_t i;
    std::uint32_t epoch;
    bool operator>(const Wk& o) const { return theta > o.theta; }
  };

  SimConfig cfg_;
  Xoshiro256 rng_;
  std::vector<P> ps_;
  std::unordered_map<long, std::vector<std::uint32_t>> site_;
  std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> evq_;
  std::priority_queue<Wk, std::vector<Wk>, std::greater<Wk>> wakeq_;
  FrontPath front_;
  long x_ = 0;
  long event_count_ = 0;
  long frozen_count_ = 0;
  double leakage_bound_ = 0.0;
  long window_hi_ = 0;

  double uni(P& p) {
    if (cfg_.lazy) return rng_.uniform();
    std::uint64_t s = p.stream_seed + p.stream_ctr++ * 0x9e3779b97f4a7c15ULL;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    return double((s ^ (s >> 31)) >> 11) * 0x1.0p-53;
  }

  bool coin(P& p) { return uni(p) < 0.5; }

  double expo(P& p) {
    double u;
    do {
      u = uni(p);
    } while (u <= 0.0);
    return -std::log(u);
  }

  void site_add(std::uint32_t i) { site_[ps_[i].pos].push_back(i); }

  void site_remove(std::uint32_t i) {
    auto it = site_.find(ps_[i].pos);
    auto& v = it->second;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == i) {
        v[k] = v.back();
        v.pop_back();
        break;
      }
    }
    if (v.empty()) site_.erase(it);
  }

  void record_jump(P& p, double t, long pos0, long disp) {
    if (!cfg_.record_particles) return;
    p.history.push_back({t, t, pos0, 1, disp, 0});
  }

  void record_block(P& p, double t0, double t1, long pos0, long n, long disp) {
    if (!cfg_.record_particles) return;
    p.history.push_back({t0, t1, pos0, n, disp, 1});
  }

  void setup() {
    const double ref = cfg_.thinning_reference > 0.0
                           ? std::max(cfg_.thinning_reference, cfg_.k_density)
                           : cfg_.k_density;
    auto plan = detail::plan_window_1d(ref, cfg_.horizon, cfg_.leakage_tol);
    if (plan.hi > cfg_.max_window_sites)
      throw std::runtime_error(
          "simulate_1d: window needed for leakage_tol exceeds site budget");
    leakage_bound_ = plan.leakage_bound;
    window_hi_ = plan.hi;

    FieldConfig fc;
    fc.k_density = cfg_.k_density;
    fc.master_seed = cfg_.master_seed;
    fc.dimension = 1;
    fc.thinning_reference = cfg_.thinning_reference;
    for (long s = 1; s <= plan.hi; ++s) {
      const auto occ = site_count(fc, {s});
      for (long j = 0; j < occ.count; ++j) {
        P p;
        p.pos = s;
        p.init_pos = s;
        p.min_bound = s;
        p.id = occ.particle_ids[static_cast<std::size_t>(j)];
        p.stream_seed = mix64(p.id, 0x8e51'2af1'77ca'3c11ULL);
        ps_.push_back(std::move(p));
      }
    }
    front_.horizon = cfg_.horizon;
    for (std::uint32_t i = 0; i < ps_.size(); ++i) {
      site_add(i);  // reassess expects membership for active modes
      reassess(i, 0.0, /*in_map=*/true);
    }
  }

  // Decide the mode of particle i at time t.  in_map says whether the
  // particle currently sits in the site map.
  void reassess(std::uint32_t i, double t, bool in_map) {
    P& p = ps_[i];
    ++p.epoch;
    const long dist = p.pos - (x_ + 1);
    const double remaining = cfg_.horizon - t;
    if (cfg_.lazy && dist >= kDormantMinDist && remaining > 1e-12) {
      const double dt = std::min(double(dist) / kBlockDivisor, remaining);
      const long n = poisson(rng_, dt);
      if (p.pos - n >= x_ + 2) {
        if (in_map) site_remove(i);
        p.mode = P::M::Dormant;
        p.t_ref = t;
        p.t_end = t + dt;
        p.n = n;
        p.min_bound = std::min(p.min_bound, p.pos - n);
        wakeq_.push({p.pos - n, i, p.epoch});
        evq_.push({p.t_end, i, p.epoch});
        return;
      }
      // Certificate failed: run the same n jumps as a conditioned schedule.
      if (!in_map) site_add(i);
      p.mode = P::M::Cond;
      p.t_ref = t;
      p.t_end = t + dt;
      p.n = n;
      schedule_cond(i, t);
      return;
    }
    if (!in_map) site_add(i);
    p.mode = P::M::Free;
    evq_.push({t + expo(p), i, p.epoch});
  }

  void schedule_cond(std::uint32_t i, double t) {
    P& p = ps_[i];
    if (p.n <= 0) {
      evq_.push({p.t_end, i, p.epoch});  // idle until window end
      return;
    }
    double u;
    do {
      u = uni(p);
    } while (u <= 0.0);
    const double next = t + (p.t_end - t) * (1.0 - std::pow(u, 1.0 / double(p.n)));
    evq_.push({next, i, p.epoch});
  }

  void freeze_site(long v, double t) {
    auto it = site_.find(v);
    if (it != site_.end()) {
      for (std::uint32_t j : it->second) {
        P& q = ps_[j];
        q.mode = P::M::Frozen;
        q.freeze_time = t;
        ++q.epoch;
        ++frozen_count_;
      }
      site_.erase(it);
    }
  }

  void advance_front(double t) {
    const long v = x_ + 1;
    freeze_site(v, t);
    x_ = v;
    front_.jump_times.push_back(t);
    front_.positions.push_back(x_);
    // Wake dormant particles whose certificate no longer clears the front.
    while (!wakeq_.empty() && wakeq_.top().theta <= x_ + 1) {
      const Wk w = wakeq_.top();
      wakeq_.pop();
      if (w.epoch != ps_[w.i].epoch || ps_[w.i].mode != P::M::Dormant) continue;
      wake(w.i, t);
    }
  }

  void wake(std::uint32_t i, double t) {
    P& p = ps_[i];
    const double span = p.t_end - p.t_ref;
    const double frac = span > 0.0 ? std::min(1.0, (t - p.t_ref) / span) : 1.0;
    const long n1 = binomial(rng_, p.n, frac);
    const long disp = symmetric_walk_step_sum(rng_, n1);
    record_block(p, p.t_ref, t, p.pos, n1, disp);
    const long pos0 = p.pos;
    p.pos = pos0 + disp;
    const long r = p.n - n1;
    ++p.epoch;
    if (p.pos - r >= x_ + 2 && t < p.t_end) {
      // Re-certify the remainder of the block.
      p.t_ref = t;
      p.n = r;
      p.min_bound = std::min(p.min_bound, p.pos - r);
      wakeq_.push({p.pos - r, i, p.epoch});
      evq_.push({p.t_end, i, p.epoch});
      return;
    }
    site_add(i);
    p.mode = P::M::Cond;
    p.t_ref = t;
    p.n = r;
    p.min_bound = std::min(p.min_bound, p.pos);
    if (t >= p.t_end) {
      p.t_end = t;
      evq_.push({t, i, p.epoch});
      return;
    }
    schedule_cond(i, t);
  }

  void do_jump(std::uint32_t i, double t) {
    P& p = ps_[i];
    ++event_count_;
    const bool left = coin(p);
    if (left && p.pos == x_ + 1 && !cfg_.adhesion_disabled) {
      // Adhesion: the jumper freezes in place and the front advances.
      record_jump(p, t, p.pos, 0);
      advance_front(t);
      return;
    }
    const long pos0 = p.pos;
    site_remove(i);
    p.pos += left ? -1 : 1;
    p.min_bound = std::min(p.min_bound, p.pos);
    record_jump(p, t, pos0, p.pos - pos0);
    if (p.mode == P::M::Cond) {
      --p.n;
      if (cfg_.lazy && p.n > 0 && p.pos - p.n >= x_ + 2 &&
          p.pos - (x_ + 1) >= kDormantMinDist) {
        // Remaining conditioned jumps re-certify as a dormant block.
        ++p.epoch;
        p.mode = P::M::Dormant;
        p.t_ref = t;
        p.min_bound = std::min(p.min_bound, p.pos - p.n);
        wakeq_.push({p.pos - p.n, i, p.epoch});
        evq_.push({p.t_end, i, p.epoch});
        return;
      }
      site_add(i);
      schedule_cond(i, t);
      return;
    }
    site_add(i);
    if (cfg_.lazy && p.pos - (x_ + 1) >= kDormantMinDist) {
      reassess(i, t, /*in_map=*/true);
      return;
    }
    evq_.push({t + expo(p), i, p.epoch});
  }

  void finish_block(std::uint32_t i, double t) {
    P& p = ps_[i];
    const long disp = symmetric_walk_step_sum(rng_, p.n);
    record_block(p, p.t_ref, t, p.pos, p.n, disp);
    p.pos += disp;
    reassess(i, t, /*in_map=*/false);
  }

  void loop() {
    while (!evq_.empty()) {
      const Ev e = evq_.top();
      if (e.t > cfg_.horizon) break;
      evq_.pop();
      P& p = ps_[e.i];
      if (e.epoch != p.epoch || p.mode == P::M::Frozen) continue;
      switch (p.mode) {
        case P::M::Free:
          do_jump(e.i, e.t);
          break;
        case P::M::Cond:
          if (p.n > 0) {
            do_jump(e.i, e.t);
          } else {
            site_remove(e.i);
            reassess(e.i, e.t, /*in_map=*/false);
          }
          break;
        case P::M::Dormant:
          finish_block(e.i, e.t);
          break;
        case P::M::Frozen:
          break;
      }
    }
  }

  RunRecord finalize() {
    RunRecord rec;
    rec.config = cfg_;
    rec.front = std::move(front_);
    rec.event_count = event_count_;
    rec.frozen_count = frozen_count_;
    rec.materialized_particles = static_cast<long>(ps_.size());
    rec.leakage_bound = leakage_bound_;
    rec.window_hi = window_hi_;
    rec.refine_seed = mix64(cfg_.master_seed, 0x7c0ffee1d2b845a9ULL);
    rec.particles.reserve(ps_.size());
    for (auto& p : ps_) {
      ParticleRecord pr;
      pr.id = p.id;
      pr.init_pos = p.init_pos;
      pr.final_pos = p.pos;
      pr.status = (p.mode == P::M::Frozen) ? ParticleStatus::Frozen
                                           : ParticleStatus::Active;
      pr.freeze_time = p.freeze_time;
      pr.min_bound = p.min_bound;
      pr.history = std::move(p.history);
      rec.particles.push_back(std::move(pr));
    }
    return rec;
  }
};

inline RunRecord simulate_1d(const SimConfig& cfg) {
  Sim1DEngine engine(cfg);
  return engine.run();
}

}  // namespace mdla

#endif  // MDLA_SIM1D_HPP
