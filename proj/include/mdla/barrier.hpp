#ifndef MDLA_BARRIER_HPP
#define MDLA_BARRIER_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mdla/front_path.hpp"

namespace mdla {

// Barrier family: 0 on [0, α^{−3/2}], then min{α(s − α^{−3/2}), √s · log₂ s}.
struct Barrier {
  double alpha;

  explicit Barrier(double a) : alpha(a) {
    if (!(a > 0.0)) throw std::invalid_argument("Barrier: alpha must be > 0");
  }

  double flat_end() const { return std::pow(alpha, -1.5); }

  double operator()(double s) const {
    if (s < 0.0) throw std::invalid_argument("Barrier: s must be >= 0");
    const double fe = flat_end();
    if (s <= fe) return 0.0;
    const double linear = alpha * (s - fe);
    const double cap = (s <= 1.0) ? 0.0 : std::sqrt(s) * std::log2(s);
    return std::min(linear, cap);
  }
};

inline double barrier_eval(double alpha, double s) { return Barrier(alpha)(s); }

// Per-scale record of the permissive condition Y_t(2^i) >= 10 · i · 2^{i/2}.
struct PermissiveProfile {
  struct Scale {
    int i;
    bool satisfied;
    double observed;
    double threshold;
  };
  std::vector<Scale> scales;

  bool all_satisfied() const {
    for (const auto& s : scales)
      if (!s.satisfied) return false;
    return true;
  }
};

inline double permissive_threshold(int i) {
  return 10.0 * double(i) * std::exp2(0.5 * double(i));
}

inline PermissiveProfile permissive_check(const FrontPath& path, double t,
                                          int i_min, int i_max) {
  if (t > path.horizon) throw std::out_of_range("permissive_check: t beyond horizon");
  if (i_min < 0 || i_max < i_min)
    throw std::invalid_argument("permissive_check: bad scale range");
  PermissiveProfile prof;
  for (int i = i_min; i <= i_max; ++i) {
    const double observed = y_query(path, t, std::exp2(double(i)));
    const double threshold = permissive_threshold(i);
    prof.scales.push_back({i, observed >= threshold, observed, threshold});
  }
  return prof;
}

namespace detail {

// inf_{s in [0,t] ∪ (t,∞)} (Y_t(s) − y_α(s)) evaluated exactly.  Y_t is a
// nondecreasing step function of s whose value drops approaching each jump
// offset from below; since y_α is continuous and nondecreasing, the infimum
// is attained at s ∈ {0, t} or at a jump offset s = t − τ_i with Y evaluated
// in the left-limit sense X_t − X_{τ_i}.
inline double barrier_gap_exact(const FrontPath& path, double t, double alpha) {
  const Barrier y(alpha);
  const long xt = path.position_at(t);
  double gap = 0.0;  // s = 0 candidate: Y=0, y=0
  for (std::size_t i = 0; i < path.jump_times.size(); ++i) {
    const double tau = path.jump_times[i];
    if (tau > t) break;
    const double s = t - tau;
    const double cand = double(xt - path.positions[i]) - y(s);
    if (cand < gap) gap = cand;
  }
  // s = t candidate (offset of time 0, where X = 0).
  if (t > 0.0) gap = std::min(gap, double(xt) - y(t));
  return gap;
}

}  // namespace detail

inline double barrier_gap(const FrontPath& path, double t, double alpha) {
  if (t > path.horizon) throw std::out_of_range("barrier_gap: t beyond horizon");
  return detail::barrier_gap_exact(path, t, alpha);
}

// Grid-taking variant: the grid must contain every jump offset (and 0 and t)
// or the infimum over it would not be exact.
inline double barrier_gap(const FrontPath& path, double t, double alpha,
                          const std::vector<double>& s_grid) {
  if (t > path.horizon) throw std::out_of_range("barrier_gap: t beyond horizon");
  auto on_grid = [&](double s) {
    for (double g : s_grid)
      if (g == s) return true;
    return false;
  };
  if (!on_grid(0.0) || (t > 0.0 && !on_grid(t)))
    throw std::invalid_argument("barrier_gap: s_grid must contain 0 and t");
  for (double tau : path.jump_times) {
    if (tau > t) break;
    if (!on_grid(t - tau))
      throw std::invalid_argument(
          "barrier_gap: s_grid misses a jump offset; infimum would be inexact");
  }
  return detail::barrier_gap_exact(path, t, alpha);
}

}  // namespace mdla

#endif  // MDLA_BARRIER_HPP
