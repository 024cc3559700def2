#ifndef MDLA_FRONT_PATH_HPP
#define MDLA_FRONT_PATH_HPP

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mdla {

// Piecewise-constant record of the aggregate front X_t: starts at 0, each
// jump raises the position. X is right-continuous.
struct FrontPath {
  std::vector<double> jump_times;
  std::vector<long> positions;  // position after each jump
  double horizon = 0.0;

  // X_u, right-continuous predecessor lookup.
  long position_at(double u) const {
    if (u < 0.0) return 0;
    const auto it =
        std::upper_bound(jump_times.begin(), jump_times.end(), u);
    if (it == jump_times.begin()) return 0;
    return positions[static_cast<std::size_t>(it - jump_times.begin()) - 1];
  }

  long final_position() const { return positions.empty() ? 0 : positions.back(); }
};

// Y_t(s) = X_t − X_{t−s}; +∞ for s > t.
inline double y_query(const FrontPath& path, double t, double s) {
  if (t > path.horizon) throw std::out_of_range("y_query: t beyond horizon");
  if (s < 0.0) throw std::invalid_argument("y_query: s must be >= 0");
  if (s > t) return std::numeric_limits<double>::infinity();
  return double(path.position_at(t) - path.position_at(t - s));
}

// Speed event sR(t, s, γ) = {X_{t+s} − X_t >= γ s}.
inline bool speed_event(const FrontPath& path, double t, double s, double gamma) {
  if (!(s > 0.0)) throw std::invalid_argument("speed_event: s must be > 0");
  if (t + s > path.horizon) throw std::out_of_range("speed_event: t+s beyond horizon");
  return double(path.position_at(t + s) - path.position_at(t)) >= gamma * s;
}

}  // namespace mdla

#endif  // MDLA_FRONT_PATH_HPP
