#ifndef MDLA_FIT_HPP
#define MDLA_FIT_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mdla {

struct SeriesPoint {
  double t = 0.0;
  double v = 0.0;
};

struct FitResult {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double speed = 0.0;
  double speed_stderr = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double r_squared = 0.0;
  long excluded_nonpositive = 0;
};

namespace detail {

struct LS {
  double slope = 0.0, intercept = 0.0, slope_stderr = 0.0, r2 = 0.0;
};

inline LS least_squares(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0)
    throw std::runtime_error("fit: degenerate window (no time spread)");
  if (syy <= 0.0)
    throw std::runtime_error("fit: degenerate window (all values equal)");
  LS out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (out.intercept + out.slope * x[i]);
    ssr += r * r;
  }
  out.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  if (out.r2 < 0.0) out.r2 = 0.0;
  out.slope_stderr = n > 2 ? std::sqrt(ssr / double(n - 2) / sxx) : 0.0;
  return out;
}

}  // namespace detail

// Least-squares slope of log(value) against log(time) over the window.
// Points with value <= 0 (or t <= 0) are excluded and counted; the
// amplitude exp(intercept) is reported in the speed field.
inline FitResult fit_exponent(const std::vector<SeriesPoint>& series,
                              std::pair<double, double> window) {
  FitResult fr;
  fr.window_lo = window.first;
  fr.window_hi = window.second;
  std::vector<double> lx, ly;
  for (const auto& p : series) {
    if (p.t < window.first || p.t > window.second) continue;
    if (p.t <= 0.0 || p.v <= 0.0) {
      ++fr.excluded_nonpositive;
      continue;
    }
    lx.push_back(std::log(p.t));
    ly.push_back(std::log(p.v));
  }
  if (lx.size() < 20)
    throw std::invalid_argument("fit_exponent: fewer than 20 usable points");
  const auto ls = detail::least_squares(lx, ly);
  fr.exponent = ls.slope;
  fr.exponent_stderr = ls.slope_stderr;
  fr.speed = std::exp(ls.intercept);
  fr.r_squared = ls.r2;
  return fr;
}

// Least-squares slope of value against time over the window.
inline FitResult fit_speed(const std::vector<SeriesPoint>& series,
                           std::pair<double, double> window) {
  FitResult fr;
  fr.window_lo = window.first;
  fr.window_hi = window.second;
  std::vector<double> x, y;
  for (const auto& p : series) {
    if (p.t < window.first || p.t > window.second) continue;
    x.push_back(p.t);
    y.push_back(p.v);
  }
  if (x.size() < 20)
    throw std::invalid_argument("fit_speed: fewer than 20 usable points");
  const auto ls = detail::least_squares(x, y);
  fr.speed = ls.slope;
  fr.speed_stderr = ls.slope_stderr;
  fr.exponent = ls.slope;  // convenience alias for slope-only callers
  fr.r_squared = ls.r2;
  return fr;
}

// Across-replica mean with between-replica standard error for both the
// exponent and the speed slots.
inline FitResult pool_fits(const std::vector<FitResult>& fits) {
  if (fits.empty()) throw std::invalid_argument("pool_fits: empty input");
  FitResult out;
  out.window_lo = fits.front().window_lo;
  out.window_hi = fits.front().window_hi;
  const double n = double(fits.size());
  double se = 0, ss = 0, r2 = 0;
  for (const auto& f : fits) {
    se += f.exponent;
    ss += f.speed;
    r2 += f.r_squared;
    out.excluded_nonpositive += f.excluded_nonpositive;
  }
  out.exponent = se / n;
  out.speed = ss / n;
  out.r_squared = r2 / n;
  if (fits.size() > 1) {
    double ve = 0, vs = 0;
    for (const auto& f : fits) {
      ve += (f.exponent - out.exponent) * (f.exponent - out.exponent);
      vs += (f.speed - out.speed) * (f.speed - out.speed);
    }
    out.exponent_stderr = std::sqrt(ve / (n - 1.0) / n);
    out.speed_stderr = std::sqrt(vs / (n - 1.0) / n);
  }
  return out;
}

}  // namespace mdla

#endif  // MDLA_FIT_HPP
