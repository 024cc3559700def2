#ifndef MDLA_WALK_LAW_HPP
#define MDLA_WALK_LAW_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mdla {

// Truncated law of an integer-valued variable, stored as a dense table on
// [support_lo, support_hi].
struct WalkLaw {
  double t = 0.0;
  long support_lo = 0;
  long support_hi = 0;
  std::vector<double> mass;
  double truncation_error = 0.0;

  double operator()(long k) const {
    if (k < support_lo || k > support_hi) return 0.0;
    return mass[static_cast<std::size_t>(k - support_lo)];
  }

  double total_mass() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
  }

  double mean() const {
    double s = 0.0;
    for (long k = support_lo; k <= support_hi; ++k) s += double(k) * (*this)(k);
    return s;
  }

  double variance() const {
    const double mu = mean();
    double s = 0.0;
    for (long k = support_lo; k <= support_hi; ++k) {
      const double d = double(k) - mu;
      s += d * d * (*this)(k);
    }
    return s;
  }

  // P[value >= k], summed small-to-large for accuracy.
  double tail_geq(long k) const {
    if (k > support_hi) return 0.0;
    double s = 0.0;
    for (long v = support_hi; v >= std::max(k, support_lo); --v) s += (*this)(v);
    return s;
  }
};

namespace detail {

// Chernoff bound for the position of the rate-1 continuous-time +-1 walk:
// P[W_t >= m] <= exp(t(cosh θ − 1) − θ m) at the optimal θ = asinh(m/t).
// Also valid for the running maximum by the standard maximal inequality
// applied to the exponential martingale.
inline double walk_chernoff(double t, double m) {
  if (m <= 0.0) return 1.0;
  if (t <= 0.0) return 0.0;
  const double x = m / t;
  const double theta = std::asinh(x);
  const double exponent = t * (std::sqrt(1.0 + x * x) - 1.0) - m * theta;
  return std::exp(exponent);
}

// Smallest integer k >= 1 with chernoff tail <= bound.
inline long walk_support_radius(double t, double bound) {
  long lo = 1, hi = 1;
  while (walk_chernoff(t, double(hi)) > bound) {
    lo = hi;
    hi *= 2;
    if (hi > (1L << 40)) throw std::runtime_error("walk law support overflow");
  }
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (walk_chernoff(t, double(mid)) <= bound)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// Scaled modified Bessel values e^{-t} I_k(t) for k = 0..kmax by Miller's
// downward recurrence, normalized with sum_{k∈Z} e^{-t} I_k(t) = 1.
inline std::vector<double> scaled_bessel_row(double t, long kmax) {
  if (t <= 0.0) {
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  // Start far enough above kmax that the contamination from the dominant
  // solution has decayed below double precision by the time we reach kmax.
  long start = std::max<long>(kmax + 30, walk_support_radius(t, 1e-280) + 30);
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  double fk1 = 0.0;           // f_{k+1}
  double fk = 1e-300;         // f_k, arbitrary tiny seed
  for (long k = start; k >= 1; --k) {
    double fk0 = fk1 + (2.0 * double(k) / t) * fk;  // f_{k-1}
    fk1 = fk;
    fk = fk0;
    if (k - 1 <= kmax) out[static_cast<std::size_t>(k - 1)] = fk;
    if (fk > 1e250) {
      fk *= 1e-250;
      fk1 *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
  }
  double total = out[0];
  for (long k = 1; k <= kmax; ++k) total += 2.0 * out[static_cast<std::size_t>(k)];
  // The omitted terms k in (kmax, start] contribute < 1e-250 relatively.
  for (auto& v : out) v /= total;
  return out;
}

inline void require_time_tol(double t, double tol, const char* who) {
  if (!std::isfinite(t) || t < 0.0)
    throw std::invalid_argument(std::string(who) + ": t must be finite and >= 0");
  if (!(tol > 0.0) || !(tol < 1.0))
    throw std::invalid_argument(std::string(who) + ": tol must be in (0,1)");
}

}  // namespace detail

// Law of the walk position W_t (difference of two independent Poisson(t/2)
// counts): P[W_t = k] = e^{-t} I_{|k|}(t). Omitted mass <= tol.
inline WalkLaw walk_pmf(double t, double tol) {
  detail::require_time_tol(t, tol, "walk_pmf");
  WalkLaw law;
  law.t = t;
  law.truncation_error = tol;
  if (t == 0.0) {
    law.support_lo = 0;
    law.support_hi = 0;
    law.mass = {1.0};
    law.truncation_error = 0.0;
    return law;
  }
  const long r = detail::walk_support_radius(t, tol / 4.0);
  auto half = detail::scaled_bessel_row(t, r);
  law.support_lo = -r;
  law.support_hi = r;
  law.mass.assign(static_cast<std::size_t>(2 * r) + 1, 0.0);
  for (long k = -r; k <= r; ++k)
    law.mass[static_cast<std::size_t>(k + r)] = half[static_cast<std::size_t>(std::labs(k))];
  return law;
}

// P[M_t >= j] for the running maximum M_t, by the reflection identity
// P[M_t >= j] = P[W_t >= j] + P[W_t >= j+1].
inline double max_tail(double t, long j, double tol = 1e-12) {
  detail::require_time_tol(t, tol, "max_tail");
  if (j < 0) throw std::invalid_argument("max_tail: j must be >= 0");
  if (j == 0) return 1.0;
  const WalkLaw law = walk_pmf(t, tol);
  return std::min(1.0, law.tail_geq(j) + law.tail_geq(j + 1));
}

// P[M_t = 0] = P[W_t = 0] + P[W_t = 1].
inline double max_zero_prob(double t, double tol = 1e-12) {
  if (!(t > 0.0)) throw std::invalid_argument("max_zero_prob: t must be > 0");
  const WalkLaw law = walk_pmf(t, tol);
  return law(0) + law(1);
}

// Law of W_t conditioned on {M_t = 0}:
// P[W_t = a | M_t = 0] = (P[W_t = a] − P[W_t = a−2]) / P[M_t = 0], a <= 0.
inline WalkLaw conditioned_endpoint(double t, double tol = 1e-12) {
  if (!(t > 0.0))
    throw std::invalid_argument("conditioned_endpoint: t must be > 0");
  const WalkLaw base = walk_pmf(t, tol);
  WalkLaw law;
  law.t = t;
  law.truncation_error = tol;
  law.support_lo = base.support_lo;
  law.support_hi = 0;
  const double norm = base(0) + base(1);
  law.mass.assign(static_cast<std::size_t>(-law.support_lo) + 1, 0.0);
  for (long k = law.support_lo; k <= 0; ++k) {
    double m = (base(k) - base(k - 2)) / norm;
    law.mass[static_cast<std::size_t>(k - law.support_lo)] = std::max(0.0, m);
  }
  return law;
}

// Positive root of f(θ) = cosh(θ) − 1 − α θ, via bisection.
// cosh(θ) − 1 evaluated as 2 sinh²(θ/2) to avoid cancellation.
inline double theta_root(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("theta_root: alpha must be in (0, 1]");
  auto f = [alpha](double theta) {
    const double sh = std::sinh(0.5 * theta);
    return 2.0 * sh * sh - alpha * theta;
  };
  double lo = alpha;   // f(α) ≈ −α²/2 < 0
  double hi = 3.0;     // f(3) > 0 for α <= 1
  if (f(lo) >= 0.0) throw std::logic_error("theta_root: bad lower bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ψ(ρ) = sup_{θ>=0} −(θρ + e^{−θ} − 1) = 1 − ρ + ρ ln ρ.
inline double psi(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::invalid_argument("psi: rho must be in (0,1)");
  return 1.0 - rho + rho * std::log(rho);
}

}  // namespace mdla

#endif  // MDLA_WALK_LAW_HPP
