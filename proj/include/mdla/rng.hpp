#ifndef MDLA_RNG_HPP
#define MDLA_RNG_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mdla {

// SplitMix64 step. Also used as the counter-based mixing primitive: the
// output is a high-quality 64-bit hash of the input state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Pure mixing of a seed with one word, for deriving substreams.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t word) {
  std::uint64_t s = seed ^ (word * 0xd1342543de82ef95ULL);
  return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna). Fast general-purpose generator for the
// Monte Carlo loops; seeded through SplitMix64 per the authors' advice.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_[4];
};

// Deterministic counter-based stream: value i is a pure function of
// (stream_seed, i). Used wherever reproducibility must not depend on the
// order in which sites or particles are visited.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t stream_seed) : seed_(stream_seed) {}

  std::uint64_t next() {
    std::uint64_t s = seed_ + counter_ * 0x9e3779b97f4a7c15ULL;
    ++counter_;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    return s ^ (s >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Exponential(rate) by inversion.
template <class Rng>
double exponential(Rng& rng, double rate = 1.0) {
  double u;
  do {
    u = rng.uniform();
  } while (u <= 0.0);
  return -std::log(u) / rate;
}

namespace detail {

// Poisson by unnormalized inversion (product of uniforms); exact, O(mean).
template <class Rng>
long poisson_small(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  long k = 0;
  double prod = rng.uniform();
  while (prod > limit) {
    ++k;
    prod *= rng.uniform();
  }
  return k;
}

// Hormann's PTRD transformed-rejection sampler; exact for mean >= 10.
template <class Rng>
long poisson_ptrd(Rng& rng, double mean) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<long>(kf);
    }
  }
}

// Hormann's BTRS transformed-rejection sampler for Binomial(n, p); exact,
// O(1) per draw.  Requires p <= 1/2 and n*p >= 10.  The squeeze accepts the
// bulk; the rare leftovers use an exact log-density ratio test.
template <class Rng>
long binomial_btrs(Rng& rng, long n, double p) {
  const double q = 1.0 - p;
  const double np = double(n) * p;
  const double spq = std::sqrt(np * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = np + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const double m = std::floor((double(n) + 1.0) * p);
  const double h_m = std::lgamma(m + 1.0) + std::lgamma(double(n) - m + 1.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + c);
    if (kf < 0.0 || kf > double(n)) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
    if (v <= 0.0) continue;
    if (std::log(v * alpha / (a / (us * us) + b)) <=
        h_m - std::lgamma(kf + 1.0) - std::lgamma(double(n) - kf + 1.0) +
            (kf - m) * lpq)
      return static_cast<long>(kf);
  }
}

}  // namespace detail

template <class Rng>
long poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) return detail::poisson_small(rng, mean);
  return detail::poisson_ptrd(rng, mean);
}

// Binomial(n, 1/2) by counting random bits.
template <class Rng>
long binomial_half(Rng& rng, long n) {
  long count = 0;
  while (n >= 64) {
    count += std::popcount(rng.next());
    n -= 64;
  }
  if (n > 0) {
    count += std::popcount(rng.next() >> (64 - n));
  }
  return count;
}

// Symmetric lattice displacement after n fair +-1 steps.
template <class Rng>
long symmetric_walk_step_sum(Rng& rng, long n) {
  return 2 * binomial_half(rng, n) - n;
}

// Binomial(n, p): bit counting at p = 1/2, transformed rejection when the
// mean is large, geometric waiting times (expected O(n*p) work) otherwise.
template <class Rng>
long binomial(Rng& rng, long n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0)
    throw std::invalid_argument("binomial: bad arguments");
  if (p == 0.0 || n == 0) return 0;
  if (p == 1.0) return n;
  if (p == 0.5) return binomial_half(rng, n);
  if (p > 0.5) return n - binomial(rng, n, 1.0 - p);
  if (double(n) * p >= 10.0) return detail::binomial_btrs(rng, n, p);
  const double log_q = std::log1p(-p);
  long count = 0;
  long i = -1;
  for (;;) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    i += 1 + static_cast<long>(std::floor(std::log(u) / log_q));
    if (i >= n) return count;
    ++count;
  }
}

// Skellam-distributed increment of a rate-1 continuous-time +-1 walk over
// elapsed time dt: difference of two independent Poisson(dt/2) counts.
template <class Rng>
long skellam_increment(Rng& rng, double dt) {
  return poisson(rng, 0.5 * dt) - poisson(rng, 0.5 * dt);
}

}  // namespace mdla

#endif  // MDLA_RNG_HPP
