#ifndef MDLA_POISSON_FIELD_HPP
#define MDLA_POISSON_FIELD_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdla/rng.hpp"

namespace mdla {

// Deterministic mean-K Poisson occupancy field on Z^d.  The random state at
// a site is a pure function of (master_seed, site coordinates, stream tag),
// so any window can be materialized in any order with identical results.
//
// When thinning_reference > 0 the field first draws a Poisson(thinning_
// reference) count at each site and then keeps each particle independently
// with probability k_density / thinning_reference, using one dedicated
// uniform per particle slot.  For a fixed reference density the kept sets
// are nested across k_density values, which yields the pathwise coupling
// used by the monotonicity checks.
struct FieldConfig {
  double k_density = 1.0;
  std::uint64_t master_seed = 0;
  int dimension = 1;
  double thinning_reference = 0.0;  // 0 disables thinning
};

struct SiteOccupancy {
  std::vector<long> site;
  long count = 0;
  std::vector<std::uint64_t> particle_ids;
};

namespace detail {

constexpr std::uint64_t kSiteTag = 0x9d2c5680a76b14f3ULL;
constexpr std::uint64_t kIdTag = 0x41c64e6da3bc0074ULL;

inline std::uint64_t site_stream_seed(const FieldConfig& cfg, const long* site,
                                      int d) {
  std::uint64_t h = mix64(cfg.master_seed, kSiteTag);
  for (int i = 0; i < d; ++i)
    h = mix64(h, static_cast<std::uint64_t>(site[i]));
  return h;
}

// Poisson(mean) by CDF inversion from a single uniform.
inline long poisson_inverse_cdf(double u, double mean) {
  double term = std::exp(-mean);
  double cdf = term;
  long k = 0;
  while (u >= cdf) {
    ++k;
    term *= mean / double(k);
    cdf += term;
    if (k > 2000000) throw std::runtime_error("poisson_inverse_cdf: runaway");
  }
  return k;
}

}  // namespace detail

inline std::uint64_t particle_id(const FieldConfig& cfg, const long* site, int d,
                                 long index) {
  std::uint64_t h = mix64(cfg.master_seed, detail::kIdTag);
  for (int i = 0; i < d; ++i) h = mix64(h, static_cast<std::uint64_t>(site[i]));
  return mix64(h, static_cast<std::uint64_t>(index));
}

inline SiteOccupancy site_count(const FieldConfig& cfg, const std::vector<long>& site) {
  if (cfg.k_density < 0.0)
    throw std::invalid_argument("site_count: k_density must be >= 0");
  if (static_cast<int>(site.size()) != cfg.dimension)
    throw std::invalid_argument("site_count: site dimension mismatch");
  if (cfg.thinning_reference > 0.0 && cfg.k_density > cfg.thinning_reference)
    throw std::invalid_argument("site_count: k_density exceeds thinning reference");
  SiteOccupancy occ;
  occ.site = site;
  CounterStream stream(detail::site_stream_seed(cfg, site.data(), cfg.dimension));
  if (cfg.thinning_reference > 0.0) {
    const long base = detail::poisson_inverse_cdf(stream.uniform(), cfg.thinning_reference);
    const double keep = cfg.k_density / cfg.thinning_reference;
    for (long i = 0; i < base; ++i) {
      if (stream.uniform() < keep) {
        occ.particle_ids.push_back(particle_id(cfg, site.data(), cfg.dimension, i));
      }
    }
  } else {
    const long c = detail::poisson_inverse_cdf(stream.uniform(), cfg.k_density);
    for (long i = 0; i < c; ++i)
      occ.particle_ids.push_back(particle_id(cfg, site.data(), cfg.dimension, i));
  }
  occ.count = static_cast<long>(occ.particle_ids.size());
  return occ;
}

// Count-only variant of site_count; identical draws, no id generation.
// Hot path for bulk materialization, so argument checks are skipped.
inline long site_count_only(const FieldConfig& cfg, const long* site, int d) {
  CounterStream stream(detail::site_stream_seed(cfg, site, d));
  if (cfg.thinning_reference > 0.0) {
    const long base =
        detail::poisson_inverse_cdf(stream.uniform(), cfg.thinning_reference);
    const double keep = cfg.k_density / cfg.thinning_reference;
    long c = 0;
    for (long i = 0; i < base; ++i)
      if (stream.uniform() < keep) ++c;
    return c;
  }
  return detail::poisson_inverse_cdf(stream.uniform(), cfg.k_density);
}

// Occupancies for every site of the box [lo, hi], in row-major order with
// the last coordinate fastest.
inline std::vector<SiteOccupancy> materialize_window(
    const FieldConfig& cfg, const std::vector<long>& lo,
    const std::vector<long>& hi, std::size_t site_budget = std::size_t(1) << 27) {
  const int d = cfg.dimension;
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
    throw std::invalid_argument("materialize_window: box dimension mismatch");
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (lo[i] > hi[i]) return {};  // empty box
    const std::size_t extent = static_cast<std::size_t>(hi[i] - lo[i] + 1);
    if (extent != 0 && total > site_budget / extent)
      throw std::runtime_error("materialize_window: site budget exceeded");
    total *= extent;
  }
  if (total > site_budget)
    throw std::runtime_error("materialize_window: site budget exceeded");
  std::vector<SiteOccupancy> out;
  out.reserve(total);
  std::vector<long> site = lo;
  for (;;) {
    out.push_back(site_count(cfg, site));
    int i = d - 1;
    while (i >= 0) {
      if (++site[i] <= hi[i]) break;
      site[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace mdla

#endif  // MDLA_POISSON_FIELD_HPP
