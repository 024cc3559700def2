#ifndef MDLA_SIMHD_HPP
#define MDLA_SIMHD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mdla/front_path.hpp"
#include "mdla/poisson_field.hpp"
#include "mdla/rng.hpp"
#include "mdla/sim1d.hpp"
#include "mdla/walk_law.hpp"

#ifdef MDLA_PROF_TIME
#include <ctime>
extern long g_ns[8];
extern long g_live_members, g_live_ind;
struct ProfTimer {
  int slot;
  timespec a;
  explicit ProfTimer(int s) : slot(s) { clock_gettime(CLOCK_MONOTONIC, &a); }
  ~ProfTimer() {
    timespec b;
    clock_gettime(CLOCK_MONOTONIC, &b);
    g_ns[slot] +=
        (b.tv_sec - a.tv_sec) * 1000000000L + (b.tv_nsec - a.tv_nsec);
  }
};
#define MDLA_PROF_T(s) ProfTimer prof_timer_inst(s)
#else
#define MDLA_PROF_T(s) \
  do {                 \
  } while (0)
#endif

#ifdef MDLA_PROF
extern long g_reg_src[4];
extern long g_reg_dist[40];
extern long g_cohort_moves, g_cohort_reviews, g_wakes;
#define MDLA_PROF_HOOK(x) \
  do {                    \
    x;                    \
  } while (0)
#else
#define MDLA_PROF_HOOK(x) \
  do {                    \
  } while (0)
#endif

namespace mdla {

namespace hddetail {

constexpr int kMaxDim = 4;
constexpr long kCoordLimit = 32000;  // packed int16 coordinates

inline std::uint64_t pack(const std::array<std::int16_t, 4>& c) {
  std::uint64_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= std::uint64_t(std::uint16_t(c[i])) << (16 * i);
  return v;
}

inline std::array<std::int16_t, 4> unpack(std::uint64_t v) {
  std::array<std::int16_t, 4> c{};
  for (int i = 0; i < 4; ++i)
    c[i] = std::int16_t(std::uint16_t(v >> (16 * i)));
  return c;
}

// Open-addressing hash map (u64 keys, small trivially-copyable values) with
// linear probing and backward-shift deletion.  The engine's hot paths hammer
// position-keyed maps millions of times per second; a contiguous table keeps
// each operation to one or two cache lines.  V must expose a sentinel value
// via V::empty() marking unused slots.
template <class V>
class FlatMap {
 public:
  struct Slot {
    std::uint64_t key;
    V val;
  };

  FlatMap() { rehash(1024); }

  static std::uint64_t hash(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 29;
    return k;
  }

  V* find(std::uint64_t key) {
    std::size_t i = std::size_t(hash(key)) & mask_;
    for (;;) {
      Slot& s = slots_[i];
      if (s.val.is_empty()) return nullptr;
      if (s.key == key) return &s.val;
      i = (i + 1) & mask_;
    }
  }

  // Returns (value slot, inserted flag).  The slot pointer is valid until
  // the next insertion or erase.
  std::pair<V*, bool> try_emplace(std::uint64_t key, const V& v) {
    if ((size_ + 1) * 2 > mask_ + 1) rehash((mask_ + 1) * 2);
    std::size_t i = std::size_t(hash(key)) & mask_;
    for (;;) {
      Slot& s = slots_[i];
      if (s.val.is_empty()) {
        s.key = key;
        s.val = v;
        ++size_;
        return {&s.val, true};
      }
      if (s.key == key) return {&s.val, false};
      i = (i + 1) & mask_;
    }
  }

  void erase(std::uint64_t key) {
    std::size_t i = std::size_t(hash(key)) & mask_;
    for (;;) {
      Slot& s = slots_[i];
      if (s.val.is_empty()) return;
      if (s.key == key) break;
      i = (i + 1) & mask_;
    }
    --size_;
    std::size_t j = i;
    for (;;) {
      j = (j + 1) & mask_;
      if (slots_[j].val.is_empty()) break;
      const std::size_t h = std::size_t(hash(slots_[j].key)) & mask_;
      // Shift j back into i unless its probe start lies inside (i, j].
      if (((j - h) & mask_) >= ((j - i) & mask_)) {
        slots_[i] = slots_[j];
        i = j;
      }
    }
    slots_[i].val = V::empty();
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return slots_.capacity(); }

  void clear() {
    for (auto& s : slots_) s.val = V::empty();
    size_ = 0;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& s : slots_)
      if (!s.val.is_empty()) fn(s.key, s.val);
  }

 private:
  void rehash(std::size_t cap) {
    std::vector<Slot> old;
    old.swap(slots_);
    slots_.assign(cap, Slot{0, V::empty()});
    mask_ = cap - 1;
    size_ = 0;
    for (const auto& s : old) {
      if (s.val.is_empty()) continue;
      std::size_t i = std::size_t(hash(s.key)) & mask_;
      while (!slots_[i].val.is_empty()) i = (i + 1) & mask_;
      slots_[i] = s;
      ++size_;
    }
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace hddetail

// Final aggregate, stored as the engine's near-field byte grid over the
// simulated extent: the low 7 bits of each byte hold the L1 distance to the
// aggregate clipped at the near-field cap, so a site is occupied exactly
// when they read zero (the top bit is engine bookkeeping).
struct AggregateSet {
  int dimension = 2;
  std::array<long, 4> lo{}, hi{};
  std::array<long, 4> stride{};
  std::vector<std::uint8_t> grid;
  long occupied_count = 0;
  std::array<long, 4> rightmost{};  // maximal first coordinate, earliest tie
  long rightmost_first_coord = 0;

  bool contains(const std::vector<long>& site) const {
    std::size_t idx = 0;
    for (int i = 0; i < dimension; ++i) {
      if (site[i] < lo[i] || site[i] > hi[i]) return false;
      idx += std::size_t(site[i] - lo[i]) * std::size_t(stride[i]);
    }
    return (grid[idx] & 0x7f) == 0;
  }
  long size() const { return occupied_count; }
};

struct DiameterPoint {
  double time = 0.0;
  long diameter = 0;
  long x = 0;
};

struct HDRunRecord {
  SimConfig config;
  FrontPath front;  // first coordinate of the rightmost aggregate site
  std::vector<DiameterPoint> diameter_series;
  AggregateSet aggregate;
  long event_count = 0;
  long frozen_count = 0;
  long materialized_particles = 0;
  long resample_count = 0;  // placement endpoints re-drawn off the aggregate
  double leakage_bound = 0.0;
  std::vector<ParticleRecord> particles;  // first-coord histories when recorded
  std::uint64_t refine_seed = 0;
};

// Multi-dimensional engine.  Two regimes:
//
//  * full detail ("tracked"): every particle carries an id and jumps one step
//    at a time, with exact per-site occupancy and freeze times.  Selected by
//    record_particles or lazy = false; meant for small validation runs.
//
//  * mass: anonymous particles.  Flat byte grids maintain the exact L1
//    distance to the aggregate up to a small cap and a coarse per-cell
//    Chebyshev distance beyond it; far particles are pooled into "cohorts"
//    that share one block schedule and cost a few bytes each.  Cells of the
//    occupancy field materialize lazily when the coarse distance drops to
//    the certified travel margin, so memory tracks the active band around
//    the aggregate surface instead of its volume.
class SimHDEngine {
 public:
  explicit SimHDEngine(const SimConfig& cfg) : cfg_(cfg), d_(cfg.dimension) {
    if (d_ < 2 || d_ > hddetail::kMaxDim)
      throw std::invalid_argument("simulate_d: dimension must be in [2, 4]");
    if (!(cfg.horizon >= 0.0))
      throw std::invalid_argument("simulate_d: horizon must be >= 0");
    if (!(cfg.leakage_tol > 0.0) || !(cfg.leakage_tol < 1.0))
      throw std::invalid_argument("simulate_d: leakage_tol must be in (0,1)");
    if (cfg.k_density < 0.0)
      throw std::invalid_argument("simulate_d: k_density must be >= 0");
    rng_ = Xoshiro256(mix64(cfg.master_seed, 0x6a09e667f3bcc909ULL));
  }

  HDRunRecord run() {
    setup();
    loop();
    return finalize();
  }

 private:
  static constexpr int kCell = 16;  // coarse grid cell edge
  static constexpr int kCellShift = 4;
  static constexpr int kBand = 16;  // exact near-field distance cap
  static constexpr long kDormantMin = 8;
  static constexpr long kFarDist = 16;  // cohort eligibility threshold
  static constexpr std::uint8_t kUnknownNear = 0x7f;  // distance > kBand
  static constexpr std::uint8_t kUnknownCell = 0xff;
  static constexpr std::uint32_t kCohortBit = 0x80000000u;
  static constexpr long kMaxExtentSites = 1500000000L;

  using C4 = std::array<std::int16_t, 4>;

  struct P {
    C4 pos{};
    double t_ref = 0.0, t_end = 0.0;
    std::uint32_t n = 0;  // dormant: jumps in block; cond: jumps remaining
    std::uint32_t epoch = 0;
    enum class M : std::uint8_t { Free, Cond, Dormant, Frozen } mode = M::Free;
  };

  // Sidecar kept only under record_particles.
  struct Rec {
    std::uint64_t id = 0;
    long init_pos = 0;
    long min_bound = 0;
    double freeze_time = -1.0;
    std::vector<TrajectorySegment> history;
  };

  // A pool of far particles inside one coarse cell sharing one block window
  // ending at t_end.  All members certify against the cell distance at
  // their own join time, so the cohort needs only a few wake watches on its
  // cell; members cost a position, a jump count and a join time each.
  struct Cohort {
    double t_end = 0.0;
    std::uint64_t key = 0;  // packed cell, for the live-cohort index
    std::uint32_t gen = 0;
    std::int32_t max_req = 0;  // strongest armed watch requirement
    std::vector<std::int16_t> xy;  // d coordinates per member
    std::vector<std::uint16_t> n;
    std::vector<double> t0;
    // Parked walkers in compact form: a packed in-cell offset and a park
    // time on the 1/8 s grid.  Most of a long run's footprint is parked
    // walkers, so these four bytes per member matter.
    std::vector<std::uint16_t> apos;
    std::vector<std::uint16_t> at0;
  };

  // push_back with a 12.5% growth cap.  Archive vectors are append-mostly
  // and huge; doubling would pin up to 2x their size in dead capacity.
  template <class V>
  static void append_tight(V& v, typename V::value_type x) {
    if (v.size() == v.capacity()) v.reserve(v.size() + v.size() / 8 + 16);
    v.push_back(x);
  }

  struct Ev {
    double t;
    std::uint32_t i;  // kCohortBit set: cohort index
    std::uint32_t epoch;
    bool operator>(const Ev& o) const { return t > o.t; }
  };

  // Two-level calendar queue.  Near-future events land in a fine ring of
  // small buckets (the current bucket is sorted once when entered; rare
  // pushes back into it go through a small side heap), farther ones in a
  // coarse ring that is scattered into the fine ring as time advances, and
  // anything beyond the coarse horizon falls back to a heap.  Pushes are
  // amortized O(1) and pops touch only small, hot buffers, which is what
  // the simulation loop needs at ~1e9 events per run.
  class CalQueue {
   public:
    bool empty() const { return size_ == 0; }

    void push(const Ev& e) {
      ++size_;
      const double off = e.t - base_;
      if (off < kFineW) {
        side_.push_back(e);
        std::push_heap(side_.begin(), side_.end(), std::greater<Ev>{});
        return;
      }
      if (off < double(kNF) * kFineW) {
        const long k = std::max(0L, long(off * kInvFineW));
        fine_[(fcur_ + std::size_t(k)) & (kNF - 1)].push_back(e);
        return;
      }
      const double coff = e.t - cbase_;
      if (coff < double(kNC) * kCoarseW) {
        const long k = std::max(0L, long(coff * kInvCoarseW));
        coarse_[(ccur_ + std::size_t(k)) & (kNC - 1)].push_back(e);
        return;
      }
      over_.push(e);
    }

    Ev pop() {
      while (pos_ == cur_.size() && side_.empty()) advance();
      --size_;
      if (!side_.empty() &&
          (pos_ == cur_.size() || side_.front().t < cur_[pos_].t)) {
        std::pop_heap(side_.begin(), side_.end(), std::greater<Ev>{});
        const Ev e = side_.back();
        side_.pop_back();
        return e;
      }
      return cur_[pos_++];
    }

   private:
    static constexpr std::size_t kNF = 1024, kNC = 4096;
    static constexpr double kFineW = 1.0 / 256.0;
    static constexpr double kInvFineW = 256.0;
    static constexpr double kCoarseW = double(kNF) * kFineW;  // 4
    static constexpr double kInvCoarseW = 1.0 / kCoarseW;

    void advance() {
      fcur_ = (fcur_ + 1) & (kNF - 1);
      base_ += kFineW;
      cur_.swap(fine_[fcur_]);
      // Keep modest buffers for reuse; burst peaks (freeze cascades) would
      // otherwise pin their capacity in every ring slot forever.
      if (fine_[fcur_].capacity() > 4096)
        fine_[fcur_] = {};
      else
        fine_[fcur_].clear();
      pos_ = 0;
      if (fcur_ == 0) refill_coarse();
      while (!over_.empty() && over_.top().t < base_ + kFineW) {
        cur_.push_back(over_.top());
        over_.pop();
      }
      std::sort(cur_.begin(), cur_.end(),
                [](const Ev& a, const Ev& b) { return a.t < b.t; });
    }

    void refill_coarse() {
      // The fine ring wrapped: its window moved up one coarse bucket.
      ccur_ = (ccur_ + 1) & (kNC - 1);
      cbase_ += kCoarseW;
      auto& b = coarse_[ccur_];
      for (const Ev& e : b) {
        const long k =
            std::max(0L, long((e.t - base_) * kInvFineW));
        if (k == 0)
          cur_.push_back(e);
        else
          fine_[(fcur_ + std::size_t(std::min(k, long(kNF - 1)))) & (kNF - 1)]
              .push_back(e);
      }
      // Emptied once per coarse window; retaining peak capacity across all
      // 4096 buckets costs far more than the occasional regrow.
      b = {};
    }

   public:
    std::size_t capacity_events() const {
      std::size_t c = cur_.capacity() + side_.capacity() + over_.size();
      for (const auto& v : fine_) c += v.capacity();
      for (const auto& v : coarse_) c += v.capacity();
      return c;
    }

#ifdef MDLA_PROF_MEM
    void debug_breakdown() const {
      std::size_t f = 0, co = 0, fmax = 0, cmax = 0;
      for (const auto& v : fine_) {
        f += v.capacity();
        fmax = std::max(fmax, v.capacity());
      }
      for (const auto& v : coarse_) {
        co += v.capacity();
        cmax = std::max(cmax, v.capacity());
      }
      std::fprintf(stderr,
                   "evq cur=%zu side=%zu fine=%zu(max %zu) coarse=%zu(max %zu) "
                   "over=%zu size=%zu\n",
                   cur_.capacity(), side_.capacity(), f, fmax, co, cmax,
                   over_.size(), size_);
    }
#endif

   private:
    double base_ = 0.0;   // fine window start (current bucket)
    double cbase_ = 0.0;  // coarse ring start
    std::size_t fcur_ = 0, ccur_ = 0, size_ = 0, pos_ = 0;
    std::vector<Ev> cur_;
    std::vector<Ev> side_;
    std::array<std::vector<Ev>, kNF> fine_;
    std::array<std::vector<Ev>, kNC> coarse_;
    std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> over_;
  };

  // Watch registrations live in one shared node pool; each watched key maps
  // to the head of a singly linked list of nodes.
  struct WatchNode {
    std::int32_t required;  // wake once the watched distance drops below this
    std::uint32_t id;       // kCohortBit set: cohort index
    std::uint32_t epoch;
    std::uint32_t next;
  };
  static constexpr std::uint32_t kNilNode = 0xffffffffu;

  // List head plus the largest requirement in the list, so a value drop
  // that wakes nobody is a single lookup.  maxreq may run stale high when
  // nodes die; the scan below then refreshes it.
  struct WHead {
    std::uint32_t head;
    std::int32_t maxreq;
    static WHead empty() { return {kNilNode, 0}; }
    bool is_empty() const { return head == kNilNode; }
  };

  struct CellRef {
    std::uint32_t ci;
    static CellRef empty() { return {0xffffffffu}; }
    bool is_empty() const { return ci == 0xffffffffu; }
  };

  using Buckets = hddetail::FlatMap<WHead>;
  using CellMap = hddetail::FlatMap<CellRef>;

  SimConfig cfg_;
  int d_;
  bool tracked_ = false;
  Xoshiro256 rng_{0};
  FieldConfig fc_;

  long margin_ = 0;   // certified travel buffer (sites)
  long mat_req_ = 0;  // cell distance at which a cell materializes
  long vmax_ = 0;     // coarse distance propagation cap
  double chern_target_ = 0.0;  // per-particle crossing budget
  long arch_req_ = 0;          // cell distance beyond which walkers park
  double arch_update_t_ = 0.0;

  // Flat grids over the site extent [lo_, hi_] (boundaries cell-aligned).
  std::array<long, 4> lo_{}, hi_{}, stride_{};
  std::array<long, 4> clo_{}, chi_{}, cstride_{};
  std::vector<std::uint8_t> near_;    // L1 distance <= kBand; 0 == aggregate
  std::vector<std::uint8_t> thresh_;  // per-site watch level: wake below it
  std::vector<std::uint8_t> coarse_;  // cell Chebyshev distance, capped
  std::vector<std::uint8_t> cthresh_; // per-cell watch level: wake below it
  std::vector<std::uint8_t> mat_;     // cell materialized flag

  std::vector<P> ps_;
  std::vector<Rec> recs_;
  std::vector<std::uint32_t> free_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> site_;
  std::vector<Cohort> cohorts_;
  std::vector<std::uint32_t> cohort_free_;
  Buckets near_buck_;
  Buckets coarse_buck_;
  std::vector<WatchNode> wpool_;
  std::vector<std::uint32_t> wfree_;
  CalQueue evq_;

  FrontPath front_;
  std::vector<DiameterPoint> diam_series_;
  std::array<long, 4> bb_lo_{}, bb_hi_{};  // aggregate bounding box
  std::array<long, 4> rightmost_{};
  long x_ = 0;
  long diam_ = 0;
  long occupied_count_ = 0;
  long event_count_ = 0;
  long frozen_count_ = 0;
  long materialized_count_ = 0;
  long resample_count_ = 0;
  double leakage_bound_ = 0.0;

  CellMap cell_cohort_;  // live only
  CellMap arch_cell_;

  // Reused scratch buffers.
  std::vector<std::uint64_t> nq_, cq_, matq_;
  std::vector<std::int16_t> rxy_;
  std::vector<std::uint16_t> rn_;
  std::vector<double> rt0_;
  std::vector<std::int16_t> axy_;
  std::vector<double> at0_;
  std::vector<std::uint16_t> aoff_, atq_;

  // Compact archive records index a 1/8 s grid with 16 bits, which covers
  // horizons up to ~8100 s; beyond that every record stays wide.
  bool arch_compact_ = false;

  // ---- geometry --------------------------------------------------------

  static std::int16_t cell_of(std::int16_t v) {
    return std::int16_t(v >> kCellShift);  // floor division by kCell
  }

  C4 cell_of(const C4& p) const {
    C4 c{};
    for (int i = 0; i < d_; ++i) c[i] = cell_of(p[i]);
    return c;
  }

  bool in_extent(const C4& p) const {
    for (int i = 0; i < d_; ++i)
      if (long(p[i]) < lo_[i] || long(p[i]) > hi_[i]) return false;
    return true;
  }

  bool cell_in_extent(const C4& c) const {
    for (int i = 0; i < d_; ++i)
      if (long(c[i]) < clo_[i] || long(c[i]) > chi_[i]) return false;
    return true;
  }

  std::size_t sidx(const C4& p) const {
    std::size_t idx = 0;
    for (int i = 0; i < d_; ++i)
      idx += std::size_t(long(p[i]) - lo_[i]) * std::size_t(stride_[i]);
    return idx;
  }

  std::size_t cidx(const C4& c) const {
    std::size_t idx = 0;
    for (int i = 0; i < d_; ++i)
      idx += std::size_t(long(c[i]) - clo_[i]) * std::size_t(cstride_[i]);
    return idx;
  }

  bool on_agg(const C4& p) const {
    return in_extent(p) && near_[sidx(p)] == 0;
  }

  long bbox_l1(const C4& p) const {
    long s = 0;
    for (int i = 0; i < d_; ++i) {
      const long v = p[i];
      if (v < bb_lo_[i])
        s += bb_lo_[i] - v;
      else if (v > bb_hi_[i])
        s += v - bb_hi_[i];
    }
    return s;
  }

  double uni() { return rng_.uniform(); }

  double expo(double rate) {
    double u;
    do {
      u = uni();
    } while (u <= 0.0);
    return -std::log(u) / rate;
  }

  static std::int16_t checked(long v) {
    if (v < -hddetail::kCoordLimit || v > hddetail::kCoordLimit)
      throw std::runtime_error("simulate_d: coordinate out of packed range");
    return std::int16_t(v);
  }

  void check_range(const C4& p) const {
    for (int i = 0; i < d_; ++i)
      if (std::abs(long(p[i])) > hddetail::kCoordLimit)
        throw std::runtime_error("simulate_d: coordinate out of packed range");
  }

  // ---- extent management -----------------------------------------------

  void apply_extent(const std::array<long, 4>& nlo,
                    const std::array<long, 4>& nhi, bool copy_old) {
    std::array<long, 4> nstride{}, nclo{}, nchi{}, ncstride{};
    double dtotal = 1.0;
    for (int i = 0; i < d_; ++i) {
      nclo[i] = nlo[i] >> kCellShift;
      nchi[i] = nhi[i] >> kCellShift;
      dtotal *= double(nhi[i] - nlo[i] + 1);
    }
    if (dtotal > double(kMaxExtentSites))
      throw std::runtime_error(
          "simulate_d: grid extent needed for leakage_tol exceeds budget");
    long s = 1, cs = 1;
    for (int i = d_ - 1; i >= 0; --i) {
      nstride[i] = s;
      s *= nhi[i] - nlo[i] + 1;
      ncstride[i] = cs;
      cs *= nchi[i] - nclo[i] + 1;
    }
    std::vector<std::uint8_t> nnear(std::size_t(s), kUnknownNear);
    std::vector<std::uint8_t> nthresh(std::size_t(s), 0);
    std::vector<std::uint8_t> ncoarse(std::size_t(cs), kUnknownCell);
    std::vector<std::uint8_t> ncthresh(std::size_t(cs), 0);
    std::vector<std::uint8_t> nmat(std::size_t(cs), 0);
    if (copy_old) {
      copy_grid(near_, lo_, hi_, stride_, nnear, nlo, nstride);
      copy_grid(thresh_, lo_, hi_, stride_, nthresh, nlo, nstride);
      copy_grid(coarse_, clo_, chi_, cstride_, ncoarse, nclo, ncstride);
      copy_grid(cthresh_, clo_, chi_, cstride_, ncthresh, nclo, ncstride);
      copy_grid(mat_, clo_, chi_, cstride_, nmat, nclo, ncstride);
      if (!near_buck_.empty()) {
        // Near watches are keyed by flat site index; remap them into the
        // new geometry (the node lists themselves carry no keys).
        Buckets nb;
        near_buck_.for_each([&](std::uint64_t k, const WHead& h) {
          std::size_t rem = std::size_t(k);
          std::size_t nidx = 0;
          for (int i = 0; i < d_; ++i) {
            const long c = long(rem / std::size_t(stride_[i]));
            rem %= std::size_t(stride_[i]);
            nidx += std::size_t(lo_[i] + c - nlo[i]) * std::size_t(nstride[i]);
          }
          nb.try_emplace(nidx, h);
        });
        near_buck_ = std::move(nb);
      }
    }
    near_.swap(nnear);
    thresh_.swap(nthresh);
    coarse_.swap(ncoarse);
    cthresh_.swap(ncthresh);
    mat_.swap(nmat);
    lo_ = nlo;
    hi_ = nhi;
    stride_ = nstride;
    clo_ = nclo;
    chi_ = nchi;
    cstride_ = ncstride;
  }

  void copy_grid(const std::vector<std::uint8_t>& src,
                 const std::array<long, 4>& slo, const std::array<long, 4>& shi,
                 const std::array<long, 4>& sstride,
                 std::vector<std::uint8_t>& dst, const std::array<long, 4>& dlo,
                 const std::array<long, 4>& dstride) const {
    const int last = d_ - 1;
    const std::size_t row = std::size_t(shi[last] - slo[last] + 1);
    std::array<long, 4> c{};
    for (int i = 0; i < last; ++i) c[i] = slo[i];
    for (;;) {
      std::size_t so = 0, dof = 0;
      for (int i = 0; i < last; ++i) {
        so += std::size_t(c[i] - slo[i]) * std::size_t(sstride[i]);
        dof += std::size_t(c[i] - dlo[i]) * std::size_t(dstride[i]);
      }
      dof += std::size_t(slo[last] - dlo[last]);
      std::memcpy(dst.data() + dof, src.data() + so, row);
      int i = last - 1;
      while (i >= 0) {
        if (++c[i] <= shi[i]) break;
        c[i] = slo[i];
        --i;
      }
      if (i < 0) break;
    }
  }

  void ensure_extent() {
    bool need = false;
    for (int i = 0; i < d_; ++i)
      if (bb_lo_[i] - (margin_ + 64) < lo_[i] ||
          bb_hi_[i] + (margin_ + 64) > hi_[i])
        need = true;
    if (!need) return;
    std::array<long, 4> nlo = lo_, nhi = hi_;
    for (int i = 0; i < d_; ++i) {
      const long span = hi_[i] - lo_[i] + 1;
      const long pad = margin_ + std::max(256L, span / 8);
      nlo[i] = std::min(nlo[i], ((bb_lo_[i] - pad) >> kCellShift) << kCellShift);
      nhi[i] =
          std::max(nhi[i], (((bb_hi_[i] + pad) >> kCellShift) + 1) * kCell - 1);
    }
    apply_extent(nlo, nhi, /*copy_old=*/true);
  }

  // ---- distance bookkeeping -------------------------------------------

  // Certified lower bound on the L1 distance from p to the aggregate,
  // together with the structure able to watch it.  kind 0: outside the grid
  // extent, where the untouched-buffer invariant keeps the aggregate at
  // least margin_ away (nothing to watch).  kind 1: near-field grid, keyed
  // by flat site index (exact when present; absence certifies > kBand, and
  // the first in-band assignment still fires the watch).  kind 2: coarse
  // cell distance, bound (k-1)*kCell, keyed by packed cell coordinates; an
  // unknown cell certifies vmax_*kCell and its watch fires when the value
  // first propagates in below the requirement.
  struct Reach {
    long dist = 0;
    int kind = 0;
    std::uint64_t key = 0;
  };

  Reach reach_of(const C4& p) const {
    if (!in_extent(p)) return {std::max(bbox_l1(p), margin_), 0, 0};
    const std::size_t si = sidx(p);
    const int nv = near_[si];
    if (nv != kUnknownNear) return {long(nv), 1, std::uint64_t(si)};
    const C4 c = cell_of(p);
    const std::uint8_t cv = coarse_[cidx(c)];
    const long cd =
        cv == kUnknownCell ? vmax_ * kCell : (long(cv) - 1) * kCell;
    if (cd > kBand + 1) return {cd, 2, hddetail::pack(c)};
    return {kBand + 1, 1, std::uint64_t(si)};
  }

  static std::int32_t cell_req(long n) {
    return std::int32_t((n + 2 + kCell - 1) / kCell + 1);
  }

  void bucket_push(Buckets& b, std::uint64_t key, std::int32_t required,
                   std::uint32_t i, std::uint32_t epoch) {
    std::uint32_t nd;
    if (!wfree_.empty()) {
      nd = wfree_.back();
      wfree_.pop_back();
    } else {
      nd = std::uint32_t(wpool_.size());
      wpool_.emplace_back();
    }
    const auto [vp, ins] = b.try_emplace(key, WHead{nd, required});
    WatchNode& w = wpool_[nd];
    w.required = required;
    w.id = i;
    w.epoch = epoch;
    if (ins) {
      w.next = kNilNode;
    } else {
      w.next = vp->head;
      vp->head = nd;
      vp->maxreq = std::max(vp->maxreq, required);
    }
  }

  void coarse_watch_push(std::uint64_t ck, std::int32_t required,
                         std::uint32_t id, std::uint32_t epoch) {
    std::uint8_t& th = cthresh_[cidx(hddetail::unpack(ck))];
    th = std::uint8_t(
        std::min<std::int32_t>(std::max<std::int32_t>(th, required), 255));
    bucket_push(coarse_buck_, ck, required, id, epoch);
  }

  // Wake every registered watcher whose requirement the new value violates,
  // dropping stale nodes along the way.  The list is detached first: wake
  // handlers never re-trigger (they only move and reschedule walkers), but
  // they may register fresh watches on the same key, which land in a new
  // list that the surviving nodes are spliced back onto.
  void bucket_trigger(Buckets& b, std::uint64_t key, std::int32_t new_val,
                      double t, std::uint8_t* th) {
    MDLA_PROF_T(5);
    std::uint32_t keep = kNilNode;
    std::uint32_t keep_tail = kNilNode;
    std::int32_t keep_max = 0;
    *th = 0;
    WHead* vp = b.find(key);
    if (vp) {
      if (vp->maxreq <= new_val) {  // nobody to wake
        *th = std::uint8_t(std::min<std::int32_t>(vp->maxreq, 255));
        return;
      }
      std::uint32_t head = vp->head;
      b.erase(key);
      while (head != kNilNode) {
        const std::uint32_t nd = head;
        const WatchNode w = wpool_[nd];  // copy: handlers may grow the pool
        head = w.next;
        bool live;
        if (w.id & kCohortBit) {
          live = cohorts_[w.id & ~kCohortBit].gen == w.epoch;
        } else {
          const P& p = ps_[w.id];
          live = w.epoch == p.epoch && p.mode == P::M::Dormant;
        }
        if (!live || w.required > new_val) {
          wfree_.push_back(nd);
          if (live) {
            if (w.id & kCohortBit)
              wake_cohort_cell(w.id & ~kCohortBit, key, new_val, t);
            else
              wake(w.id, t);
          }
          continue;
        }
        wpool_[nd].next = keep;
        if (keep == kNilNode) keep_tail = nd;
        keep = nd;
        keep_max = std::max(keep_max, w.required);
      }
      if (keep != kNilNode) {
        const auto [vp2, ins2] = b.try_emplace(key, WHead{keep, keep_max});
        if (!ins2) {
          wpool_[keep_tail].next = vp2->head;
          vp2->head = keep;
          vp2->maxreq = std::max(vp2->maxreq, keep_max);
        }
      }
    }
    // Wake handlers may have registered fresh watches on the same key,
    // raising the threshold already; fold the survivors' maximum back in.
    *th = std::uint8_t(
        std::min<std::int32_t>(std::max<std::int32_t>(*th, keep_max), 255));
  }

  // Works on flat indices; the extent always pads the aggregate by well
  // over kBand sites, so neighbor steps never wrap across a grid edge.
  void near_bfs_from(const C4& v, double t) {
    const std::size_t i0 = sidx(v);
    if (near_[i0] == 0) return;
    near_[i0] = 0;
    if (thresh_[i0] != 0)
      bucket_trigger(near_buck_, std::uint64_t(i0), 0, t, &thresh_[i0]);
    nq_.clear();
    nq_.push_back(i0);
    for (std::size_t h = 0; h < nq_.size(); ++h) {
      const std::size_t s = std::size_t(nq_[h]);
      const int val = near_[s];
      if (val >= kBand) continue;
      for (int i = 0; i < d_; ++i) {
        const std::size_t st = std::size_t(stride_[i]);
        for (int sgn = 0; sgn < 2; ++sgn) {
          const std::size_t ni = sgn ? s + st : s - st;
          if (near_[ni] <= val + 1) continue;
          near_[ni] = std::uint8_t(val + 1);
          if (val + 1 < int(thresh_[ni]))
            bucket_trigger(near_buck_, std::uint64_t(ni), val + 1, t,
                           &thresh_[ni]);
          nq_.push_back(ni);
        }
      }
    }
  }

  template <class Fn>
  void for_each_cheb_neighbor(const C4& c, Fn&& fn) const {
    C4 nb = c;
    const int n = d_;
    std::array<int, 4> off{};
    for (int i = 0; i < n; ++i) off[i] = -1;
    for (;;) {
      bool all_zero = true;
      for (int i = 0; i < n; ++i)
        if (off[i] != 0) all_zero = false;
      if (!all_zero) {
        for (int i = 0; i < n; ++i) nb[i] = std::int16_t(c[i] + off[i]);
        fn(nb);
      }
      int i = n - 1;
      while (i >= 0 && off[i] == 1) off[i--] = -1;
      if (i < 0) break;
      ++off[i];
    }
  }

  void coarse_assign(const C4& c, std::size_t idx, std::int32_t val, double t) {
    coarse_[idx] = std::uint8_t(val);
    if (val < std::int32_t(cthresh_[idx]))
      bucket_trigger(coarse_buck_, hddetail::pack(c), val, t, &cthresh_[idx]);
    if (val <= mat_req_ && !mat_[idx]) matq_.push_back(hddetail::pack(c));
  }

  void coarse_bfs_from_cell(const C4& c0, double t) {
    const std::size_t i0 = cidx(c0);
    if (coarse_[i0] == 0) return;
    coarse_assign(c0, i0, 0, t);
    cq_.clear();
    cq_.push_back(hddetail::pack(c0));
    for (std::size_t h = 0; h < cq_.size(); ++h) {
      const C4 s = hddetail::unpack(cq_[h]);
      const std::int32_t val = coarse_[cidx(s)];
      if (val >= vmax_) continue;
      for_each_cheb_neighbor(s, [&](const C4& nb) {
        if (!cell_in_extent(nb)) return;
        const std::size_t ni = cidx(nb);
        if (std::int32_t(coarse_[ni]) <= val + 1) return;
        coarse_assign(nb, ni, val + 1, t);
        cq_.push_back(hddetail::pack(nb));
      });
    }
  }

  // ---- particle bookkeeping -------------------------------------------

  std::uint32_t alloc_particle(const C4& pos) {
    if (!free_.empty()) {
      const std::uint32_t i = free_.back();
      free_.pop_back();
      P& p = ps_[i];  // epoch was bumped on release
      p.pos = pos;
      p.mode = P::M::Free;
      p.n = 0;
      p.t_ref = p.t_end = 0.0;
      return i;
    }
    P p;
    p.pos = pos;
    ps_.push_back(p);
    return std::uint32_t(ps_.size() - 1);
  }

  void free_slot(std::uint32_t i) {
    P& p = ps_[i];
    p.mode = P::M::Frozen;
    ++p.epoch;
    free_.push_back(i);
  }

  void site_add(std::uint32_t i) {
    site_[hddetail::pack(ps_[i].pos)].push_back(i);
  }

  void site_remove(std::uint32_t i) {
    auto it = site_.find(hddetail::pack(ps_[i].pos));
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

  void record_jump(std::uint32_t i, double t, long pos0, long disp) {
    if (!cfg_.record_particles) return;
    recs_[i].history.push_back({t, t, pos0, 1, disp, 0});
    recs_[i].min_bound = std::min(recs_[i].min_bound, pos0 + disp);
  }

  void split_jumps(long n, std::array<long, 4>& cnt) {
    long rem = n;
    for (int i = 0; i < d_ - 1; ++i) {
      cnt[i] = binomial(rng_, rem, 1.0 / double(d_ - i));
      rem -= cnt[i];
    }
    cnt[d_ - 1] = rem;
  }

  void move_by(long n, C4& pos) {
    if (n <= 0) return;
    if (d_ == 2) {
      const long n0 = binomial_half(rng_, n);
      pos[0] = checked(long(pos[0]) + symmetric_walk_step_sum(rng_, n0));
      pos[1] = checked(long(pos[1]) + symmetric_walk_step_sum(rng_, n - n0));
      return;
    }
    std::array<long, 4> cnt{};
    split_jumps(n, cnt);
    for (int c = 0; c < d_; ++c)
      pos[c] = checked(long(pos[c]) + symmetric_walk_step_sum(rng_, cnt[c]));
  }

  // Mean block jump count for a certified radius m.  A third of the radius
  // leaves room for both the jump-count fluctuation and the aggregate
  // advancing toward the sleeper during the window, so most blocks run to
  // their scheduled end instead of being woken by an encroaching front.
  static double block_mean(double m) { return std::max(m / 3.0, 1.0); }

  // Register the watch matching the certificate's justification.  The
  // coarse requirement derived from n <= (k-1)*kCell - 2 never exceeds the
  // watched cell's current (or first assigned) value, so the watch fires
  // exactly when the bound stops covering the ball.
  void register_dormant_watch(std::uint32_t i, const Reach& r, long n) {
    P& p = ps_[i];
    if (r.kind == 1) {
      std::uint8_t& th = thresh_[std::size_t(r.key)];
      th = std::uint8_t(std::max<long>(th, n + 2));
      bucket_push(near_buck_, r.key, std::int32_t(n + 2), i, p.epoch);
    } else if (r.kind == 2) {
      coarse_watch_push(r.key, cell_req(n), i, p.epoch);
    }
    evq_.push({p.t_end, i, p.epoch});
  }

  // Mode decision for a mass-mode individual at time t.  Individuals that
  // drifted back out of the active band rejoin their cell's cohort, so the
  // escaped population never accumulates as individuals.
  void reassess(std::uint32_t i, double t) {
    MDLA_PROF_T(4);
    P& p = ps_[i];
    ++p.epoch;
    const double remaining = cfg_.horizon - t;
    if (remaining > 1e-12 && far_bound(p.pos) >= kFarDist) {
      const C4 pos = p.pos;
      free_slot(i);
      classify_or_spawn(pos, t);
      return;
    }
    const Reach r = reach_of(p.pos);
    if (r.dist >= kDormantMin && remaining > 1e-12) {
      const double dt =
          std::min(block_mean(double(r.dist - 2)) / double(d_), remaining);
      const long n = poisson(rng_, double(d_) * dt);
      p.t_ref = t;
      p.t_end = t + dt;
      p.n = std::uint32_t(n);
      if (n <= r.dist - 2) {
        MDLA_PROF_HOOK((++g_reg_src[0], ++g_reg_dist[std::min(r.dist, 39L)]));
        p.mode = P::M::Dormant;
        register_dormant_watch(i, r, n);
      } else {
        // Certificate failed: run the same n jumps as a conditioned schedule.
        p.mode = P::M::Cond;
        schedule_cond(i, t);
      }
      return;
    }
    p.mode = P::M::Free;
    evq_.push({t + expo(double(d_)), i, p.epoch});
  }

  void schedule_cond(std::uint32_t i, double t) {
    P& p = ps_[i];
    if (p.n == 0) {
      evq_.push({p.t_end, i, p.epoch});
      return;
    }
    double u;
    do {
      u = uni();
    } while (u <= 0.0);
    const double next =
        t + (p.t_end - t) * (1.0 - std::pow(u, 1.0 / double(p.n)));
    evq_.push({next, i, p.epoch});
  }

  // Shared tail after a block split at time t: re-certify the remainder at
  // the new position or fall back to the conditioned schedule.
  void wake_tail(std::uint32_t i, double t) {
    P& p = ps_[i];
    if (t >= p.t_end) {
      p.mode = P::M::Cond;
      p.t_end = t;
      evq_.push({t, i, p.epoch});
      return;
    }
    const Reach r = reach_of(p.pos);
    if (p.n > 0 && long(p.n) <= r.dist - 2 && r.dist >= kDormantMin) {
      MDLA_PROF_HOOK((++g_reg_src[2], ++g_reg_dist[std::min(r.dist, 39L)]));
      p.mode = P::M::Dormant;
      register_dormant_watch(i, r, long(p.n));
      return;
    }
    p.mode = P::M::Cond;
    schedule_cond(i, t);
  }

  void wake(std::uint32_t i, double t) {
    MDLA_PROF_HOOK(++g_wakes);
    P& p = ps_[i];
    const double span = p.t_end - p.t_ref;
    const double frac =
        span > 0.0 ? std::min(1.0, (t - p.t_ref) / span) : 1.0;
    const long n1 = binomial(rng_, long(p.n), frac);
    move_by(n1, p.pos);
    ++p.epoch;
    p.n = std::uint32_t(long(p.n) - n1);
    p.t_ref = t;
    wake_tail(i, t);
  }

  void finish_block(std::uint32_t i, double t) {
    P& p = ps_[i];
    move_by(long(p.n), p.pos);
    reassess(i, t);
  }

  void spawn_individual(const C4& pos, double t) {
    const std::uint32_t i = alloc_particle(pos);
    reassess(i, t);
  }

  void make_cond_individual(const C4& pos, long n, double t, double t_end) {
    const std::uint32_t i = alloc_particle(pos);
    P& p = ps_[i];
    p.mode = P::M::Cond;
    p.t_ref = t;
    p.t_end = t_end;
    p.n = std::uint32_t(n);
    schedule_cond(i, t);
  }

  // ---- cohorts ---------------------------------------------------------

  std::uint32_t alloc_cohort() {
    if (!cohort_free_.empty()) {
      const std::uint32_t ci = cohort_free_.back();
      cohort_free_.pop_back();
      return ci;  // gen was bumped on release; vectors are cleared
    }
    cohorts_.emplace_back();
    return std::uint32_t(cohorts_.size() - 1);
  }

  void free_cohort(std::uint32_t ci) {
    Cohort& co = cohorts_[ci];
    ++co.gen;
    // Idle cohorts vastly outnumber live ones; retaining their peak member
    // capacity dominates the footprint, so deallocate instead of clearing.
    co.xy = {};
    co.n = {};
    co.t0 = {};
    co.apos = {};
    co.at0 = {};
    const CellRef* cr = cell_cohort_.find(co.key);
    if (cr && cr->ci == ci) cell_cohort_.erase(co.key);
    const CellRef* ar = arch_cell_.find(co.key);
    if (ar && ar->ci == ci) arch_cell_.erase(co.key);
    cohort_free_.push_back(ci);
  }

  C4 mpos(const Cohort& co, std::size_t j) const {
    C4 p{};
    for (int i = 0; i < d_; ++i) p[i] = co.xy[j * std::size_t(d_) + i];
    return p;
  }

  void store_mpos(Cohort& co, std::size_t j, const C4& p) {
    for (int i = 0; i < d_; ++i) co.xy[j * std::size_t(d_) + i] = p[i];
  }

  // Coarse distance bound for a position, or -1 when it does not qualify
  // for pooling (near the aggregate or outside the grid extent).
  long far_bound(const C4& pos) const {
    if (!in_extent(pos)) return -1;
    const std::uint8_t cv = coarse_[cidx(cell_of(pos))];
    const long cd =
        cv == kUnknownCell ? vmax_ * kCell : (long(cv) - 1) * kCell;
    return cd >= kFarDist ? cd : -1;
  }

  // Walkers farther out than this cell distance cannot reach the aggregate
  // within the remaining time (up to the per-particle crossing budget), so
  // they are parked instead of simulated.  The threshold is refreshed on a
  // coarse cadence; a stale value is larger than the current one and only
  // errs toward keeping walkers active.
  void update_arch_req(double t) {
    const double span = double(d_) * std::max(cfg_.horizon - t, 1e-9);
    const long m = margin_for_span(span, chern_target_);
    arch_req_ = (m + kCell - 1) / kCell + 2;
    arch_update_t_ = t + 1.0;
  }

  // Park a walker: record only its position and park time, and watch its
  // cell.  If the aggregate ever approaches the cell, every parked walker
  // there is revived with a fresh jump-count draw over the parked span,
  // which reproduces the walk law exactly.  A walker whose watch never
  // fires kept a certified gap of at least the remaining-time margin, so
  // dropping it at the horizon costs at most the crossing budget, charged
  // here.
  void archive(const C4& pos, double t) {
    leakage_bound_ += 2.0 * chern_target_;
    const std::uint64_t ck = hddetail::pack(cell_of(pos));
    std::uint32_t ci;
    const CellRef* ar = arch_cell_.find(ck);
    if (ar) {
      ci = ar->ci;
    } else {
      ci = alloc_cohort();
      Cohort& co = cohorts_[ci];
      co.key = ck;
      co.t_end = std::numeric_limits<double>::infinity();
      co.max_req = std::int32_t(arch_req_);
      arch_cell_.try_emplace(ck, CellRef{ci});
      coarse_watch_push(ck, co.max_req, kCohortBit | ci, co.gen);
    }
    Cohort& co = cohorts_[ci];
    if (arch_compact_) {
      // Park on the next 1/8 s grid point.  With probability
      // exp(-d*gap) the walker makes no jump before it, so by
      // memorylessness its state there is (pos, tg) exactly; store that
      // in four bytes.  Otherwise keep the wide record, whose revival
      // resamples the gap jumps conditioned on at least one.
      const double tg = std::ceil(t * 8.0);
      const double gap = tg * 0.125 - t;
      if (gap <= 0.0 || rng_.uniform() < std::exp(-double(d_) * gap)) {
        std::uint16_t off = 0;
        for (int i = 0; i < d_; ++i)
          off = std::uint16_t(off | (std::uint16_t(pos[i] & 15) << (4 * i)));
        append_tight(co.apos, off);
        append_tight(co.at0, std::uint16_t(tg));
        return;
      }
    }
    for (int i = 0; i < d_; ++i) append_tight(co.xy, pos[i]);
    append_tight(co.t0, t);
  }

  // Poisson conditioned on being positive, by inversion; used to resample
  // the park-gap jumps of wide archive records.
  long poisson_ge1(double mean) {
    const double e = std::exp(-mean);
    double u = rng_.uniform() * (1.0 - e);
    double term = e * mean;
    long k = 1;
    double acc = term;
    while (u > acc && k < 64) {
      ++k;
      term *= mean / double(k);
      acc += term;
    }
    return k;
  }

  void revive_cell(std::uint32_t ci, double t) {
    axy_.clear();
    at0_.clear();
    aoff_.clear();
    atq_.clear();
    std::uint64_t ck;
    {
      Cohort& co = cohorts_[ci];
      axy_.swap(co.xy);
      at0_.swap(co.t0);
      aoff_.swap(co.apos);
      atq_.swap(co.at0);
      ck = co.key;
      free_cohort(ci);
    }
    const C4 cbase = hddetail::unpack(ck);
    for (std::size_t j = 0; j < atq_.size(); ++j) {
      C4 pos{};
      for (int i = 0; i < d_; ++i)
        pos[i] = std::int16_t((cbase[i] << kCellShift) |
                              std::int16_t((aoff_[j] >> (4 * i)) & 15));
      const double t0 = double(atq_[j]) * 0.125;
      if (t0 <= t) {
        move_by(poisson(rng_, double(d_) * (t - t0)), pos);
        classify_or_spawn(pos, t);
      } else {
        // Parked just ahead of the wake: provably jumpless until its grid
        // time, so let it sit there as a zero-jump conditioned walker.
        make_cond_individual(pos, 0, t, t0);
      }
    }
    const std::size_t m = at0_.size();
    for (std::size_t j = 0; j < m; ++j) {
      C4 pos{};
      for (int i = 0; i < d_; ++i) pos[i] = axy_[j * std::size_t(d_) + i];
      const double t0 = at0_[j];
      if (!arch_compact_) {
        move_by(poisson(rng_, double(d_) * (t - t0)), pos);
        classify_or_spawn(pos, t);
        continue;
      }
      // Wide records carry the complement condition: at least one jump
      // before the grid point tg.
      const double tg = std::ceil(t0 * 8.0) * 0.125;
      const long k = poisson_ge1(double(d_) * (tg - t0));
      if (t >= tg) {
        move_by(k + poisson(rng_, double(d_) * (t - tg)), pos);
        classify_or_spawn(pos, t);
      } else {
        // Woken inside the gap: the conditioned jumps are uniform on it,
        // so split them at the wake time and run the tail conditioned.
        const long kb = binomial(rng_, k, (t - t0) / (tg - t0));
        move_by(kb, pos);
        make_cond_individual(pos, k - kb, t, tg);
      }
    }
  }

  // Route a particle at pos into the live cohort of its cell, or run it as
  // an individual when it sits too close to the aggregate for pooling.  A
  // member may join mid-window: it carries its own join time and certifies
  // its jump count against the cell distance read now, and the cohort's
  // armed watch requirement is raised on the spot when needed, so no
  // freeze can slip between admission and coverage.
  void classify_or_spawn(const C4& pos, double t) {
    if (t >= arch_update_t_) update_arch_req(t);
    if (in_extent(pos)) {
      const std::uint8_t cvb = coarse_[cidx(cell_of(pos))];
      const long cv = cvb == kUnknownCell ? long(vmax_) + 1 : long(cvb);
      if (cv > arch_req_) {
        archive(pos, t);
        return;
      }
    }
    const long cd = far_bound(pos);
    const double remaining = cfg_.horizon - t;
    if (cd < 0 || remaining <= 1e-12) {
      spawn_individual(pos, t);
      return;
    }
    const std::uint64_t ck = hddetail::pack(cell_of(pos));
    std::uint32_t ci;
    CellRef* cr = cell_cohort_.find(ck);
    if (cr && cohorts_[cr->ci].t_end - t > 0.5) {
      ci = cr->ci;
    } else {
      ci = alloc_cohort();
      Cohort& co = cohorts_[ci];
      co.key = ck;
      co.t_end =
          t + std::min(block_mean(double(cd - 2)) / double(d_), remaining);
      co.max_req = 0;
      if (cr)
        cr->ci = ci;  // displaces a nearly-expired predecessor
      else
        cell_cohort_.try_emplace(ck, CellRef{ci});
      evq_.push({co.t_end, kCohortBit | ci, co.gen});
    }
    Cohort& co = cohorts_[ci];
    const long n = poisson(rng_, double(d_) * (co.t_end - t));
    if (n > cd - 2 || n > 60000) {  // keep counts inside the uint16 member
      make_cond_individual(pos, n, t, co.t_end);
      return;
    }
    for (int i = 0; i < d_; ++i) co.xy.push_back(pos[i]);
    co.n.push_back(std::uint16_t(n));
    co.t0.push_back(t);
    const std::int32_t req = cell_req(n);
    if (req > co.max_req) {
      co.max_req = req;
      coarse_watch_push(ck, req, kCohortBit | ci, co.gen);
    }
  }

  void review_cohort(std::uint32_t ci, double t) {
    MDLA_PROF_T(1);
    rxy_.clear();
    rn_.clear();
    rt0_.clear();
    {
      Cohort& co = cohorts_[ci];
      rxy_.swap(co.xy);
      rn_.swap(co.n);
      rt0_.swap(co.t0);
      free_cohort(ci);
    }
    const std::size_t m = rn_.size();
    MDLA_PROF_HOOK((++g_cohort_reviews, g_cohort_moves += long(m)));
    for (std::size_t j = 0; j < m; ++j) {
      C4 pos{};
      for (int i = 0; i < d_; ++i) pos[i] = rxy_[j * std::size_t(d_) + i];
      move_by(long(rn_[j]), pos);
      classify_or_spawn(pos, t);
    }
  }

  // Partial wake: members whose jump budget the shrunken cell distance no
  // longer covers leave the cohort; the rest re-arm a watch at the
  // surviving maximum.
  void wake_cohort_cell(std::uint32_t ci, std::uint64_t cellkey,
                        std::int32_t new_val, double t) {
    Cohort& co = cohorts_[ci];
    if (co.t_end == std::numeric_limits<double>::infinity()) {
      revive_cell(ci, t);
      return;
    }
    const long cd = (long(new_val) - 1) * kCell;
    long keep_max = -1;
    std::size_t j = co.n.size();
    while (j-- > 0) {
      const long n = long(co.n[j]);
      if (n + 2 <= cd) {
        keep_max = std::max(keep_max, n);
        continue;
      }
      const double span = co.t_end - co.t0[j];
      const double frac =
          span > 0.0 ? std::min(1.0, (t - co.t0[j]) / span) : 1.0;
      C4 pos = mpos(co, j);
      const long n1 = binomial(rng_, n, frac);
      move_by(n1, pos);
      const std::uint32_t pi = alloc_particle(pos);
      P& p = ps_[pi];
      p.t_ref = t;
      p.t_end = co.t_end;
      p.n = std::uint32_t(n - n1);
      wake_tail(pi, t);
      const std::size_t last = co.n.size() - 1;
      if (j != last) {
        store_mpos(co, j, mpos(co, last));
        co.n[j] = co.n[last];
        co.t0[j] = co.t0[last];
      }
      co.xy.resize(last * std::size_t(d_));
      co.n.resize(last);
      co.t0.resize(last);
    }
    if (co.n.empty()) {
      free_cohort(ci);
      return;
    }
    if (keep_max >= 0) {
      co.max_req = cell_req(keep_max);
      coarse_watch_push(cellkey, co.max_req, kCohortBit | ci, co.gen);
    }
  }

  // ---- freezing --------------------------------------------------------

  // v by value: extent growth below reallocates the grids, and callers may
  // pass references into particle storage.
  void freeze_at(const C4 v, double t) {
    MDLA_PROF_T(2);
    if (tracked_) {
      auto it = site_.find(hddetail::pack(v));
      if (it != site_.end()) {
        for (std::uint32_t j : it->second) {
          P& q = ps_[j];
          q.mode = P::M::Frozen;
          ++q.epoch;
          ++frozen_count_;
          if (cfg_.record_particles) recs_[j].freeze_time = t;
        }
        site_.erase(it);
      }
    }
    if (near_[sidx(v)] == 0) return;  // already aggregate
    ++occupied_count_;
    bool bbox_changed = false;
    for (int i = 0; i < d_; ++i) {
      if (long(v[i]) < bb_lo_[i]) {
        bb_lo_[i] = v[i];
        bbox_changed = true;
      }
      if (long(v[i]) > bb_hi_[i]) {
        bb_hi_[i] = v[i];
        bbox_changed = true;
      }
    }
    bool stats_changed = false;
    if (long(v[0]) > x_) {
      x_ = v[0];
      for (int i = 0; i < d_; ++i) rightmost_[i] = v[i];
      front_.jump_times.push_back(t);
      front_.positions.push_back(x_);
      stats_changed = true;
    }
    if (bbox_changed) {
      long dm = 0;
      for (int i = 0; i < d_; ++i) dm = std::max(dm, bb_hi_[i] - bb_lo_[i]);
      if (dm != diam_) {
        diam_ = dm;
        stats_changed = true;
      }
      ensure_extent();
    }
    if (stats_changed) diam_series_.push_back({t, diam_, x_});
    near_bfs_from(v, t);
    const C4 cv = cell_of(v);
    if (coarse_[cidx(cv)] != 0) coarse_bfs_from_cell(cv, t);
    drain_matq(t);
  }

  void do_jump(std::uint32_t i, double t) {
    MDLA_PROF_T(0);
    P& p = ps_[i];
    ++event_count_;
    const int dir = std::min(2 * d_ - 1, int(uni() * double(2 * d_)));
    const int c = dir >> 1;
    const int sgn = (dir & 1) ? 1 : -1;
    C4 target = p.pos;
    target[c] = std::int16_t(target[c] + sgn);
    if (!cfg_.adhesion_disabled && on_agg(target)) {
      // Adhesion: the jumper freezes in place, along with co-located
      // particles; the aggregate gains the jumper's site.
      if (tracked_) {
        record_jump(i, t, p.pos[0], 0);
        freeze_at(p.pos, t);  // the site map includes the jumper
      } else {
        const C4 v = p.pos;
        ++frozen_count_;
        free_slot(i);
        freeze_at(v, t);
      }
      return;
    }
    const long pos0 = p.pos[0];
    if (tracked_) site_remove(i);
    p.pos = target;
    check_range(p.pos);
    if (tracked_) {
      if (c == 0) record_jump(i, t, pos0, long(p.pos[0]) - pos0);
      site_add(i);
      evq_.push({t + expo(double(d_)), i, p.epoch});
      return;
    }
    if (p.mode == P::M::Cond) {
      --p.n;
      if (p.n > 0) {
        const Reach rr = reach_of(p.pos);
        if (long(p.n) <= rr.dist - 2 && rr.dist >= kDormantMin) {
          MDLA_PROF_HOOK((++g_reg_src[1], ++g_reg_dist[std::min(rr.dist, 39L)]));
          // Remainder of the block re-certifies at the new position.
          ++p.epoch;
          p.mode = P::M::Dormant;
          p.t_ref = t;
          register_dormant_watch(i, rr, long(p.n));
          return;
        }
      }
      schedule_cond(i, t);
      return;
    }
    if (reach_of(p.pos).dist >= kDormantMin) {
      reassess(i, t);
      return;
    }
    evq_.push({t + expo(double(d_)), i, p.epoch});
  }

  // ---- materialization -------------------------------------------------

  void add_particle_tracked(const C4& pos, std::uint64_t id, double t) {
    check_range(pos);
    P p;
    p.pos = pos;
    ps_.push_back(p);
    if (cfg_.record_particles) {
      Rec r;
      r.id = id;
      r.init_pos = pos[0];
      r.min_bound = pos[0];
      recs_.push_back(std::move(r));
    }
    const std::uint32_t i = std::uint32_t(ps_.size() - 1);
    if (!cfg_.adhesion_disabled && on_agg(pos)) {
      // Sites already part of the aggregate absorb their occupants.
      ps_[i].mode = P::M::Frozen;
      ++frozen_count_;
      if (cfg_.record_particles) recs_[i].freeze_time = t;
      return;
    }
    site_add(i);
    evq_.push({t + expo(double(d_)), i, ps_[i].epoch});
  }

  void materialize_cell(const C4& cell, double t) {
    const std::size_t ci = cidx(cell);
    if (mat_[ci]) return;
    mat_[ci] = 1;
    long sv[hddetail::kMaxDim] = {0, 0, 0, 0};
    std::array<long, 4> base{};
    for (int i = 0; i < d_; ++i) base[i] = long(cell[i]) * kCell;
    // Late occupants evolved as free walks up to t (they provably never met
    // the aggregate, which the untouched-buffer invariant keeps at least
    // margin_ away from any unmaterialized cell), so each lands at an
    // independent per-coordinate symmetric increment endpoint.
    const double per_particle =
        t <= 0.0 ? 0.0
                 : std::min(1.0, 2.0 * detail::walk_chernoff(
                                          double(d_) * t,
                                          double(margin_ - 1)));
    std::array<int, 4> off{};
    for (;;) {
      for (int i = 0; i < d_; ++i) sv[i] = base[i] + off[i];
      if (tracked_) {
        const std::vector<long> svv(sv, sv + d_);
        const auto occ = site_count(fc_, svv);
        if (occ.count > 0) {
          materialized_count_ += occ.count;
          C4 spos{};
          for (int i = 0; i < d_; ++i) spos[i] = std::int16_t(sv[i]);
          if (t <= 0.0) {
            for (long j = 0; j < occ.count; ++j)
              add_particle_tracked(spos, occ.particle_ids[std::size_t(j)], t);
          } else {
            CounterStream place(mix64(detail::site_stream_seed(fc_, sv, d_),
                                      0x35f2a1bdc0e97d41ULL));
            for (long j = 0; j < occ.count; ++j) {
              leakage_bound_ += per_particle;
              const C4 ep = place_endpoint(place, sv, t);
              add_particle_tracked(ep, occ.particle_ids[std::size_t(j)], t);
            }
          }
        }
      } else {
        const long cnt = site_count_only(fc_, sv, d_);
        if (cnt > 0) {
          materialized_count_ += cnt;
          C4 spos{};
          for (int i = 0; i < d_; ++i) spos[i] = std::int16_t(sv[i]);
          if (t <= 0.0) {
            if (!cfg_.adhesion_disabled && on_agg(spos)) {
              frozen_count_ += cnt;
            } else {
              for (long j = 0; j < cnt; ++j) classify_or_spawn(spos, t);
            }
          } else {
            CounterStream place(mix64(detail::site_stream_seed(fc_, sv, d_),
                                      0x35f2a1bdc0e97d41ULL));
            for (long j = 0; j < cnt; ++j) {
              leakage_bound_ += per_particle;
              classify_or_spawn(place_endpoint(place, sv, t), t);
            }
          }
        }
      }
      int i = d_ - 1;
      while (i >= 0) {
        if (++off[i] < kCell) break;
        off[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }

  C4 place_endpoint(CounterStream& place, const long* sv, double t) {
    C4 pos{};
    int guard = 0;
    for (;;) {
      for (int i = 0; i < d_; ++i) {
        const long disp = skellam_increment(place, t);
        pos[i] = std::int16_t(std::clamp(sv[i] + disp, -hddetail::kCoordLimit,
                                         hddetail::kCoordLimit));
      }
      if (cfg_.adhesion_disabled || !on_agg(pos)) return pos;
      ++resample_count_;
      if (++guard > 1000)
        throw std::runtime_error("simulate_d: placement resample runaway");
    }
  }

  void drain_matq(double t) {
    MDLA_PROF_T(3);
    while (!matq_.empty()) {
      const C4 cell = hddetail::unpack(matq_.back());
      matq_.pop_back();
      materialize_cell(cell, t);
    }
  }

  // Smallest travel margin whose per-particle crossing bound, multiplied by
  // a generous population cap, stays inside half the leakage budget.  The
  // L1 displacement of a rate-d walk is dominated in distribution by the
  // absolute value of a rate-d one-dimensional walk.
  static long margin_for_span(double span, double target) {
    long lo = 4, hi = 8;
    while (detail::walk_chernoff(span, double(hi - 1)) > target) {
      lo = hi;
      hi *= 2;
      if (hi > (1L << 30))
        throw std::runtime_error("simulate_d: margin search overflow");
    }
    while (lo < hi) {
      const long mid = lo + (hi - lo) / 2;
      if (detail::walk_chernoff(span, double(mid - 1)) <= target)
        hi = mid;
      else
        lo = mid + 1;
    }
    return hi;
  }

  // Expected number of never-materialized particles that would have crossed
  // the buffer within the horizon, summed over distance shells around the
  // final aggregate.
  double fringe_bound() const {
    if (cfg_.k_density <= 0.0) return 0.0;
    const double tt = double(d_) * std::max(cfg_.horizon, 1.0);
    double w = 1.0;
    for (int i = 0; i < d_; ++i)
      w = std::max(w, double(bb_hi_[i] - bb_lo_[i] + 1 + 2 * margin_));
    double sum = 0.0;
    for (long off = 0; off < 1000000; ++off) {
      const double shell =
          std::pow(w + 2.0 * double(off), double(d_)) -
          std::pow(std::max(w + 2.0 * double(off) - 2.0, 0.0), double(d_));
      const double term =
          cfg_.k_density * shell * 2.0 *
          detail::walk_chernoff(tt, double(margin_ + off - 1));
      sum += term;
      if (term < 1e-18 * std::max(sum, 1e-30)) break;
    }
    return sum;
  }

  // ---- orchestration ---------------------------------------------------

  void setup() {
    fc_.k_density = cfg_.k_density;
    fc_.master_seed = cfg_.master_seed;
    fc_.dimension = d_;
    fc_.thinning_reference = cfg_.thinning_reference;
    tracked_ = cfg_.record_particles || !cfg_.lazy;

    front_.horizon = cfg_.horizon;
    front_.jump_times.clear();
    front_.positions.clear();

    const double cap = 1e12 * std::max(1.0, cfg_.k_density);
    chern_target_ = cfg_.leakage_tol / (4.0 * cap);
    margin_ =
        margin_for_span(double(d_) * std::max(cfg_.horizon, 1.0), chern_target_);
    mat_req_ = (margin_ + kCell - 1) / kCell + 2;
    vmax_ = mat_req_ + 2;
    arch_req_ = mat_req_;
    arch_update_t_ = 0.0;
    arch_compact_ = cfg_.horizon * 8.0 < 65000.0;
    if (vmax_ > 250)
      throw std::runtime_error(
          "simulate_d: horizon too large for the coarse distance byte");
    for (int i = 0; i < d_; ++i) {
      bb_lo_[i] = bb_hi_[i] = 0;
      rightmost_[i] = 0;
    }

    const long e0 = margin_ + 256;
    std::array<long, 4> nlo{}, nhi{};
    for (int i = 0; i < d_; ++i) {
      nlo[i] = ((-e0) >> kCellShift) << kCellShift;
      nhi[i] = ((e0 >> kCellShift) + 1) * kCell - 1;
    }
    apply_extent(nlo, nhi, /*copy_old=*/false);

    diam_series_.push_back({0.0, 0, 0});
    const C4 origin{};
    near_bfs_from(origin, 0.0);
    occupied_count_ = 1;
    coarse_bfs_from_cell(cell_of(origin), 0.0);
    drain_matq(0.0);
  }

  void loop() {
    while (!evq_.empty()) {
      const Ev e = evq_.pop();
      if (e.t > cfg_.horizon) break;
      if (e.i & kCohortBit) {
        const std::uint32_t ci = e.i & ~kCohortBit;
        if (cohorts_[ci].gen == e.epoch) review_cohort(ci, e.t);
        continue;
      }
      P& p = ps_[e.i];
      if (e.epoch != p.epoch || p.mode == P::M::Frozen) continue;
      if (!tracked_ && !cfg_.adhesion_disabled &&
          (p.mode == P::M::Free || p.mode == P::M::Cond) && on_agg(p.pos)) {
        // The site froze under the particle; it has been frozen since.
        ++frozen_count_;
        free_slot(e.i);
        continue;
      }
      switch (p.mode) {
        case P::M::Free:
          do_jump(e.i, e.t);
          break;
        case P::M::Cond:
          if (p.n > 0)
            do_jump(e.i, e.t);
          else
            reassess(e.i, e.t);
          break;
        case P::M::Dormant:
          finish_block(e.i, e.t);
          break;
        case P::M::Frozen:
          break;
      }
    }
  }

  HDRunRecord finalize() {
#ifdef MDLA_PROF_MEM
    {
      auto mb = [](std::size_t b) { return double(b) / (1024.0 * 1024.0); };
      std::size_t coh = cohorts_.capacity() * sizeof(Cohort);
      for (const auto& c : cohorts_)
        coh += c.xy.capacity() * 2 + c.n.capacity() * 2 +
               c.t0.capacity() * 8 + c.apos.capacity() * 2 +
               c.at0.capacity() * 2;
      std::fprintf(stderr,
                   "mem grids=%.1fMB ps=%.1fMB free=%.1fMB cohorts=%.1fMB "
                   "wpool=%.1fMB wfree=%.1fMB nbuck=%.1fMB cbuck=%.1fMB "
                   "evq=%.1fMB arch=%.1fMB rbuf=%.1fMB q=%.1fMB\n",
                   mb(near_.capacity() + thresh_.capacity() +
                      coarse_.capacity() + cthresh_.capacity() +
                      mat_.capacity()),
                   mb(ps_.capacity() * sizeof(P)),
                   mb(free_.capacity() * 4), mb(coh),
                   mb(wpool_.capacity() * sizeof(WatchNode)),
                   mb(wfree_.capacity() * 4),
                   mb(near_buck_.capacity() * (8 + sizeof(WHead))),
                   mb(coarse_buck_.capacity() * (8 + sizeof(WHead))),
                   mb(evq_.capacity_events() * sizeof(Ev)),
                   mb(axy_.capacity() * 2 + at0_.capacity() * 8 +
                      arch_cell_.capacity() * (8 + sizeof(CellRef))),
                   mb(rxy_.capacity() * 2 + rn_.capacity() * 2 +
                      rt0_.capacity() * 8),
                   mb((nq_.capacity() + cq_.capacity() + matq_.capacity()) * 8));
      evq_.debug_breakdown();
      std::size_t am = 0, aw = 0, abytes = 0, lbytes = 0;
      long narch = 0;
      for (const auto& c : cohorts_) {
        const std::size_t b = c.xy.capacity() * 2 + c.n.capacity() * 2 +
                              c.t0.capacity() * 8 + c.apos.capacity() * 2 +
                              c.at0.capacity() * 2;
        if (c.t_end == std::numeric_limits<double>::infinity()) {
          ++narch;
          am += c.at0.size();
          aw += c.t0.size();
          abytes += b;
        } else {
          lbytes += b;
        }
      }
      std::fprintf(stderr,
                   "arch cohorts=%ld compact=%zu wide=%zu slots=%zu "
                   "abytes=%.1fMB lbytes=%.1fMB\n",
                   narch, am, aw, cohorts_.size(), mb(abytes), mb(lbytes));
      std::size_t s1 = 0, c1 = 0, s2 = 0, c2 = 0, s3 = 0, c3 = 0;
      for (const auto& c : cohorts_)
        if (c.t_end == std::numeric_limits<double>::infinity()) {
          s1 += c.apos.size();
          c1 += c.apos.capacity();
          s2 += c.t0.size();
          c2 += c.t0.capacity();
          s3 += c.xy.size();
          c3 += c.xy.capacity();
        }
      std::fprintf(stderr,
                   "arch apos %zu/%zu t0 %zu/%zu xy %zu/%zu (size/cap)\n", s1,
                   c1, s2, c2, s3, c3);
    }
#endif
    MDLA_PROF_HOOK(({
      for (const auto& co : cohorts_) g_live_members += long(co.n.size());
      for (const auto& q : ps_)
        if (q.mode != P::M::Frozen) ++g_live_ind;
    }));
    // Freezes observed lazily: live walkers standing on aggregate sites
    // were co-located when their site froze.
    if (!tracked_ && !cfg_.adhesion_disabled) {
      for (std::uint32_t i = 0; i < ps_.size(); ++i) {
        const P& p = ps_[i];
        if ((p.mode == P::M::Free || p.mode == P::M::Cond) && on_agg(p.pos))
          ++frozen_count_;
      }
    }
    HDRunRecord rec;
    rec.config = cfg_;
    rec.front = std::move(front_);
    rec.diameter_series = std::move(diam_series_);
    rec.aggregate.dimension = d_;
    rec.aggregate.lo = lo_;
    rec.aggregate.hi = hi_;
    rec.aggregate.stride = stride_;
    rec.aggregate.occupied_count = occupied_count_;
    for (int i = 0; i < 4; ++i) rec.aggregate.rightmost[i] = rightmost_[i];
    rec.aggregate.rightmost_first_coord = x_;
    rec.event_count = event_count_;
    rec.frozen_count = frozen_count_;
    rec.materialized_particles = materialized_count_;
    rec.resample_count = resample_count_;
    rec.leakage_bound = leakage_bound_ + fringe_bound();
    rec.refine_seed = mix64(cfg_.master_seed, 0x7c0ffee1d2b845a9ULL);
    if (cfg_.record_particles) {
      rec.particles.reserve(ps_.size());
      for (std::size_t i = 0; i < ps_.size(); ++i) {
        ParticleRecord pr;
        pr.id = recs_[i].id;
        pr.init_pos = recs_[i].init_pos;
        pr.final_pos = ps_[i].pos[0];
        pr.status = (ps_[i].mode == P::M::Frozen) ? ParticleStatus::Frozen
                                                  : ParticleStatus::Active;
        pr.freeze_time = recs_[i].freeze_time;
        pr.min_bound = recs_[i].min_bound;
        pr.history = std::move(recs_[i].history);
        rec.particles.push_back(std::move(pr));
      }
    }
    rec.aggregate.grid = std::move(near_);
    return rec;
  }
};

inline HDRunRecord simulate_d(const SimConfig& cfg) {
  SimHDEngine engine(cfg);
  return engine.run();
}

// Count of particles whose first coordinate stayed strictly above the
// running front over [0, t], bucketed by current offset above the front.
// Requires a full-detail recorded run (every history piece a single jump).
inline std::map<long, long> conforming_count(const HDRunRecord& run, double t) {
  if (!run.config.record_particles)
    throw std::logic_error("conforming_count: needs a recorded run");
  if (t < 0.0 || t > run.front.horizon)
    throw std::out_of_range("conforming_count: t outside [0, horizon]");
  // Front value just before u (left limit) gives the supremum of X over any
  // interval ending at u.
  auto front_before = [&](double u) {
    const auto& jt = run.front.jump_times;
    const std::size_t k =
        std::size_t(std::lower_bound(jt.begin(), jt.end(), u) - jt.begin());
    return k == 0 ? 0L : run.front.positions[k - 1];
  };
  const long xt = run.front.position_at(t);
  std::map<long, long> out;
  for (const auto& pr : run.particles) {
    if (pr.status == ParticleStatus::Frozen && pr.freeze_time <= t) continue;
    long v = pr.init_pos;
    bool ok = true;
    for (const auto& seg : pr.history) {
      if (seg.t0 > t) break;
      if (seg.kind != 0)
        throw std::logic_error("conforming_count: summarized history present");
      // Constant piece up to seg.t0: binding at the left limit of the front
      // at the piece end.
      if (v <= front_before(seg.t0)) {
        ok = false;
        break;
      }
      v = seg.pos0 + seg.disp;
    }
    if (!ok) continue;
    if (v <= xt) continue;  // final piece up to and including t
    ++out[v - xt];
  }
  return out;
}

}  // namespace mdla

#endif  // MDLA_SIMHD_HPP
