#pragma once

#include "catperc/bits.hpp"
#include "catperc/rng.hpp"
#include "catperc/stats.hpp"

#include <cstdint>
#include <vector>

namespace catperc {

/// Enhanced oriented site percolation on Z^2, restricted to the columns
/// [x_lo, x_hi]. Sites are open with probability p; unit steps right and up
/// are always available; every even level 2m carries one shared row of
/// length-two up-edges (x,2m) -> (x,2m+2), open with probability q.
///
/// Nothing is stored: a level is regenerated on request from (seed, level,
/// absolute column), so lattices over different windows or different q with
/// the same seed share their site field, and site fields are monotone in p.
class EnhancedLattice {
 public:
  EnhancedLattice(double p, double q, std::uint64_t seed, std::int64_t x_lo, std::int64_t x_hi);

  double p() const { return p_; }
  double q() const { return q_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t x_lo() const { return x_lo_; }
  std::int64_t x_hi() const { return x_hi_; }
  std::size_t width() const { return static_cast<std::size_t>(x_hi_ - x_lo_ + 1); }

  /// Open sites of a level; bit k stands for column x_lo + k.
  Bits level_sites(std::int64_t level) const;
  bool site_open(std::int64_t x, std::int64_t level) const;
  /// Length-two row edges leaving `level`; always false for odd levels.
  bool row_open(std::int64_t level) const;

 private:
  std::uint64_t site_word(std::int64_t level, std::int64_t abs_word) const;

  double p_, q_;
  std::uint64_t seed_;
  std::int64_t x_lo_, x_hi_;
  rng::Threshold site_threshold_;
};

/// Reachable columns at the two most recent levels.
struct ReachableFront {
  std::int64_t level = 0;
  Bits previous;  // level - 1 (empty at the start level)
  Bits current;   // level
  bool truncated = false;
};

/// Front at `level` reached from the start columns `start` (bit k = x_lo + k).
/// Start sites need not be open.
ReachableFront start_front(const EnhancedLattice& lattice, const Bits& start, std::int64_t level = 0);

/// Advances the front one level. Sets `truncated` when the new level reaches
/// the rightmost window column.
ReachableFront evolve_front(const EnhancedLattice& lattice, const ReachableFront& front);

/// Window used by edge_processes: [-C n_max, C n_max] with C = ceil(2/(1-p)) + 2.
std::int64_t edge_window_half_width(double p, int n_max);

struct EdgeProcesses {
  std::vector<double> r;  // max reachable column from (-inf, 0]; -inf when empty
  std::vector<double> l;  // min reachable column from [0, inf); +inf when empty
  bool truncated = false;
};

/// r_0..r_{n_max} and l_0..l_{n_max} on the given lattice. The r-process is
/// flagged as truncated when its front touches the right edge of the window
/// or could be matched by paths from columns left of the window; the
/// l-process when its front dies inside the window.
EdgeProcesses edge_processes(const EnhancedLattice& lattice, int n_max);
EdgeProcesses edge_processes(double p, double q, int n_max, std::uint64_t seed);

/// Running bound r'_k: start at `x0`, then at each level move up and right to
/// the last open site before the first closed one. Dominates the r-process
/// started from columns <= x0.
std::vector<std::int64_t> overshoot_bound(const EnhancedLattice& lattice, std::int64_t x0, int n_max);

struct EdgeSpeedEstimate {
  Estimate alpha;             // r_{2n} / (2n)
  Estimate beta;              // l_{2n} / (2n)
  double alpha_subadditive;   // min over m <= n of mean r_{2m} / (2m)
  int excluded = 0;           // truncated replicates left out
};

/// Edge speeds from `reps` independent replicates of depth 2n. Throws
/// ResourceError when more than 1% of replicates are truncated.
EdgeSpeedEstimate edge_speed_estimate(double p, double q, int n, int reps, std::uint64_t seed, int threads = 1);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// R(u,v) = (base + [0,1)u + [0,1)v) intersected with Z^2, det(u,v) > 0.
class Parallelogram {
 public:
  Parallelogram(Vec2 u, Vec2 v, Vec2 base = {});

  const Vec2& base() const { return base_; }
  const Vec2& u() const { return u_; }
  const Vec2& v() const { return v_; }
  double det() const { return det_; }
  bool contains(std::int64_t x, std::int64_t y) const;
  /// Barycentric coordinates (s, t) of a point: z = base + s u + t v.
  Vec2 coordinates(double x, double y) const;

  /// Integer bounding box of the closed parallelogram.
  std::int64_t x_min() const;
  std::int64_t x_max() const;
  std::int64_t y_min() const;
  std::int64_t y_max() const;

 private:
  Vec2 u_, v_, base_;
  double det_;
};

enum class Direction { up, right, left };

/// Crossing of R in the given direction by an open path inside R. Start and
/// end strips hold the points of R at distance < band from the relevant side;
/// a strip that comes out empty is widened one unit at a time.
/// Throws DegenerateRegion when R has no lattice points and InvalidArgument
/// when R is not inside the lattice window.
bool crossing_event(const EnhancedLattice& lattice, const Parallelogram& region, Direction dir, double band = 1.0);

Estimate crossing_probability(const Parallelogram& region, Direction dir, double p, double q, int reps,
                              std::uint64_t seed, double band = 1.0, int threads = 1);

/// Oriented bond percolation on N^2 with up and up-right bonds, where each
/// level n draws xi_n ~ Geometric(delta) (P(xi = k) = (1-delta) delta^k) and
/// its bonds open independently with probability p^(xi_n + 1).
struct DefectsRun {
  bool survived = false;   // origin reaches level n_max
  bool truncated = false;  // cluster touched the last column before level n_max
};

DefectsRun defects_realization(double p, double delta, int width, int n_max, std::uint64_t seed);

struct DefectsEstimate {
  Estimate survival;
  int truncated = 0;
};

/// width <= 0 selects n_max + 1, wide enough that truncation cannot occur.
DefectsEstimate defects_survival(double p, double delta, int width, int n_max, int reps, std::uint64_t seed,
                                 int threads = 1);

}  // namespace catperc
