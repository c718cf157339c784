#include "catperc/oriented.hpp"

#include "catperc/errors.hpp"
#include "catperc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace catperc {

namespace {

constexpr std::uint64_t kSiteStream = 0x51735173;
constexpr std::uint64_t kRowStream = 0x72307230;

std::int64_t floor_div64(std::int64_t x) { return x >= 0 ? x / 64 : -((-x + 63) / 64); }

double column(const EnhancedLattice& lat, std::size_t bit) { return static_cast<double>(lat.x_lo() + static_cast<std::int64_t>(bit)); }

// One level of front evolution given the open sites of the new level.
void advance(ReachableFront& front, const Bits& open, bool jump) {
  Bits seeds = front.current;
  if (jump) seeds |= front.previous;
  seeds &= open;
  Bits next = fill_up(seeds, open);
  front.previous = std::move(front.current);
  front.current = std::move(next);
  ++front.level;
  if (front.current.size() > 0 && front.current.test(front.current.size() - 1)) front.truncated = true;
}

}  // namespace

EnhancedLattice::EnhancedLattice(double p, double q, std::uint64_t seed, std::int64_t x_lo, std::int64_t x_hi)
    : p_(p), q_(q), seed_(seed), x_lo_(x_lo), x_hi_(x_hi) {
  require_probability(p, "p");
  require_probability(q, "q");
  if (x_hi < x_lo) throw InvalidArgument("empty lattice window");
  site_threshold_ = rng::Threshold::of(p);
}

std::uint64_t EnhancedLattice::site_word(std::int64_t level, std::int64_t abs_word) const {
  return rng::bernoulli_word(
      rng::derive(seed_, kSiteStream, static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(abs_word)),
      site_threshold_);
}

Bits EnhancedLattice::level_sites(std::int64_t level) const {
  Bits out(width());
  const std::int64_t first = floor_div64(x_lo_);
  const unsigned shift = static_cast<unsigned>(x_lo_ - first * 64);
  std::vector<std::uint64_t> raw((width() + shift + 63) / 64 + 1, 0);
  for (std::size_t k = 0; k + 1 < raw.size(); ++k) raw[k] = site_word(level, first + static_cast<std::int64_t>(k));
  for (std::size_t w = 0; w < out.word_count(); ++w) {
    out.word(w) = shift == 0 ? raw[w] : (raw[w] >> shift) | (raw[w + 1] << (64 - shift));
  }
  out.trim();
  return out;
}

bool EnhancedLattice::site_open(std::int64_t x, std::int64_t level) const {
  const std::int64_t w = floor_div64(x);
  return (site_word(level, w) >> (x - w * 64)) & 1U;
}

bool EnhancedLattice::row_open(std::int64_t level) const {
  if (level % 2 != 0) return false;
  return rng::to_unit(rng::derive(seed_, kRowStream, static_cast<std::uint64_t>(level))) < q_;
}

ReachableFront start_front(const EnhancedLattice& lattice, const Bits& start, std::int64_t level) {
  if (start.size() != lattice.width()) throw InvalidArgument("start set does not match the lattice window");
  ReachableFront f;
  f.level = level;
  f.previous = Bits(lattice.width());
  f.current = fill_up(start, lattice.level_sites(level));
  f.truncated = f.current.test(lattice.width() - 1);
  return f;
}

ReachableFront evolve_front(const EnhancedLattice& lattice, const ReachableFront& front) {
  ReachableFront next = front;
  advance(next, lattice.level_sites(front.level + 1), lattice.row_open(front.level - 1));
  return next;
}

std::int64_t edge_window_half_width(double p, int n_max) {
  if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("edge processes need p in (0,1)");
  const auto c = static_cast<std::int64_t>(std::ceil(2.0 / (1.0 - p))) + 2;
  return c * std::max(n_max, 1);
}

std::vector<std::int64_t> overshoot_bound(const EnhancedLattice& lattice, std::int64_t x0, int n_max) {
  std::vector<std::int64_t> b(static_cast<std::size_t>(n_max + 1));
  std::int64_t x = x0;
  for (int k = 0; k <= n_max; ++k) {
    if (lattice.p() >= 1.0) throw InvalidArgument("overshoot bound is infinite at p = 1");
    while (lattice.site_open(x + 1, k)) ++x;
    b[static_cast<std::size_t>(k)] = x;
  }
  return b;
}

EdgeProcesses edge_processes(const EnhancedLattice& lattice, int n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  if (lattice.x_lo() > 0 || lattice.x_hi() < 0) throw InvalidArgument("window must contain column 0");
  const std::size_t width = lattice.width();
  const auto zero = static_cast<std::size_t>(-lattice.x_lo());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  Bits left_start(width), right_start(width);
  left_start.set_range(0, zero);
  right_start.set_range(zero, width - 1);
  // Paths from columns left of the window stay at or below this bound.
  const auto outside = overshoot_bound(lattice, lattice.x_lo() - 1, n_max);

  EdgeProcesses out;
  out.r.resize(static_cast<std::size_t>(n_max + 1));
  out.l.resize(static_cast<std::size_t>(n_max + 1));
  ReachableFront rf, lf;
  for (int k = 0; k <= n_max; ++k) {
    const Bits open = lattice.level_sites(k);
    if (k == 0) {
      rf = {0, Bits(width), fill_up(left_start, open), false};
      lf = {0, Bits(width), fill_up(right_start, open), false};
      rf.truncated = rf.current.test(width - 1);
    } else {
      const bool jump = lattice.row_open(k - 2);
      advance(rf, open, jump);
      advance(lf, open, jump);
    }
    const auto r_hi = rf.current.highest();
    const auto l_lo = lf.current.lowest();
    const double r = r_hi ? column(lattice, *r_hi) : -kInf;
    out.r[static_cast<std::size_t>(k)] = r;
    out.l[static_cast<std::size_t>(k)] = l_lo ? column(lattice, *l_lo) : kInf;
    if (rf.truncated || r <= static_cast<double>(outside[static_cast<std::size_t>(k)]) || !l_lo) out.truncated = true;
  }
  return out;
}

EdgeProcesses edge_processes(double p, double q, int n_max, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("edge processes need p in (0,1)");
  if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("edge processes need q in [0,1)");
  const std::int64_t half = edge_window_half_width(p, n_max);
  return edge_processes(EnhancedLattice(p, q, seed, -half, half), n_max);
}

EdgeSpeedEstimate edge_speed_estimate(double p, double q, int n, int reps, std::uint64_t seed, int threads) {
  if (n < 1) throw InvalidArgument("edge speed needs n >= 1");
  if (reps < 1) throw InvalidArgument("reps must be positive");
  const auto levels = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> r_ratio(static_cast<std::size_t>(reps));
  std::vector<double> l_final(static_cast<std::size_t>(reps));
  std::vector<char> truncated(static_cast<std::size_t>(reps), 0);
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t i) {
    const EdgeProcesses ep = edge_processes(p, q, 2 * n, rng::derive(seed, i));
    truncated[i] = ep.truncated;
    auto& row = r_ratio[i];
    row.resize(levels);
    for (std::size_t m = 1; m <= levels; ++m) row[m - 1] = ep.r[2 * m] / static_cast<double>(2 * m);
    l_final[i] = ep.l[2 * levels] / static_cast<double>(2 * n);
  });

  EdgeSpeedEstimate est;
  std::vector<double> alpha, beta;
  std::vector<double> sums(levels, 0.0);
  for (std::size_t i = 0; i < r_ratio.size(); ++i) {
    if (truncated[i]) {
      ++est.excluded;
      continue;
    }
    alpha.push_back(r_ratio[i].back());
    beta.push_back(l_final[i]);
    for (std::size_t m = 0; m < levels; ++m) sums[m] += r_ratio[i][m];
  }
  if (est.excluded * 100 > reps) {
    throw ResourceError(std::to_string(est.excluded) + " of " + std::to_string(reps) +
                        " edge-speed replicates hit the window boundary");
  }
  est.alpha = summarize(alpha);
  est.beta = summarize(beta);
  est.alpha_subadditive = std::numeric_limits<double>::infinity();
  for (double s : sums) est.alpha_subadditive = std::min(est.alpha_subadditive, s / static_cast<double>(alpha.size()));
  return est;
}

Parallelogram::Parallelogram(Vec2 u, Vec2 v, Vec2 base) : u_(u), v_(v), base_(base), det_(u.x * v.y - u.y * v.x) {
  if (!(det_ > 0.0)) throw InvalidArgument("parallelogram generators need det(u, v) > 0");
}

bool Parallelogram::contains(std::int64_t x, std::int64_t y) const {
  const double zx = static_cast<double>(x) - base_.x, zy = static_cast<double>(y) - base_.y;
  const double cs = zx * v_.y - zy * v_.x;
  const double ct = u_.x * zy - u_.y * zx;
  return cs >= 0.0 && cs < det_ && ct >= 0.0 && ct < det_;
}

Vec2 Parallelogram::coordinates(double x, double y) const {
  const double zx = x - base_.x, zy = y - base_.y;
  return {(zx * v_.y - zy * v_.x) / det_, (u_.x * zy - u_.y * zx) / det_};
}

std::int64_t Parallelogram::x_min() const {
  return static_cast<std::int64_t>(std::floor(base_.x + std::min({0.0, u_.x, v_.x, u_.x + v_.x})));
}
std::int64_t Parallelogram::x_max() const {
  return static_cast<std::int64_t>(std::ceil(base_.x + std::max({0.0, u_.x, v_.x, u_.x + v_.x})));
}
std::int64_t Parallelogram::y_min() const {
  return static_cast<std::int64_t>(std::floor(base_.y + std::min({0.0, u_.y, v_.y, u_.y + v_.y})));
}
std::int64_t Parallelogram::y_max() const {
  return static_cast<std::int64_t>(std::ceil(base_.y + std::max({0.0, u_.y, v_.y, u_.y + v_.y})));
}

namespace {

struct Strips {
  std::int64_t x0 = 0, y0 = 0;
  std::size_t width = 0;
  std::vector<Bits> inside, start, end;  // one per row from y0
};

// Points of R at distance < band from the start and end sides, with the band
// grown one unit at a time until each strip is nonempty.
Strips rasterize(const Parallelogram& r, Direction dir, double band) {
  if (!(band > 0.0)) throw InvalidArgument("band width must be positive");
  Strips s;
  s.x0 = r.x_min();
  s.y0 = r.y_min();
  s.width = static_cast<std::size_t>(r.x_max() - s.x0 + 1);
  const auto rows = static_cast<std::size_t>(r.y_max() - s.y0 + 1);
  s.inside.assign(rows, Bits(s.width));
  s.start = s.end = s.inside;

  const double det = r.det();
  const double side = dir == Direction::up ? std::hypot(r.u().x, r.u().y) : std::hypot(r.v().x, r.v().y);
  struct Point {
    std::size_t row, col;
    double from_start, from_end;
  };
  std::vector<Point> pts;
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t col = 0; col < s.width; ++col) {
      const std::int64_t x = s.x0 + static_cast<std::int64_t>(col), y = s.y0 + static_cast<std::int64_t>(row);
      if (!r.contains(x, y)) continue;
      s.inside[row].set(col);
      const Vec2 st = r.coordinates(static_cast<double>(x), static_cast<double>(y));
      const double c = dir == Direction::up ? st.y : st.x;
      double a = c * det / side, b = (1.0 - c) * det / side;
      if (dir == Direction::left) std::swap(a, b);
      pts.push_back({row, col, a, b});
    }
  }
  if (pts.empty()) throw DegenerateRegion("parallelogram contains no lattice points");
  auto fill = [&](std::vector<Bits>& strip, double Point::*dist) {
    for (double d = band;; d += 1.0) {
      bool any = false;
      for (const auto& pt : pts) {
        if (pt.*dist < d) {
          strip[pt.row].set(pt.col);
          any = true;
        }
      }
      if (any) return;
    }
  };
  fill(s.start, &Point::from_start);
  fill(s.end, &Point::from_end);
  return s;
}

}  // namespace

bool crossing_event(const EnhancedLattice& lattice, const Parallelogram& region, Direction dir, double band) {
  const Strips s = rasterize(region, dir, band);
  const std::int64_t x_end = s.x0 + static_cast<std::int64_t>(s.width) - 1;
  if (s.x0 < lattice.x_lo() || x_end > lattice.x_hi()) throw InvalidArgument("parallelogram lies outside the lattice window");
  const auto offset = static_cast<std::size_t>(s.x0 - lattice.x_lo());

  Bits prev2(s.width), prev1(s.width);
  for (std::size_t row = 0; row < s.inside.size(); ++row) {
    const std::int64_t y = s.y0 + static_cast<std::int64_t>(row);
    const Bits sites = lattice.level_sites(y);
    Bits open(s.width);
    for (std::size_t c = 0; c < s.width; ++c) {
      if (s.inside[row].test(c) && sites.test(offset + c)) open.set(c);
    }
    Bits seeds = prev1;
    if (lattice.row_open(y - 2)) seeds |= prev2;
    seeds &= open;
    seeds |= s.start[row];
    Bits reach = fill_up(seeds, open);
    Bits hit = reach;
    hit &= s.end[row];
    if (hit.any()) return true;
    prev2 = std::move(prev1);
    prev1 = std::move(reach);
  }
  return false;
}

Estimate crossing_probability(const Parallelogram& region, Direction dir, double p, double q, int reps,
                              std::uint64_t seed, double band, int threads) {
  require_probability(p, "p");
  require_probability(q, "q");
  if (reps < 1) throw InvalidArgument("reps must be positive");
  std::vector<double> hits(static_cast<std::size_t>(reps));
  parallel_for(hits.size(), threads, [&](std::size_t i) {
    const EnhancedLattice lat(p, q, rng::derive(seed, i), region.x_min(), region.x_max());
    hits[i] = crossing_event(lat, region, dir, band) ? 1.0 : 0.0;
  });
  return summarize(hits);
}

DefectsRun defects_realization(double p, double delta, int width, int n_max, std::uint64_t seed) {
  require_probability(p, "p");
  if (!(delta >= 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in [0,1)");
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  if (width <= 0) width = n_max + 1;
  const auto w = static_cast<std::size_t>(width);
  Bits cur(w);
  cur.set(0);
  DefectsRun run;
  for (int n = 0; n < n_max; ++n) {
    int xi = 0;
    if (delta > 0.0) {
      const double u = 1.0 - rng::to_unit(rng::derive(seed, 3, static_cast<std::uint64_t>(n)));
      xi = static_cast<int>(std::min(1e6, std::floor(std::log(u) / std::log(delta))));
    }
    const rng::Threshold t = rng::Threshold::of(std::pow(p, xi + 1));
    if (cur.test(w - 1)) run.truncated = true;
    Bits up(w), diag(w);
    for (std::size_t k = 0; k < up.word_count(); ++k) {
      up.word(k) = rng::bernoulli_word(rng::derive(seed, 1, static_cast<std::uint64_t>(n), k), t);
      diag.word(k) = rng::bernoulli_word(rng::derive(seed, 2, static_cast<std::uint64_t>(n), k), t);
    }
    up &= cur;
    diag &= cur;
    cur = up | diag.shifted_up();
    if (!cur.any()) return run;
  }
  run.survived = cur.any();
  return run;
}

DefectsEstimate defects_survival(double p, double delta, int width, int n_max, int reps, std::uint64_t seed,
                                 int threads) {
  if (reps < 1) throw InvalidArgument("reps must be positive");
  std::vector<DefectsRun> runs(static_cast<std::size_t>(reps));
  parallel_for(runs.size(), threads, [&](std::size_t i) {
    runs[i] = defects_realization(p, delta, width, n_max, rng::derive(seed, i));
  });
  DefectsEstimate est;
  std::vector<double> alive;
  for (const auto& r : runs) {
    alive.push_back(r.survived ? 1.0 : 0.0);
    if (r.truncated) ++est.truncated;
  }
  est.survival = summarize(alive);
  return est;
}

}  // namespace catperc
