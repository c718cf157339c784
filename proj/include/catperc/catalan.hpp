#pragma once

#include "catperc/bits.hpp"
#include "catperc/rational_poly.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace catperc {

/// Full or truncated mediator rule. Under truncated(L) the edge {i,j} may only
/// be occupied through a mediator k with k - i <= L or j - k <= L.
class TruncationRule {
 public:
  static TruncationRule full() { return TruncationRule(0); }
  static TruncationRule truncated(int L);

  bool is_full() const { return limit_ == 0; }
  int limit() const { return limit_; }
  bool admits(int i, int k, int j) const {
    return is_full() || k - i <= limit_ || j - k <= limit_;
  }

 private:
  explicit TruncationRule(int limit) : limit_(limit) {}
  int limit_;
};

/// Uniform labels u(i,j) for every pair 0 <= i < j <= n with j - i >= 2.
/// Sampled labels depend only on (seed, i, j), so the field of a smaller
/// window is the restriction of a larger one drawn with the same seed.
class CouplingField {
 public:
  /// Labels from a labelling function; used by couplings and tests.
  static CouplingField from_labels(int n, const std::function<double(int, int)>& label);

  int n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  double u(int i, int j) const { return labels_[index(i, j)]; }
  bool open(int i, int j, double p) const { return u(i, j) <= p; }

  friend bool operator==(const CouplingField&, const CouplingField&) = default;
  friend CouplingField sample_field(int n, std::uint64_t seed);

 private:
  CouplingField(int n, std::uint64_t seed);
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> labels_;  // dense (n+1)^2, only i < j - 1 used
};

/// Draws a field on [0, n]. Throws InvalidArgument when n < 2.
CouplingField sample_field(int n, std::uint64_t seed);

/// Occupation state of every edge {i,j}, 0 <= i < j <= n, at one parameter p.
class OccupationTable {
 public:
  int n() const { return n_; }
  bool occupied(int i, int j) const { return rows_[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j)); }
  /// Row i as a bit vector indexed by j.
  const Bits& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  friend OccupationTable occupy(const CouplingField&, double, const TruncationRule&);

 private:
  explicit OccupationTable(int n);
  int n_;
  std::vector<Bits> rows_;
};

/// Occupied edges at parameter p: nearest-neighbour edges always, and an open
/// edge {i,j} whenever an admissible mediator k has {i,k} and {k,j} occupied.
OccupationTable occupy(const CouplingField& field, double p, const TruncationRule& rule);

/// Minimal p at which each edge is occupied on the shared field.
class ThresholdTable {
 public:
  int n() const { return n_; }
  bool conditioned() const { return conditioned_; }
  /// Occupation threshold: occupied at p iff p >= t(i,j).
  double t(int i, int j) const { return t_[index(i, j)]; }
  /// Mediated part min_k max(t(i,k), t(k,j)); the threshold of {i,j} given
  /// that {i,j} itself is open. Zero for nearest-neighbour edges.
  double mediated(int i, int j) const { return mediated_[index(i, j)]; }
  /// t(0, n): the window's reported critical value.
  double top() const { return t(0, n_); }

  friend ThresholdTable threshold_table(const CouplingField&, const TruncationRule&, bool);

 private:
  ThresholdTable(int n, bool conditioned);
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(j);
  }
  int n_;
  bool conditioned_;
  std::vector<double> t_;
  std::vector<double> mediated_;
};

/// t(i,j) = max(u(i,j), min over admissible k of max(t(i,k), t(k,j))).
/// With `conditioned`, the top edge's own label is treated as 0.
ThresholdTable threshold_table(const CouplingField& field, const TruncationRule& rule, bool conditioned);

/// Largest window handled by exact_theta_poly.
inline constexpr int kExactThetaMaxN = 8;

/// theta_n(p), the probability that {0,n} is occupied, as an exact polynomial.
/// theta_1 = 1. Throws ResourceError for n > kExactThetaMaxN.
RationalPoly exact_theta_poly(int n);

/// Power-series coefficients of theta_n at p^0 .. p^k_max, enumerating only
/// configurations with at most k_max open edges. Throws ResourceError when the
/// enumeration would exceed its budget.
std::vector<Integer> exact_theta_coeffs(int n, int k_max);

}  // namespace catperc
