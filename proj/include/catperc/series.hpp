#pragma once

#include "catperc/rational_poly.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace catperc {

/// C_0 .. C_{k_max}.
std::vector<Integer> catalan_numbers(int k_max);

/// Upper bounds a_n on theta_n: exact theta_n for n <= n0, then the
/// union-bound convolution a_n = p * sum_{k=1}^{n-1} a_k a_{n-k}.
class ASequence {
 public:
  int n0() const { return n0_; }
  int length() const { return static_cast<int>(polys_.size()) - 1; }
  /// a_n for 1 <= n <= length().
  const RationalPoly& operator[](int n) const { return polys_[static_cast<std::size_t>(n)]; }

  friend ASequence a_sequence(int n0, int length);

 private:
  int n0_ = 0;
  std::vector<RationalPoly> polys_;  // index 0 unused
};

ASequence a_sequence(int n0, int length);

/// Delta(p,x) = 1 - 4 p Q(p,x) for the quadratic p X^2 - X + Q(p,x) = 0 solved
/// by the generating function of the a-sequence with cutoff n0.
struct Discriminant {
  int n0 = 0;
  BiPoly delta;
};

Discriminant discriminant(int n0);

/// Smallest positive root of x -> Delta(p,x); nullopt stands for +infinity.
struct Radius {
  std::optional<RootInterval> root;

  bool infinite() const { return !root.has_value(); }
  double value() const;
};

Radius radius(const Discriminant& d, const Rational& p, const Rational& precision = Rational(1, 1'000'000'000'000LL));
Radius radius(int n0, const Rational& p, const Rational& precision = Rational(1, 1'000'000'000'000LL));

/// Enclosure of the smallest positive root of p -> Delta(p,1), of width at
/// most `precision`: the certified lower bound p_{n0}.
RootInterval lower_bound_pm(int n0, const Rational& precision);

/// theta_n(p) supplied by exact polynomials, Monte Carlo tables or CSV input.
using ThetaProvider = std::function<double(int n, double p)>;

ThetaProvider exact_theta_provider(int n_max);

/// One row of a theta-hat table: columns n, p, theta_hat, stderr.
struct ThetaEstimate {
  int n = 0;
  double p = 0.0;
  double theta_hat = 0.0;
  double std_error = 0.0;
};

std::vector<ThetaEstimate> read_theta_csv(std::istream& in);
void write_theta_csv(std::ostream& out, const std::vector<ThetaEstimate>& rows);

/// Linear interpolation in p within each n; theta_1 = 1 when absent.
/// Queries outside a row's p-range clamp to the nearest grid point.
ThetaProvider theta_provider_from_table(std::vector<ThetaEstimate> rows);

struct RadiusClassifierOptions {
  int tail_length = 4000;  // N
};

/// Numeric growth-rate estimate for the a-sequence at a fixed p.
struct GrowthEstimate {
  double log_growth = 0.0;  // estimated log limsup a_n^{1/n}
  bool radius_above_one() const { return log_growth < 0.0; }
};

/// Runs the recurrence numerically to N terms in scaled long double, and fits
/// the slope of log(n^{3/2} a_n) over the last N/2 terms by least squares.
GrowthEstimate estimate_growth(const ThetaProvider& theta, int n0, double p,
                               const RadiusClassifierOptions& opts = {});

struct LowerBoundMcOptions {
  RadiusClassifierOptions classifier;
  double tolerance = 1e-4;
  double lo = 0.01;
  double hi = 0.99;
  int consistency_probes = 3;
};

struct LowerBoundMcResult {
  double estimate = 0.0;  // midpoint of [lo, hi]
  double lo = 0.0;
  double hi = 0.0;
  bool widened = false;  // classification was inconsistent; [lo, hi] was grown to cover it
  int evaluations = 0;
};

/// Bisects p for the sign change of the growth classifier.
LowerBoundMcResult lower_bound_mc(const ThetaProvider& theta, int n0, const LowerBoundMcOptions& opts = {});

}  // namespace catperc
