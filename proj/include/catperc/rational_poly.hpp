#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace catperc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact univariate polynomial with rational coefficients; index = degree.
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(std::initializer_list<Rational> coeffs);
  explicit RationalPoly(std::vector<Rational> coeffs);

  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of x^k (zero beyond the degree).
  Rational coeff(std::size_t k) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a) { return a * Rational(-1); }
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  /// Coefficients of x^0 .. x^k_max only.
  RationalPoly truncated(std::size_t k_max) const;
  RationalPoly derivative() const;
  /// x -> x + shift.
  RationalPoly taylor_shift(const Rational& shift) const;
  /// x -> scale * x.
  RationalPoly scaled(const Rational& scale) const;
  /// x^deg * P(1/x).
  RationalPoly reversed() const;
  /// Monic rescaling; zero stays zero.
  RationalPoly monic() const;

  /// Canonical ascending-degree sparse form, e.g. "2*p^2 - p^3".
  std::string to_string(std::string_view var = "p") const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  RationalPoly quotient;
  RationalPoly remainder;
};

DivMod divmod(const RationalPoly& num, const RationalPoly& den);
/// Monic greatest common divisor.
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
/// Product of the distinct irreducible factors: same real roots, all simple.
RationalPoly squarefree_part(const RationalPoly& p);

/// Polynomial in two variables stored as a polynomial in x whose
/// coefficients are polynomials in p.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<RationalPoly> x_coeffs);

  int x_degree() const { return static_cast<int>(x_coeffs_.size()) - 1; }
  /// Coefficient of x^k as a polynomial in p.
  RationalPoly x_coeff(std::size_t k) const;
  const std::vector<RationalPoly>& x_coeffs() const { return x_coeffs_; }

  /// Fix p; polynomial in x.
  RationalPoly at_p(const Rational& p) const;
  /// Fix x; polynomial in p.
  RationalPoly at_x(const Rational& x) const;
  double eval(double p, double x) const;

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  /// Ascending in x then in p, e.g. "1 - 4*p*x + 4*p^4*x^3".
  std::string to_string() const;

 private:
  std::vector<RationalPoly> x_coeffs_;
};

/// A real root enclosure. Either an exact rational root (lo == hi) or an
/// open interval (lo, hi) holding exactly one simple root.
struct RootInterval {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  double midpoint() const;
};

/// Isolates every real root of `p` in the half-open interval (lo, hi] using
/// Descartes' rule of signs on the square-free part with dyadic bisection.
/// Intervals are returned in increasing order.
std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& lo, const Rational& hi);

/// Shrinks an isolating interval of `p` by exact bisection until its width is
/// at most `width` (or an exact rational root is hit).
RootInterval refine_root(const RationalPoly& p, RootInterval r, const Rational& width);

/// Power of two above the Cauchy bound: every real root has |x| < bound.
Rational root_bound(const RationalPoly& p);

/// Rational exactly equal to the given double.
Rational to_rational(double x);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace catperc
