#include "catperc/rational_poly.hpp"

#include "catperc/errors.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace catperc {

namespace {

int sign(const Rational& r) { return r.sign(); }

std::string magnitude_string(const Rational& c) {
  Rational a = abs(c);
  return to_string(a);
}

std::string power_string(std::string_view var, std::size_t k) {
  std::string s(var);
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

// Appends one signed term to `out`; `vars` is the monomial without coefficient.
void append_term(std::string& out, const Rational& c, const std::string& vars) {
  const bool neg = sign(c) < 0;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  const bool unit = abs(c) == 1;
  if (vars.empty()) {
    out += magnitude_string(c);
  } else if (unit) {
    out += vars;
  } else {
    out += magnitude_string(c) + "*" + vars;
  }
}

int sign_variations(const RationalPoly& p) {
  int variations = 0;
  int last = 0;
  for (const auto& c : p.coeffs()) {
    const int s = sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

// Descartes bound on the number of roots of `p` in the open interval (a, b).
int descartes_count(const RationalPoly& p, const Rational& a, const Rational& b) {
  const RationalPoly t = p.taylor_shift(a).scaled(b - a);
  std::vector<Rational> c = t.coeffs();
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == 0) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  RationalPoly stripped(std::move(c));
  return sign_variations(stripped.reversed().taylor_shift(Rational(1)));
}

void isolate_open(const RationalPoly& sq, const Rational& a, const Rational& b,
                  std::vector<RootInterval>& out) {
  const int v = descartes_count(sq, a, b);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, b});
    return;
  }
  const Rational m = (a + b) / 2;
  isolate_open(sq, a, m, out);
  if (sq(m) == 0) out.push_back({m, m});
  isolate_open(sq, m, b, out);
}

}  // namespace

RationalPoly::RationalPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {
  normalize();
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

double RationalPoly::eval(double x) const {
  long double acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc = acc * x + coeffs_[k].convert_to<long double>();
  }
  return static_cast<double>(acc);
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::truncated(std::size_t k_max) const {
  std::vector<Rational> v(coeffs_.begin(),
                          coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(coeffs_.size(), k_max + 1)));
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * static_cast<long long>(k);
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::taylor_shift(const Rational& shift) const {
  // Horner-style synthetic division, O(d^2).
  std::vector<Rational> c = coeffs_;
  if (shift == 0 || c.size() <= 1) return *this;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k-- > i;) c[k] += shift * c[k + 1];
  }
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::scaled(const Rational& scale) const {
  std::vector<Rational> c = coeffs_;
  Rational f = 1;
  for (auto& x : c) {
    x *= f;
    f *= scale;
  }
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::reversed() const {
  return RationalPoly(std::vector<Rational>(coeffs_.rbegin(), coeffs_.rend()));
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

std::string RationalPoly::to_string(std::string_view var) const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    append_term(out, coeffs_[k], k == 0 ? std::string() : power_string(var, k));
  }
  return out.empty() ? "0" : out;
}

DivMod divmod(const RationalPoly& num, const RationalPoly& den) {
  if (den.is_zero()) throw InvalidArgument("polynomial division by zero");
  std::vector<Rational> r = num.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {RationalPoly{}, num};
  std::vector<Rational> q(static_cast<std::size_t>(num.degree() - dd + 1));
  const Rational& lead = den.leading();
  for (int k = num.degree(); k >= dd; --k) {
    const Rational c = r[static_cast<std::size_t>(k)] / lead;
    q[static_cast<std::size_t>(k - dd)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      r[static_cast<std::size_t>(k - dd + j)] -= c * den.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return {RationalPoly(std::move(q)), RationalPoly(std::move(r))};
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    RationalPoly r = divmod(x, y).remainder.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.degree() <= 0) return p;
  const RationalPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

BiPoly::BiPoly(std::vector<RationalPoly> x_coeffs) : x_coeffs_(std::move(x_coeffs)) {
  while (!x_coeffs_.empty() && x_coeffs_.back().is_zero()) x_coeffs_.pop_back();
}

RationalPoly BiPoly::x_coeff(std::size_t k) const {
  return k < x_coeffs_.size() ? x_coeffs_[k] : RationalPoly{};
}

RationalPoly BiPoly::at_p(const Rational& p) const {
  std::vector<Rational> c;
  c.reserve(x_coeffs_.size());
  for (const auto& poly : x_coeffs_) c.push_back(poly(p));
  return RationalPoly(std::move(c));
}

RationalPoly BiPoly::at_x(const Rational& x) const {
  RationalPoly acc;
  for (std::size_t k = x_coeffs_.size(); k-- > 0;) {
    acc = acc * RationalPoly::constant(x) + x_coeffs_[k];
  }
  return acc;
}

double BiPoly::eval(double p, double x) const {
  long double acc = 0;
  for (std::size_t k = x_coeffs_.size(); k-- > 0;) acc = acc * x + x_coeffs_[k].eval(p);
  return static_cast<double>(acc);
}

std::string BiPoly::to_string() const {
  std::string out;
  for (std::size_t b = 0; b < x_coeffs_.size(); ++b) {
    const auto& poly = x_coeffs_[b];
    for (std::size_t a = 0; a < poly.coeffs().size(); ++a) {
      const Rational& c = poly.coeffs()[a];
      if (c == 0) continue;
      std::string vars;
      if (a > 0) vars = power_string("p", a);
      if (b > 0) vars += (vars.empty() ? "" : "*") + power_string("x", b);
      append_term(out, c, vars);
    }
  }
  return out.empty() ? "0" : out;
}

double RootInterval::midpoint() const { return to_double((lo + hi) / 2); }

Rational root_bound(const RationalPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    const Rational r = abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading());
    if (r > m) m = r;
  }
  // Rounded up to a power of two so bisection midpoints stay dyadic.
  Rational bound = 1;
  while (bound <= m + 1) bound *= 2;
  return bound;
}

std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw InvalidArgument("cannot isolate roots of the zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0 || !(lo < hi)) return out;
  const RationalPoly sq = squarefree_part(p);
  isolate_open(sq, lo, hi, out);
  if (sq(hi) == 0) out.push_back({hi, hi});
  return out;
}

RootInterval refine_root(const RationalPoly& p, RootInterval r, const Rational& width) {
  if (r.exact()) return r;
  const RationalPoly sq = squarefree_part(p);
  const int s_lo = sign(sq(r.lo));
  while (r.width() > width) {
    const Rational m = (r.lo + r.hi) / 2;
    const int s = sign(sq(m));
    if (s == 0) return {m, m};
    if (s == s_lo) {
      r.lo = m;
    } else {
      r.hi = m;
    }
  }
  return r;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  exp -= 53;
  if (exp >= 0) {
    r *= Rational(Integer(1) << exp);
  } else {
    r /= Rational(Integer(1) << (-exp));
  }
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

}  // namespace catperc
