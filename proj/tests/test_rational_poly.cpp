#include "catperc/rational_poly.hpp"

#include <doctest.h>

using namespace catperc;

TEST_CASE("arithmetic and normal form") {
  const RationalPoly a{1, 2, 0};
  CHECK(a.degree() == 1);
  const RationalPoly b{Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
  CHECK((a * b).to_string("x") == "-1 - 2*x + x^2 + 2*x^3");
  CHECK((b - b).is_zero());
  CHECK((b - b).to_string() == "0");
  CHECK(RationalPoly{Rational(1, 2), Rational(-3, 4)}.to_string() == "1/2 - 3/4*p");
  CHECK(b(Rational(3)) == 8);
  CHECK(b.eval(0.5) == doctest::Approx(-0.75));
  CHECK(b.derivative() == RationalPoly{0, 2});
  CHECK(b.taylor_shift(1) == RationalPoly{0, 2, 1});
  CHECK(b.scaled(2) == RationalPoly{-1, 0, 4});
  CHECK(RationalPoly{1, 2, 3}.reversed() == RationalPoly{3, 2, 1});
  CHECK(RationalPoly{1, 2, 3, 4}.truncated(1) == RationalPoly{1, 2});
}

TEST_CASE("division, gcd, square-free part") {
  const RationalPoly x_minus_1{-1, 1}, x_plus_2{2, 1};
  const RationalPoly p = x_minus_1 * x_minus_1 * x_plus_2;
  const DivMod qr = divmod(p, x_minus_1);
  CHECK(qr.remainder.is_zero());
  CHECK(qr.quotient == x_minus_1 * x_plus_2);
  CHECK(gcd(p, p.derivative()) == x_minus_1);
  CHECK(squarefree_part(p) == (x_minus_1 * x_plus_2).monic());
  const DivMod r = divmod(RationalPoly{1, 0, 1}, RationalPoly{0, 2});
  CHECK(r.quotient == RationalPoly{0, Rational(1, 2)});
  CHECK(r.remainder == RationalPoly{1});
}

TEST_CASE("root isolation finds every root in the interval") {
  // (x - 1/3)(x - 1/2)(x - 2)(x + 1) with a repeated factor.
  const RationalPoly f = RationalPoly{Rational(-1, 3), 1} * RationalPoly{Rational(-1, 2), 1} * RationalPoly{-2, 1} *
                         RationalPoly{1, 1} * RationalPoly{-2, 1};
  const auto roots = isolate_roots(f, Rational(0), root_bound(f));
  REQUIRE(roots.size() == 3);
  const double expect[] = {1.0 / 3, 0.5, 2.0};
  for (std::size_t k = 0; k < 3; ++k) {
    const RootInterval r = refine_root(f, roots[k], Rational(1, 1'000'000'000));
    CHECK(r.lo <= to_rational(expect[k]) + Rational(1, 1'000'000'000));
    CHECK(r.midpoint() == doctest::Approx(expect[k]).epsilon(1e-9));
  }
  CHECK(isolate_roots(f, Rational(-2), Rational(0)).size() == 1);
  CHECK(isolate_roots(RationalPoly{1, 0, 1}, Rational(-10), Rational(10)).empty());
  // Half-open: the right endpoint is included.
  CHECK(isolate_roots(RationalPoly{-1, 1}, Rational(0), Rational(1)).size() == 1);
  CHECK(isolate_roots(RationalPoly{-1, 1}, Rational(1), Rational(2)).empty());
}

TEST_CASE("root bound is a power of two above every root") {
  const RationalPoly f{-1000, 0, 1};
  const Rational b = root_bound(f);
  CHECK(b > Rational(31));
  Integer num = numerator(b);
  CHECK(denominator(b) == 1);
  CHECK((num & (num - 1)) == 0);
}

TEST_CASE("irrational roots are enclosed to the requested width") {
  const RationalPoly f{-2, 0, 1};
  const auto roots = isolate_roots(f, Rational(0), root_bound(f));
  REQUIRE(roots.size() == 1);
  const RootInterval r = refine_root(f, roots[0], Rational(1, 1'000'000'000'000LL));
  CHECK(r.width() <= Rational(1, 1'000'000'000'000LL));
  CHECK(f(r.lo) * f(r.hi) <= 0);
  CHECK(r.midpoint() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("BiPoly evaluation and printing") {
  const BiPoly d({RationalPoly{1}, RationalPoly{0, -4}, RationalPoly{}, RationalPoly{0, 0, 0, 0, 4}});
  CHECK(d.to_string() == "1 - 4*p*x + 4*p^4*x^3");
  CHECK(d.at_x(Rational(1)) == RationalPoly{1, -4, 0, 0, 4});
  CHECK(d.at_p(Rational(1, 2)) == RationalPoly{1, -2, 0, Rational(1, 4)});
  CHECK(d.eval(0.5, 1.0) == doctest::Approx(1 - 2 + 0.25));
}

TEST_CASE("to_rational is exact") {
  CHECK(to_rational(0.25) == Rational(1, 4));
  CHECK(to_rational(-3.0) == Rational(-3));
  CHECK(to_double(to_rational(0.1)) == 0.1);
  CHECK(to_string(Rational(-7, 3)) == "-7/3");
}
