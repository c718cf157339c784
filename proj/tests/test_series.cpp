#include "catperc/catalan.hpp"
#include "catperc/errors.hpp"
#include "catperc/series.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace catperc;

namespace {

Integer binomial(int n, int k) {
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const RationalPoly kP{0, 1};

}  // namespace

TEST_CASE("catalan numbers") {
  CHECK(catalan_numbers(0) == std::vector<Integer>{1});
  CHECK(catalan_numbers(4) == std::vector<Integer>{1, 1, 2, 5, 14});
  const auto c = catalan_numbers(30);
  Integer four_pow = 1;
  for (int n = 0; n <= 30; ++n) {
    CHECK(c[static_cast<std::size_t>(n)] * (n + 1) == binomial(2 * n, n));
    CHECK(c[static_cast<std::size_t>(n)] <= four_pow);
    four_pow *= 4;
  }
  CHECK_THROWS_AS(catalan_numbers(-1), InvalidArgument);
}

TEST_CASE("a-sequence") {
  const auto c = catalan_numbers(15);
  const ASequence a1 = a_sequence(1, 16), a2 = a_sequence(2, 16);
  for (int n = 1; n <= 16; ++n) {
    CHECK(a1[n] == RationalPoly::monomial(Rational(c[static_cast<std::size_t>(n - 1)]), static_cast<std::size_t>(n - 1)));
    CHECK(a2[n] == a1[n]);
  }
  const ASequence a3 = a_sequence(3, 10);
  CHECK(a3[4] == RationalPoly{0, 0, 0, 5, -2});
  for (int n = 1; n <= 3; ++n) CHECK(a3[n] == exact_theta_poly(n));
  for (int n = 4; n <= 10; ++n) {
    RationalPoly s;
    for (int k = 1; k < n; ++k) s += a3[k] * a3[n - k];
    CHECK(a3[n] == kP * s);
  }
  CHECK_THROWS_AS(a_sequence(0, 5), InvalidArgument);
  CHECK_THROWS_AS(a_sequence(9, 12), InvalidArgument);
}

TEST_CASE("discriminants") {
  CHECK(discriminant(1).delta.to_string() == "1 - 4*p*x");
  CHECK(discriminant(2).delta == discriminant(1).delta);
  CHECK(discriminant(3).delta.to_string() == "1 - 4*p*x + 4*p^4*x^3");
}

TEST_CASE("generating function solves the quadratic through x^12") {
  // Q = (1 - Delta) / (4p); X = Q + p X^2 by fixed-point iteration on power series.
  const BiPoly delta = discriminant(3).delta;
  const std::size_t order = 12;
  std::vector<RationalPoly> q(order + 1);
  for (std::size_t k = 1; k < delta.x_coeffs().size(); ++k) {
    const DivMod d = divmod(RationalPoly{} - delta.x_coeff(k), RationalPoly{0, 4});
    REQUIRE(d.remainder.is_zero());
    q[k] = d.quotient;
  }
  std::vector<RationalPoly> x(order + 1);
  for (std::size_t iter = 0; iter <= order; ++iter) {
    std::vector<RationalPoly> next = q;
    for (std::size_t i = 1; i <= order; ++i) {
      for (std::size_t j = 1; i + j <= order; ++j) next[i + j] += kP * x[i] * x[j];
    }
    x = next;
  }
  const ASequence a = a_sequence(3, static_cast<int>(order));
  for (std::size_t n = 1; n <= order; ++n) CHECK(x[n] == a[static_cast<int>(n)]);
}

TEST_CASE("a-sequence dominates theta and decreases with the cutoff") {
  const ASequence a3 = a_sequence(3, 7);
  for (int n = 1; n <= 7; ++n) {
    const RationalPoly theta = exact_theta_poly(n);
    for (int k = 1; k <= 19; ++k) CHECK(a3[n](Rational(k, 20)) >= theta(Rational(k, 20)));
  }
  for (int n0 = 1; n0 <= 4; ++n0) {
    const ASequence lo = a_sequence(n0 + 1, 7), hi = a_sequence(n0, 7);
    for (int n = 1; n <= 7; ++n) {
      const RationalPoly diff = hi[n] - lo[n];
      if (diff.is_zero()) continue;
      for (int k = 0; k <= 200; ++k) CHECK(diff(Rational(k, 200)) >= 0);
      // Sign can only change at a root; check one point strictly inside each gap.
      const auto roots = isolate_roots(diff, Rational(0), Rational(1));
      Rational left = 0;
      for (const auto& r : roots) {
        if (r.lo > left) CHECK(diff((left + r.lo) / 2) >= 0);
        left = r.hi;
      }
    }
  }
  double prev = 0;
  for (int n0 = 1; n0 <= 6; ++n0) {
    const double b = to_double(lower_bound_pm(n0, Rational(1, 1'000'000'000)).lo);
    CHECK(b >= prev - 1e-9);
    prev = b;
  }
}

TEST_CASE("radius of convergence") {
  const Radius r1 = radius(1, Rational(1, 4));
  REQUIRE_FALSE(r1.infinite());
  CHECK(r1.root->exact());
  CHECK(r1.root->lo == 1);
  double prev = 0;
  for (int k = 1; k <= 6; ++k) {
    const double r = radius(3, Rational(1, static_cast<long>(std::pow(10, k)))).value();
    CHECK(r > prev);
    prev = r;
  }
  CHECK(prev > 1e5);
  const RootInterval p3 = lower_bound_pm(3, Rational(1, 1'000'000'000'000LL));
  CHECK(radius(3, p3.lo).value() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(radius(3, p3.hi).value() == doctest::Approx(1.0).epsilon(1e-8));
  prev = INFINITY;
  for (int k = 1; k <= 20; ++k) {
    const double r = radius(3, Rational(k, 20)).value();
    CHECK(r <= prev);
    prev = r;
  }
  const Discriminant never{1, BiPoly({RationalPoly{1}, RationalPoly{}, RationalPoly{0, 1}})};
  CHECK(radius(never, Rational(1, 2)).infinite());
  CHECK_THROWS_AS(radius(3, Rational(0)), InvalidArgument);
}

TEST_CASE("certified lower bounds") {
  const RootInterval b1 = lower_bound_pm(1, Rational(1, 1'000'000));
  CHECK(b1.lo == Rational(1, 4));
  CHECK(b1.hi == Rational(1, 4));
  const RootInterval b2 = lower_bound_pm(2, Rational(1, 1'000'000));
  CHECK(b2.lo == Rational(1, 4));
  CHECK(b2.hi == Rational(1, 4));
  const RootInterval b3 = lower_bound_pm(3, Rational(1, 1'000'000));
  CHECK(b3.width() <= Rational(1, 1'000'000));
  CHECK(b3.lo > Rational(254, 1000));
  CHECK(b3.hi < Rational(2549, 10000));
  // Independent bisection on 4p^4 - 4p + 1 in doubles.
  double lo = 0.2, hi = 0.3;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (4 * std::pow(mid, 4) - 4 * mid + 1 > 0 ? lo : hi) = mid;
  }
  CHECK(to_double(b3.lo) <= hi);
  CHECK(to_double(b3.hi) >= lo);
}

TEST_CASE("numeric lower bound from exact theta") {
  const auto m1 = lower_bound_mc(exact_theta_provider(1), 1);
  CHECK(std::abs(m1.estimate - 0.25) < 1e-3);
  CHECK(m1.lo <= 0.25 + 1e-4);
  CHECK(m1.hi >= 0.25 - 1e-4);
  const double p3 = to_double(lower_bound_pm(3, Rational(1, 1'000'000'000)).lo);
  const auto m3 = lower_bound_mc(exact_theta_provider(3), 3);
  CHECK(std::abs(m3.estimate - p3) < 2e-4);
  const auto g_lo = estimate_growth(exact_theta_provider(3), 3, 0.2);
  const auto g_hi = estimate_growth(exact_theta_provider(3), 3, 0.3);
  CHECK(g_lo.radius_above_one());
  CHECK_FALSE(g_hi.radius_above_one());
  CHECK_THROWS_AS(estimate_growth(exact_theta_provider(3), 3, 0.2, {4}), InvalidArgument);
}

TEST_CASE("theta-hat tables") {
  std::vector<ThetaEstimate> rows{{2, 0.2, 0.2, 0.0}, {2, 0.4, 0.4, 0.0}, {3, 0.2, 0.072, 0.001}, {3, 0.4, 0.256, 0.002}};
  std::stringstream ss;
  write_theta_csv(ss, rows);
  const auto back = read_theta_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].p == rows[i].p);
    CHECK(back[i].theta_hat == rows[i].theta_hat);
    CHECK(back[i].std_error == rows[i].std_error);
  }
  const ThetaProvider t = theta_provider_from_table(back);
  CHECK(t(1, 0.3) == 1.0);
  CHECK(t(2, 0.3) == doctest::Approx(0.3));
  CHECK(t(3, 0.3) == doctest::Approx(0.164));
  CHECK(t(3, 0.1) == doctest::Approx(0.072));
  CHECK_THROWS_AS(t(4, 0.3), InvalidArgument);
  std::stringstream bad("n,p,theta_hat\n2,0.1,0.1\n");
  CHECK_THROWS_AS(read_theta_csv(bad), InvalidArgument);
  std::stringstream junk("n,p,theta_hat,stderr\n2,abc,0.1,0\n");
  CHECK_THROWS_AS(read_theta_csv(junk), InvalidArgument);
}
