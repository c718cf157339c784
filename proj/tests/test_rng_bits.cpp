#include "catperc/bits.hpp"
#include "catperc/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace catperc;

TEST_CASE("derive and to_unit are deterministic and in range") {
  CHECK(rng::derive(7, 3) == rng::derive(7, 3));
  CHECK(rng::derive(7, 3) != rng::derive(7, 4));
  CHECK(rng::derive(7, 3, 5) == rng::derive(rng::derive(7, 3), 5));
  rng::Stream s(42);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("bernoulli_word has the right density and is monotone in p") {
  for (double p : {0.0, 0.1, 0.5, 0.7055, 0.99, 1.0}) {
    long ones = 0;
    const int words = 4000;
    for (int w = 0; w < words; ++w) ones += std::popcount(rng::bernoulli_word(rng::derive(9, w), rng::Threshold::of(p)));
    const double rate = static_cast<double>(ones) / (64.0 * words);
    const double se = std::sqrt(p * (1 - p) / (64.0 * words));
    CHECK(std::abs(rate - p) <= 5 * se + 1e-12);
  }
  for (int w = 0; w < 2000; ++w) {
    const auto key = rng::derive(11, w);
    std::uint64_t prev = 0;
    for (int k = 0; k <= 20; ++k) {
      const auto cur = rng::bernoulli_word(key, rng::Threshold::of(k / 20.0));
      REQUIRE((prev & ~cur) == 0);
      prev = cur;
    }
  }
}

namespace {

Bits random_bits(std::size_t n, std::uint64_t key, double density) {
  Bits b(n);
  rng::Stream s(key);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.uniform() < density) b.set(i);
  }
  return b;
}

}  // namespace

TEST_CASE("fill_up matches a sequential scan") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 200;
    const Bits open = random_bits(n, trial, 0.8);
    const Bits seeds = random_bits(n, trial + 1000, 0.05);
    Bits expect(n);
    bool on = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (seeds.test(i)) {
        on = true;
      } else if (!open.test(i)) {
        on = false;
      }
      if (on) expect.set(i);
    }
    REQUIRE(fill_up(seeds, open) == expect);
  }
}

TEST_CASE("Bits basics") {
  Bits b(130);
  CHECK_FALSE(b.any());
  b.set_range(3, 70);
  CHECK(b.count() == 68);
  CHECK(*b.lowest() == 3);
  CHECK(*b.highest() == 70);
  const Bits up = b.shifted_up();
  CHECK(*up.lowest() == 4);
  CHECK(*up.highest() == 71);
  Bits top(130);
  top.set(129);
  CHECK(top.shifted_up().count() == 0);
  Bits c(130);
  c.or_range(b, 60, 100);
  CHECK(c.count() == 11);
  CHECK(c.subset_of(b));
  CHECK_FALSE(b.subset_of(c));
}
