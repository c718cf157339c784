#include "catperc/rng.hpp"

#include <cmath>

namespace catperc::rng {

namespace {
constexpr int kPlanes = 53;
}

Threshold Threshold::of(double p) {
  Threshold t;
  if (p >= 1.0) {
    t.always = true;
  } else if (p > 0.0) {
    t.bits = static_cast<std::uint64_t>(std::ldexp(p, kPlanes));
  }
  return t;
}

std::uint64_t bernoulli_word(std::uint64_t key, const Threshold& t) {
  if (t.always) return ~std::uint64_t{0};
  if (t.bits == 0) return 0;
  std::uint64_t below = 0;
  std::uint64_t tied = ~std::uint64_t{0};
  for (int plane = 0; plane < kPlanes && tied != 0; ++plane) {
    const std::uint64_t r = derive(key, static_cast<std::uint64_t>(plane));
    if ((t.bits >> (kPlanes - 1 - plane)) & 1U) {
      below |= tied & ~r;
      tied &= r;
    } else {
      tied &= ~r;
    }
  }
  return below;
}

}  // namespace catperc::rng
