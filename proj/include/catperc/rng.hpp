#pragma once

#include <cstdint>
#include <limits>

namespace catperc::rng {

// Counter-based randomness: every random word is a pure function of a key and
// a counter, so results never depend on evaluation order or thread schedule.

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child key of `key` labelled by `index`.
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
  return mix64(mix64(key) ^ (index * kGolden + 0x632BE59BD9B4E019ULL));
}

template <typename... Rest>
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index, Rest... rest) {
  return derive(derive(key, index), static_cast<std::uint64_t>(rest)...);
}

/// Uniform double in [0,1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential stream over one key; satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Stream(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return derive(key_, counter_++); }
  constexpr double uniform() { return to_unit((*this)()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fixed-point form of a probability for word-parallel Bernoulli sampling.
/// Threshold is floor(p * 2^53); p == 1 is handled as "always".
struct Threshold {
  std::uint64_t bits = 0;
  bool always = false;

  static Threshold of(double p);
};

/// 64 independent Bernoulli bits, bit b set iff U_b < threshold, where U_b is a
/// 53-bit uniform whose binary digits are the bits of the words
/// derive(key, plane) for plane = 0 (most significant) ... 52.
/// For a fixed key the result is monotone in the threshold.
std::uint64_t bernoulli_word(std::uint64_t key, const Threshold& t);

}  // namespace catperc::rng
