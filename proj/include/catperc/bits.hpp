#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace catperc {

/// Fixed-length bit vector with word-level access. Bit i lives in word i/64.
class Bits {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bits() = default;
  explicit Bits(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  Word word(std::size_t w) const { return words_[w]; }
  Word& word(std::size_t w) { return words_[w]; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  /// Sets bits [lo, hi] (inclusive).
  void set_range(std::size_t lo, std::size_t hi);

  /// this |= other restricted to bit positions [lo, hi] (inclusive).
  void or_range(const Bits& other, std::size_t lo, std::size_t hi);

  Bits& operator|=(const Bits& o);
  Bits& operator&=(const Bits& o);
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend bool operator==(const Bits&, const Bits&) = default;

  /// Clears padding bits beyond size().
  void trim();

  bool any() const;
  std::size_t count() const;
  std::optional<std::size_t> lowest() const;
  std::optional<std::size_t> highest() const;

  /// Bit i of the result is bit i-1 of this (moves everything one position up).
  Bits shifted_up() const;

  /// True iff every set bit of this is set in `other`.
  bool subset_of(const Bits& other) const;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Extends every seed upward through consecutive bits of `open`:
/// result = seeds plus every x such that some seed y < x has (y, x] inside `open`.
/// Seeds need not be in `open`.
Bits fill_up(const Bits& seeds, const Bits& open);

}  // namespace catperc
