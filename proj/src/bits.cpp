#include "catperc/bits.hpp"

#include <algorithm>

namespace catperc {

namespace {

Bits::Word mask_from(std::size_t bit) { return ~Bits::Word{0} << bit; }
Bits::Word mask_through(std::size_t bit) {
  return bit + 1 == Bits::kWordBits ? ~Bits::Word{0} : (Bits::Word{1} << (bit + 1)) - 1;
}

}  // namespace

void Bits::set_range(std::size_t lo, std::size_t hi) {
  if (lo > hi) return;
  const std::size_t wl = lo / kWordBits, wh = hi / kWordBits;
  for (std::size_t w = wl; w <= wh; ++w) {
    Word m = ~Word{0};
    if (w == wl) m &= mask_from(lo % kWordBits);
    if (w == wh) m &= mask_through(hi % kWordBits);
    words_[w] |= m;
  }
}

void Bits::or_range(const Bits& other, std::size_t lo, std::size_t hi) {
  if (lo > hi) return;
  const std::size_t wl = lo / kWordBits, wh = hi / kWordBits;
  for (std::size_t w = wl; w <= wh; ++w) {
    Word m = ~Word{0};
    if (w == wl) m &= mask_from(lo % kWordBits);
    if (w == wh) m &= mask_through(hi % kWordBits);
    words_[w] |= other.words_[w] & m;
  }
}

Bits& Bits::operator|=(const Bits& o) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  return *this;
}

Bits& Bits::operator&=(const Bits& o) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  return *this;
}

void Bits::trim() {
  if (size_ % kWordBits != 0 && !words_.empty()) {
    words_.back() &= mask_through(size_ % kWordBits - 1);
  }
}

bool Bits::any() const {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::optional<std::size_t> Bits::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return std::nullopt;
}

std::optional<std::size_t> Bits::highest() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      return w * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_[w])));
    }
  }
  return std::nullopt;
}

Bits Bits::shifted_up() const {
  Bits out(size_);
  Word carry = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] = (words_[w] << 1) | carry;
    carry = words_[w] >> (kWordBits - 1);
  }
  out.trim();
  return out;
}

bool Bits::subset_of(const Bits& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

Bits fill_up(const Bits& seeds, const Bits& open) {
  // Adding the seeds to the run mask carries each run's lowest seed through
  // the rest of its run; the bits cleared by the carry are the filled ones.
  Bits out(seeds.size());
  Bits::Word carry = 0;
  for (std::size_t w = 0; w < seeds.word_count(); ++w) {
    const Bits::Word s = seeds.word(w);
    const Bits::Word o = open.word(w) | s;
    const Bits::Word partial = o + s;
    const Bits::Word c1 = partial < o ? 1 : 0;
    const Bits::Word sum = partial + carry;
    const Bits::Word c2 = sum < partial ? 1 : 0;
    carry = c1 | c2;
    out.word(w) = (o & ~sum) | s;
  }
  out.trim();
  return out;
}

}  // namespace catperc
