#include "catperc/couplings.hpp"

#include "catperc/errors.hpp"
#include "catperc/rng.hpp"

#include <cmath>
#include <string>

namespace catperc {

namespace {

constexpr std::uint64_t kLongEdges = 0;
constexpr std::uint64_t kRowStream = 1;
constexpr std::uint64_t kShortStream = 2;

}  // namespace

double short_edge_parameter(double p) {
  require_probability(p, "p");
  return 1.0 - std::sqrt(1.0 - p);
}

OpCoupling::OpCoupling(int n, double p, std::uint64_t seed) : field_(sample_field(n, seed)), p_(p) {
  require_probability(p, "p");
}

bool OpCoupling::site_open(int a, int b) const {
  if ((a + b) % 2 != 0 || b < 2 || b > n()) throw InvalidArgument("site outside the coupled triangle");
  return field_.open((a - b) / 2, (a + b) / 2, p_);
}

bool OpCoupling::reaches_bottom() const {
  // good(i,j): the path from {i,j} down to length 2 exists.
  const int n = this->n();
  std::vector<char> good(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  auto at = [&](int i, int j) -> char& { return good[static_cast<std::size_t>(i * (n + 1) + j)]; };
  for (int len = 2; len <= n; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      const int j = i + len;
      if (!field_.open(i, j, p_)) continue;
      at(i, j) = len == 2 || at(i + 1, j) || at(i, j - 1);
    }
  }
  return at(0, n);
}

EnhancedCoupling::EnhancedCoupling(int n, double p, std::uint64_t seed)
    : field_(CouplingField::from_labels(n, [](int, int) { return 0.0; })), p_(p), p_prime_(short_edge_parameter(p)) {
  if (n < 5) throw InvalidArgument("enhanced coupling needs n >= 5, got " + std::to_string(n));
  xi_.resize(static_cast<std::size_t>(n + 1));
  xi_prime_.resize(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    xi_[static_cast<std::size_t>(j)] = rng::to_unit(rng::derive(seed, kRowStream, static_cast<std::uint64_t>(j))) < p_prime_;
    xi_prime_[static_cast<std::size_t>(j)] =
        rng::to_unit(rng::derive(seed, kShortStream, static_cast<std::uint64_t>(j))) < p_prime_;
  }
  const CouplingField long_edges = sample_field(n, rng::derive(seed, kLongEdges));
  field_ = CouplingField::from_labels(n, [&](int i, int j) {
    if (j - i == 2) return (xi(i) || xi_prime(i)) ? 0.0 : 1.0;
    return long_edges.u(i, j);
  });
}

bool EnhancedCoupling::site_open(int i, int j) const {
  if (i < 0 || j < 0 || i + j > n() - 3) throw InvalidArgument("site outside the coupled triangle");
  return field_.open(j, n() - i, p_);
}

bool EnhancedCoupling::event() const {
  const int n = this->n();
  const int m = n - 3;  // i + j <= m
  std::vector<char> reach(static_cast<std::size_t>((m + 1) * (m + 1)), 0);
  auto at = [&](int i, int j) -> char& { return reach[static_cast<std::size_t>(i * (m + 1) + j)]; };
  for (int d = 0; d <= m; ++d) {
    for (int i = 0; i <= d; ++i) {
      const int j = d - i;
      if (!site_open(i, j)) continue;
      if (d == 0) {
        at(i, j) = 1;
        continue;
      }
      const bool from_left = i > 0 && at(i - 1, j);
      const bool from_below = j > 0 && at(i, j - 1);
      const bool jump = j >= 2 && (j - 2) % 2 == 0 && xi(j - 2) && at(i, j - 2);
      at(i, j) = from_left || from_below || jump;
    }
  }
  for (int d = n - 4; d <= m; ++d) {
    for (int i = 0; i <= d; ++i) {
      const int j = d - i;
      if (at(i, j) && xi_prime(j) && xi_prime(j + 2)) return true;
    }
  }
  return false;
}

CouplingVerdict op_implies_catalan(int n, double p, std::uint64_t seed) {
  const OpCoupling c(n, p, seed);
  return {c.reaches_bottom(), occupy(c.field(), p, TruncationRule::full()).occupied(0, n)};
}

CouplingVerdict enhanced_implies_catalan(int n, double p, std::uint64_t seed) {
  const EnhancedCoupling c(n, p, seed);
  return {c.event(), occupy(c.field(), p, TruncationRule::full()).occupied(0, n)};
}

}  // namespace catperc
