#pragma once

#include "catperc/catalan.hpp"

#include <cstdint>
#include <vector>

namespace catperc {

/// Outcome of one coupled realization: the auxiliary event and whether {0,n}
/// ended up occupied in Catalan percolation. The coupling guarantees
/// reached => catalan_occupied.
struct CouplingVerdict {
  bool reached = false;
  bool catalan_occupied = false;

  bool holds() const { return !reached || catalan_occupied; }
};

/// Oriented site percolation read off a Catalan field: site (i+j, j-i) is open
/// iff edge {i,j} is open. Paths step (-1,-1) or (+1,-1), i.e. drop one unit
/// from the right or the left end of the edge.
class OpCoupling {
 public:
  OpCoupling(int n, double p, std::uint64_t seed);

  int n() const { return field_.n(); }
  double p() const { return p_; }
  const CouplingField& field() const { return field_; }
  /// Site (a, b) with a + b even and 2 <= b <= n.
  bool site_open(int a, int b) const;
  /// Open path from (n, n) down to level 2, every site open.
  bool reaches_bottom() const;

 private:
  CouplingField field_;
  double p_;
};

/// Enhanced oriented percolation with parameters (p, p') built on a Catalan
/// window [0,n], p' = 1 - sqrt(1 - p). Site (i, j) stands for edge {j, n-i}
/// (length at least 3). Short edges {j, j+2} are open iff xi_j or xi'_j is 1;
/// the length-two row edges leaving level j (even) are open iff xi_j is 1.
class EnhancedCoupling {
 public:
  EnhancedCoupling(int n, double p, std::uint64_t seed);

  int n() const { return field_.n(); }
  double p() const { return p_; }
  double p_prime() const { return p_prime_; }
  const CouplingField& field() const { return field_; }
  bool xi(int j) const { return xi_[static_cast<std::size_t>(j)] != 0; }
  bool xi_prime(int j) const { return xi_prime_[static_cast<std::size_t>(j)] != 0; }
  /// Site (i, j) with i, j >= 0 and i + j <= n - 3.
  bool site_open(int i, int j) const;
  /// The origin is open and reaches some (i, j) with i + j in {n-4, n-3} and
  /// xi'_j = xi'_{j+2} = 1.
  bool event() const;

 private:
  CouplingField field_;
  double p_, p_prime_;
  std::vector<char> xi_, xi_prime_;
};

/// p' = 1 - sqrt(1 - p), so that 1 - (1 - p')^2 = p.
double short_edge_parameter(double p);

/// Throws InvalidArgument when n < 2.
CouplingVerdict op_implies_catalan(int n, double p, std::uint64_t seed);
/// Throws InvalidArgument when n < 5.
CouplingVerdict enhanced_implies_catalan(int n, double p, std::uint64_t seed);

}  // namespace catperc
