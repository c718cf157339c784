#include "catperc/catalan.hpp"

#include "catperc/errors.hpp"
#include "catperc/rng.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace catperc {

TruncationRule TruncationRule::truncated(int L) {
  if (L < 1) throw InvalidArgument("truncation length must be positive, got " + std::to_string(L));
  return TruncationRule(L);
}

CouplingField::CouplingField(int n, std::uint64_t seed)
    : n_(n), seed_(seed), labels_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0.0) {}

CouplingField sample_field(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("invalid window: n must be at least 2, got " + std::to_string(n));
  CouplingField f(n, seed);
  for (int i = 0; i <= n; ++i) {
    const std::uint64_t row_key = rng::derive(seed, static_cast<std::uint64_t>(i));
    for (int j = i + 2; j <= n; ++j) {
      f.labels_[f.index(i, j)] = rng::to_unit(rng::derive(row_key, static_cast<std::uint64_t>(j)));
    }
  }
  return f;
}

CouplingField CouplingField::from_labels(int n, const std::function<double(int, int)>& label) {
  if (n < 2) throw InvalidArgument("invalid window: n must be at least 2, got " + std::to_string(n));
  CouplingField f(n, 0);
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 2; j <= n; ++j) {
      const double u = label(i, j);
      require_probability(u, "label");
      f.labels_[f.index(i, j)] = u;
    }
  }
  return f;
}

OccupationTable::OccupationTable(int n) : n_(n), rows_(static_cast<std::size_t>(n + 1), Bits(static_cast<std::size_t>(n + 1))) {}

OccupationTable occupy(const CouplingField& field, double p, const TruncationRule& rule) {
  require_probability(p, "p");
  const int n = field.n();
  OccupationTable table(n);
  Bits reach(static_cast<std::size_t>(n + 1));
  // Rows from the bottom up: row k > i is final before row i is built. Within
  // row i, mediators are taken in increasing k, so occ(i,k) is settled by the
  // time k is used.
  for (int i = n - 1; i >= 0; --i) {
    Bits& row = table.rows_[static_cast<std::size_t>(i)];
    row.set(static_cast<std::size_t>(i + 1));
    reach.clear();
    for (int k = i + 1; k <= n; ++k) {
      if (k >= i + 2 && reach.test(static_cast<std::size_t>(k)) && field.open(i, k, p)) {
        row.set(static_cast<std::size_t>(k));
      }
      if (k == n || !row.test(static_cast<std::size_t>(k))) continue;
      const Bits& sub = table.rows_[static_cast<std::size_t>(k)];
      const int hi = (rule.is_full() || k - i <= rule.limit()) ? n : std::min(n, k + rule.limit());
      reach.or_range(sub, static_cast<std::size_t>(k + 1), static_cast<std::size_t>(hi));
    }
  }
  return table;
}

ThresholdTable::ThresholdTable(int n, bool conditioned)
    : n_(n),
      conditioned_(conditioned),
      t_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0.0),
      mediated_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0.0) {}

ThresholdTable threshold_table(const CouplingField& field, const TruncationRule& rule, bool conditioned) {
  const int n = field.n();
  ThresholdTable table(n, conditioned);
  const std::size_t stride = static_cast<std::size_t>(n + 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int i = n - 1; i >= 0; --i) {
    double* t_row = table.t_.data() + static_cast<std::size_t>(i) * stride;
    double* m_row = table.mediated_.data() + static_cast<std::size_t>(i) * stride;
    std::fill(m_row + i + 2, m_row + n + 1, kInf);
    for (int k = i + 1; k <= n; ++k) {
      if (k >= i + 2) {
        const bool top = conditioned && i == 0 && k == n;
        t_row[k] = top ? m_row[k] : std::max(field.u(i, k), m_row[k]);
      }
      if (k == n) break;
      const double t_ik = t_row[k];
      const double* sub = table.t_.data() + static_cast<std::size_t>(k) * stride;
      const int hi = (rule.is_full() || k - i <= rule.limit()) ? n : std::min(n, k + rule.limit());
      for (int j = k + 1; j <= hi; ++j) {
        const double via = sub[j] > t_ik ? sub[j] : t_ik;
        m_row[j] = via < m_row[j] ? via : m_row[j];
      }
    }
  }
  return table;
}

namespace {

// Depth-first enumeration over the open/closed states of the long edges in
// order of increasing length. An edge with no occupied mediator pair cannot be
// occupied whatever its state, so it is summed out instead of branched on.
// Leaves where {0,n} ends occupied are tallied by (#open, #closed).
class ThetaEnumerator {
 public:
  ThetaEnumerator(int n, int max_open) : n_(n), max_open_(max_open) {
    for (int d = 2; d <= n; ++d) {
      for (int i = 0; i + d <= n; ++i) edges_.push_back({i, i + d});
    }
    const std::size_t m = edges_.size();
    counts_.assign((m + 1) * (m + 1), 0);
    for (int i = 0; i < n; ++i) occ_[static_cast<std::size_t>(i)] = 1U << (i + 1);
  }

  void run() { visit(0, 0, 0); }

  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t count(std::size_t open, std::size_t closed) const {
    return counts_[open * (edges_.size() + 1) + closed];
  }

 private:
  struct Edge {
    int i, j;
  };

  bool mediated(int i, int j) const {
    // some k in (i,j) with occ(i,k) and occ(k,j)
    std::uint32_t ks = occ_[static_cast<std::size_t>(i)] & ((1U << j) - 1U);
    while (ks) {
      const int k = std::countr_zero(ks);
      ks &= ks - 1;
      if ((occ_[static_cast<std::size_t>(k)] >> j) & 1U) return true;
    }
    return false;
  }

  void visit(std::size_t e, int open, int closed) {
    if (e == edges_.size()) {
      if ((occ_[0] >> n_) & 1U) ++counts_[static_cast<std::size_t>(open) * (edges_.size() + 1) + static_cast<std::size_t>(closed)];
      return;
    }
    const auto [i, j] = edges_[e];
    if (!mediated(i, j)) {
      visit(e + 1, open, closed);
      return;
    }
    if (open < max_open_) {
      occ_[static_cast<std::size_t>(i)] |= 1U << j;
      visit(e + 1, open + 1, closed);
      occ_[static_cast<std::size_t>(i)] &= ~(1U << j);
    }
    visit(e + 1, open, closed + 1);
  }

  int n_;
  int max_open_;
  std::vector<Edge> edges_;
  std::array<std::uint32_t, 32> occ_{};
  std::vector<std::uint64_t> counts_;
};

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double kEnumerationBudget = 1u << 29;

void check_budget(int n, int max_open) {
  const int m = n * (n - 1) / 2;
  double leaves = 0;
  for (int a = 0; a <= std::min(max_open, m); ++a) leaves += binomial(m, a).convert_to<double>();
  if (leaves > kEnumerationBudget) {
    throw ResourceError("exact enumeration for n=" + std::to_string(n) + " with up to " +
                        std::to_string(max_open) + " open edges exceeds the budget of 2^29 configurations");
  }
}

}  // namespace

RationalPoly exact_theta_poly(int n) {
  if (n < 1) throw InvalidArgument("theta_n needs n >= 1, got " + std::to_string(n));
  if (n > kExactThetaMaxN) {
    throw ResourceError("exact_theta_poly is limited to n <= " + std::to_string(kExactThetaMaxN) +
                        "; use exact_theta_coeffs for low-order coefficients");
  }
  if (n == 1) return RationalPoly::constant(1);
  ThetaEnumerator en(n, n * n);
  en.run();
  const std::size_t m = en.edge_count();
  // sum count(a,b) p^a (1-p)^b
  std::vector<RationalPoly> one_minus_p_pow{RationalPoly::constant(1)};
  for (std::size_t b = 1; b <= m; ++b) one_minus_p_pow.push_back(one_minus_p_pow.back() * RationalPoly{1, -1});
  RationalPoly theta;
  for (std::size_t a = 0; a <= m; ++a) {
    for (std::size_t b = 0; a + b <= m; ++b) {
      const std::uint64_t c = en.count(a, b);
      if (c == 0) continue;
      theta += RationalPoly::monomial(Rational(Integer(c)), a) * one_minus_p_pow[b];
    }
  }
  return theta;
}

std::vector<Integer> exact_theta_coeffs(int n, int k_max) {
  if (n < 1) throw InvalidArgument("theta_n needs n >= 1, got " + std::to_string(n));
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  std::vector<Integer> coeffs(static_cast<std::size_t>(k_max + 1), 0);
  if (n == 1) {
    coeffs[0] = 1;
    return coeffs;
  }
  if (n > 31) throw ResourceError("exact_theta_coeffs supports n <= 31");
  check_budget(n, k_max);
  ThetaEnumerator en(n, k_max);
  en.run();
  const std::size_t m = en.edge_count();
  // [p^k] p^a (1-p)^b = (-1)^(k-a) C(b, k-a)
  for (int k = 0; k <= k_max; ++k) {
    Integer acc = 0;
    for (int a = 0; a <= k; ++a) {
      for (std::size_t b = 0; static_cast<std::size_t>(a) + b <= m; ++b) {
        const std::uint64_t c = en.count(static_cast<std::size_t>(a), b);
        if (c == 0) continue;
        Integer term = binomial(static_cast<int>(b), k - a) * Integer(c);
        acc += ((k - a) % 2 == 0) ? term : Integer(-term);
      }
    }
    coeffs[static_cast<std::size_t>(k)] = acc;
  }
  return coeffs;
}

}  // namespace catperc
