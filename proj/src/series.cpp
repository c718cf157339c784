#include "catperc/series.hpp"

#include "catperc/catalan.hpp"
#include "catperc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace catperc {

namespace {

void require_exact_cutoff(int n0) {
  if (n0 < 1 || n0 > kExactThetaMaxN) {
    throw InvalidArgument("cutoff n0 must lie in [1, " + std::to_string(kExactThetaMaxN) + "], got " +
                          std::to_string(n0));
  }
}

const RationalPoly kP{0, 1};

BiPoly multiply(const BiPoly& a, const BiPoly& b, std::size_t max_x_degree) {
  std::vector<RationalPoly> out(max_x_degree + 1);
  for (std::size_t i = 0; i < a.x_coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.x_coeffs().size() && i + j <= max_x_degree; ++j) {
      out[i + j] += a.x_coeffs()[i] * b.x_coeffs()[j];
    }
  }
  return BiPoly(std::move(out));
}

}  // namespace

std::vector<Integer> catalan_numbers(int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  std::vector<Integer> c(static_cast<std::size_t>(k_max + 1));
  c[0] = 1;
  for (int n = 1; n <= k_max; ++n) {
    Integer s = 0;
    for (int k = 0; k < n; ++k) s += c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(n - 1 - k)];
    c[static_cast<std::size_t>(n)] = s;
  }
  return c;
}

ASequence a_sequence(int n0, int length) {
  require_exact_cutoff(n0);
  if (length < n0) throw InvalidArgument("sequence length must be at least n0");
  ASequence seq;
  seq.n0_ = n0;
  seq.polys_.resize(static_cast<std::size_t>(length + 1));
  for (int n = 1; n <= length; ++n) {
    if (n <= n0) {
      seq.polys_[static_cast<std::size_t>(n)] = exact_theta_poly(n);
      continue;
    }
    RationalPoly sum;
    for (int k = 1; k < n; ++k) {
      sum += seq.polys_[static_cast<std::size_t>(k)] * seq.polys_[static_cast<std::size_t>(n - k)];
    }
    seq.polys_[static_cast<std::size_t>(n)] = kP * sum;
  }
  return seq;
}

Discriminant discriminant(int n0) {
  require_exact_cutoff(n0);
  const auto n = static_cast<std::size_t>(n0);
  std::vector<RationalPoly> a(n + 1);
  for (int k = 1; k <= n0; ++k) a[static_cast<std::size_t>(k)] = exact_theta_poly(k);
  const BiPoly series(a);
  const BiPoly square = multiply(series, series, n);
  // Q = A - p [A^2]_{<= n0};  Delta = 1 - 4 p Q
  std::vector<RationalPoly> delta(n + 1);
  delta[0] = RationalPoly::constant(1);
  for (std::size_t k = 1; k <= n; ++k) {
    const RationalPoly q = series.x_coeff(k) - kP * square.x_coeff(k);
    delta[k] = RationalPoly{0, -4} * q;
  }
  return {n0, BiPoly(std::move(delta))};
}

double Radius::value() const {
  return root ? root->midpoint() : std::numeric_limits<double>::infinity();
}

Radius radius(const Discriminant& d, const Rational& p, const Rational& precision) {
  if (!(p > 0 && p <= 1)) throw InvalidArgument("radius needs p in (0, 1]");
  const RationalPoly in_x = d.delta.at_p(p);
  if (in_x.degree() <= 0) return {};
  const auto roots = isolate_roots(in_x, Rational(0), root_bound(in_x));
  if (roots.empty()) return {};
  return {refine_root(in_x, roots.front(), precision)};
}

Radius radius(int n0, const Rational& p, const Rational& precision) {
  return radius(discriminant(n0), p, precision);
}

RootInterval lower_bound_pm(int n0, const Rational& precision) {
  if (!(precision > 0)) throw InvalidArgument("precision must be positive");
  const RationalPoly at_one = discriminant(n0).delta.at_x(Rational(1));
  const auto roots = isolate_roots(at_one, Rational(0), root_bound(at_one));
  if (roots.empty()) throw InvalidArgument("Delta(p,1) has no positive root");
  return refine_root(at_one, roots.front(), precision);
}

ThetaProvider exact_theta_provider(int n_max) {
  if (n_max < 1 || n_max > kExactThetaMaxN) {
    throw InvalidArgument("exact theta provider supports 1 <= n <= " + std::to_string(kExactThetaMaxN));
  }
  std::vector<RationalPoly> polys;
  for (int n = 1; n <= n_max; ++n) polys.push_back(exact_theta_poly(n));
  return [polys = std::move(polys)](int n, double p) {
    if (n < 1 || n > static_cast<int>(polys.size())) throw InvalidArgument("theta_n not available");
    return polys[static_cast<std::size_t>(n - 1)].eval(p);
  };
}

std::vector<ThetaEstimate> read_theta_csv(std::istream& in) {
  std::vector<ThetaEstimate> rows;
  std::string line;
  std::map<std::string, int> column;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      for (std::size_t c = 0; c < cells.size(); ++c) column[cells[c]] = static_cast<int>(c);
      for (const char* name : {"n", "p", "theta_hat", "stderr"}) {
        if (!column.count(name)) throw InvalidArgument(std::string("theta table lacks column ") + name);
      }
      header = true;
      continue;
    }
    auto get = [&](const char* name) -> const std::string& {
      const auto idx = static_cast<std::size_t>(column.at(name));
      if (idx >= cells.size()) throw InvalidArgument("short row at line " + std::to_string(line_no));
      return cells[idx];
    };
    try {
      rows.push_back({std::stoi(get("n")), std::stod(get("p")), std::stod(get("theta_hat")), std::stod(get("stderr"))});
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed theta table row at line " + std::to_string(line_no));
    }
  }
  if (!header) throw InvalidArgument("theta table is empty");
  return rows;
}

void write_theta_csv(std::ostream& out, const std::vector<ThetaEstimate>& rows) {
  out << "n,p,theta_hat,stderr\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.n, r.p, r.theta_hat, r.std_error);
    out << buf;
  }
}

ThetaProvider theta_provider_from_table(std::vector<ThetaEstimate> rows) {
  std::map<int, std::vector<std::pair<double, double>>> by_n;
  for (const auto& r : rows) by_n[r.n].emplace_back(r.p, r.theta_hat);
  for (auto& [n, pts] : by_n) std::sort(pts.begin(), pts.end());
  return [by_n = std::move(by_n)](int n, double p) {
    const auto it = by_n.find(n);
    if (it == by_n.end()) {
      if (n == 1) return 1.0;
      throw InvalidArgument("theta table has no rows for n=" + std::to_string(n));
    }
    const auto& pts = it->second;
    if (p <= pts.front().first) return pts.front().second;
    if (p >= pts.back().first) return pts.back().second;
    const auto hi = std::lower_bound(pts.begin(), pts.end(), std::make_pair(p, -1.0));
    const auto lo = hi - 1;
    const double w = (p - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  };
}

GrowthEstimate estimate_growth(const ThetaProvider& theta, int n0, double p, const RadiusClassifierOptions& opts) {
  const int N = opts.tail_length;
  if (n0 < 1 || N < 2 * n0 || N < 8) throw InvalidArgument("tail length must be at least max(8, 2*n0)");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in (0, 1]");
  // b_n = a_n c^n with c = 1/(4p) keeps the Catalan-like growth near 1; the
  // recurrence is invariant under this rescaling.
  const long double c = 1.0L / (4.0L * p);
  std::vector<long double> b(static_cast<std::size_t>(N + 1), 0.0L);
  long double cn = 1.0L;
  for (int n = 1; n <= N; ++n) {
    cn *= c;
    if (n <= n0) {
      b[static_cast<std::size_t>(n)] = std::max(0.0, theta(n, p)) * cn;
      continue;
    }
    long double s = 0.0L;
    for (int k = 1; 2 * k < n; ++k) s += b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n - k)];
    s *= 2.0L;
    if (n % 2 == 0) s += b[static_cast<std::size_t>(n / 2)] * b[static_cast<std::size_t>(n / 2)];
    b[static_cast<std::size_t>(n)] = p * s;
  }
  // log a_n = log b_n - n log c; fit log a_n + 1.5 log n = g n + const.
  const int first = N / 2 + 1;
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = first; n <= N; ++n) {
    const long double bn = b[static_cast<std::size_t>(n)];
    if (!(bn > 0.0L) || !std::isfinite(static_cast<double>(std::log(bn)))) {
      // Sequence vanished or overflowed the extended range: treat as decay / blow-up.
      return {bn > 0.0L ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity()};
    }
    const long double x = n;
    const long double y = std::log(bn) - x * std::log(c) + 1.5L * std::log(x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const long double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return {static_cast<double>(slope)};
}

LowerBoundMcResult lower_bound_mc(const ThetaProvider& theta, int n0, const LowerBoundMcOptions& opts) {
  if (!(opts.lo > 0.0 && opts.lo < opts.hi && opts.hi <= 1.0)) throw InvalidArgument("bad bisection bracket");
  if (!(opts.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  LowerBoundMcResult res;
  auto subcritical = [&](double p) {
    ++res.evaluations;
    return estimate_growth(theta, n0, p, opts.classifier).radius_above_one();
  };
  double lo = opts.lo, hi = opts.hi;
  const bool lo_ok = subcritical(lo);
  const bool hi_ok = !subcritical(hi);
  if (!lo_ok || !hi_ok) {
    res.lo = opts.lo;
    res.hi = opts.hi;
    res.estimate = lo_ok ? opts.hi : opts.lo;
    res.widened = true;
    return res;
  }
  while (hi - lo > opts.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (subcritical(mid) ? lo : hi) = mid;
  }
  // Probe just outside the bracket; a contradicting verdict means the
  // classifier is noisy there, so the reported interval is grown to cover it.
  for (int k = 1; k <= opts.consistency_probes; ++k) {
    const double below = lo - k * opts.tolerance;
    if (below > opts.lo && !subcritical(below)) {
      res.lo = below;
      res.widened = true;
    }
    const double above = hi + k * opts.tolerance;
    if (above < opts.hi && subcritical(above)) {
      res.hi = above;
      res.widened = true;
    }
  }
  if (res.lo == 0.0 || res.lo > lo) res.lo = lo;
  if (res.hi == 0.0 || res.hi < hi) res.hi = hi;
  res.estimate = 0.5 * (res.lo + res.hi);
  return res;
}

}  // namespace catperc
