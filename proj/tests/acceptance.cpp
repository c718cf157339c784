// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include "catperc/catalan.hpp"
#include "catperc/couplings.hpp"
#include "catperc/harness.hpp"
#include "catperc/oriented.hpp"
#include "catperc/rng.hpp"
#include "catperc/series.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace catperc;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Verdict series_identity() {
  const std::vector<int> want{1, 1, 2, 4, 9, 21, 52};
  RationalPoly sum;
  for (int n = 1; n <= 7; ++n) sum += exact_theta_poly(n);
  std::ostringstream got;
  bool ok = true;
  for (std::size_t k = 0; k < want.size(); ++k) {
    ok = ok && sum.coeff(k) == want[k];
    got << (k ? ", " : "") << sum.coeff(k);
  }
  return {ok, "coefficients through p^6: " + got.str()};
}

Verdict discriminant_and_bound() {
  const std::string delta = discriminant(3).delta.to_string();
  const RootInterval b1 = lower_bound_pm(1, Rational(1, 1'000'000));
  const RootInterval b3 = lower_bound_pm(3, Rational(1, 1'000'000));
  const RationalPoly f{1, -4, 0, 0, 4};
  const bool encloses = b3.exact() ? f(b3.lo) == 0 : f(b3.lo) * f(b3.hi) < 0;
  const bool ok = delta == "1 - 4*p*x + 4*p^4*x^3" && b1.lo == Rational(1, 4) && b1.hi == Rational(1, 4) &&
                  b3.lo > Rational(254, 1000) && b3.hi < Rational(2549, 10000) &&
                  b3.width() <= Rational(1, 1'000'000) && encloses;
  return {ok, "delta = " + delta + ", p_1 = [" + to_string(b1.lo) + ", " + to_string(b1.hi) + "], p_3 in " +
                  fmt("[%.9f, %.9f]", to_double(b3.lo), to_double(b3.hi))};
}

Verdict threshold_oracle() {
  double worst = 0;
  for (int f = 0; f < 200; ++f) {
    const int n = 2 + f % 39;
    const auto field = sample_field(n, rng::derive(3, static_cast<std::uint64_t>(f)));
    const TruncationRule rule = f % 2 ? TruncationRule::truncated(1 + f % 5) : TruncationRule::full();
    const double t = threshold_table(field, rule, false).top();
    double lo = 0, hi = 1;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (occupy(field, mid, rule).occupied(0, n) ? hi : lo) = mid;
    }
    worst = std::max(worst, std::abs(hi - t));
  }
  return {worst <= 1e-9, fmt("max |threshold - bisection| = %.3g over 200 fields", worst)};
}

Verdict tree_certificates() {
  int mismatches = 0, checks = 0;
  for (int f = 0; f < 100; ++f) {
    const int n = 2 + f % 9;
    const auto field = sample_field(n, rng::derive(4, static_cast<std::uint64_t>(f)));
    for (double p : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      const auto occ = occupy(field, p, TruncationRule::full());
      for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          ++checks;
          mismatches += occ.occupied(i, j) != oracle::certified(i, j, [&](int a, int b) { return field.open(a, b, p); }, 0);
        }
      }
    }
  }
  return {mismatches == 0, fmt("%.0f mismatches in %.0f edge checks", mismatches, checks)};
}

Verdict pc_reproduction() {
  ExperimentSpec s;
  s.kind = ExperimentKind::pc_tilde;
  s.n = 500;
  s.reps = 500;
  const auto& row = run(s).rows.at(0);
  return {row.estimate >= 0.38 && row.estimate <= 0.42, fmt("mean p~_c(500) = %.4f +- %.4f", row.estimate, row.std_error)};
}

Verdict truncation_convergence() {
  ExperimentSpec s;
  s.kind = ExperimentKind::truncated_pc;
  s.n = 500;
  s.reps = 500;
  s.L = {1, 2, 4, 8, 16, 32};
  const RunResult r = run(s);
  double full = 0, l32 = 0, violations = -1;
  for (const auto& row : r.rows) {
    if (row.experiment == "truncated_pc.full") full = row.estimate;
    if (row.experiment == "truncated_pc.order_violations") violations = row.estimate;
    if (row.L == 32) l32 = row.estimate;
  }
  return {violations == 0 && l32 - full < 0.03,
          fmt("pathwise order violations = %.0f, p~+(32) - p~ = %.4f", violations, l32 - full)};
}

Verdict lower_bound_signature() {
  ExperimentSpec s;
  s.kind = ExperimentKind::lower_bound_mc;
  s.reps = 100000;
  for (int k = 1; k <= 40; ++k) s.n0.push_back(k);
  const RunResult r = run(s);
  double lo = 1, hi = 0;
  int count = 0;
  for (const auto& row : r.rows) {
    if (row.experiment != "lower_bound_mc") continue;
    lo = std::min(lo, row.estimate);
    hi = std::max(hi, row.estimate);
    ++count;
  }
  return {r.complete && count == 40 && lo >= 0.25 && hi <= 0.31 && hi < 0.38,
          fmt("estimates for n0 = 1..40 span [%.4f, %.4f]", lo, hi)};
}

Verdict critical_edge_speed() {
  const auto e = edge_speed_estimate(0.7055, 0.0, 1000, 200, 8);
  return {e.alpha.mean >= 0.9 && e.alpha.mean <= 1.1,
          fmt("alpha = %.4f +- %.4f (%.0f excluded)", e.alpha.mean, e.alpha.std_error, e.excluded)};
}

Verdict strict_enhancement() {
  const double p = 0.7055;
  const auto plain = edge_speed_estimate(p, 0.0, 1000, 200, 9);
  const auto enhanced = edge_speed_estimate(p, 0.5, 1000, 200, 9);
  const double diff = enhanced.alpha.mean - plain.alpha.mean;
  const double se = std::hypot(plain.alpha.std_error, enhanced.alpha.std_error);
  const double bound = 0.5 * p * (1 - p) * (1 - p) - 3 * se;
  return {diff >= bound, fmt("alpha(q=0.5) - alpha(q=0) = %.4f, required >= %.4f", diff, bound)};
}

Verdict duality() {
  const auto e = edge_speed_estimate(0.9, 0.0, 1000, 200, 10);
  const double prod = e.alpha.mean * e.beta.mean;
  return {prod >= 0.9 && prod <= 1.1, fmt("alpha = %.4f, beta = %.4f, product = %.4f", e.alpha.mean, e.beta.mean, prod)};
}

Verdict coupling_implications() {
  int violations = 0;
  std::ostringstream reach;
  for (double p : {0.5, 0.72, 0.9}) {
    int op_reached = 0, en_reached = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const auto op = op_implies_catalan(50, p, rng::derive(11, i));
      const auto en = enhanced_implies_catalan(60, p, rng::derive(12, i));
      violations += !op.holds() + !en.holds();
      op_reached += op.reached;
      en_reached += en.reached;
    }
    reach << " p=" << p << ": " << op_reached << "/" << en_reached;
  }
  return {violations == 0, std::to_string(violations) + " violations; events reached (op/enhanced)" + reach.str()};
}

Verdict crossing_floor() {
  ExperimentSpec s;
  s.kind = ExperimentKind::crossing;
  s.m = 200;
  s.reps = 2000;
  s.p_grid = {0.7055};
  const auto& row = run(s).rows.at(0);
  return {row.estimate > 0.01, fmt("P(up crossing) = %.4f +- %.4f", row.estimate, row.std_error)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"series identity", series_identity},
      {"discriminant and certified bound", discriminant_and_bound},
      {"threshold oracle", threshold_oracle},
      {"tree certificates", tree_certificates},
      {"p~_c at n = 500", pc_reproduction},
      {"truncation convergence", truncation_convergence},
      {"numeric lower bound stays low", lower_bound_signature},
      {"critical edge speed", critical_edge_speed},
      {"strict enhancement", strict_enhancement},
      {"duality", duality},
      {"coupling implications", coupling_implications},
      {"crossing floor at criticality", crossing_floor},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
