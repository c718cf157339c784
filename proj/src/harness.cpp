#include "catperc/harness.hpp"

#include "catperc/catalan.hpp"
#include "catperc/couplings.hpp"
#include "catperc/errors.hpp"
#include "catperc/parallel.hpp"
#include "catperc/rng.hpp"
#include "catperc/stats.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

namespace catperc {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    if constexpr (std::is_floating_point_v<T>) {
      out += num(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

std::vector<double> default_grid(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::phi_curve: {
      std::vector<double> g;
      for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
      return g;
    }
    case ExperimentKind::coupling_check:
      return {0.5, 0.72, 0.9};
    case ExperimentKind::defects:
      return {0.95};
    default:
      return {0.7055};
  }
}

class Budget {
 public:
  explicit Budget(double seconds) : seconds_(seconds), start_(Clock::now()) {}
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  void check() const {
    if (seconds_ > 0.0 && elapsed() > seconds_) throw ResourceError("time budget of " + num(seconds_) + " s exceeded");
  }

 private:
  double seconds_;
  Clock::time_point start_;
};

std::uint64_t kind_id(ExperimentKind k) { return static_cast<std::uint64_t>(k) + 1; }

ResultRow make_row(const ExperimentSpec& spec, std::string stat, const Estimate& e) {
  ResultRow row;
  row.experiment = to_string(spec.kind) + (stat.empty() ? "" : "." + stat);
  row.estimate = e.mean;
  row.std_error = e.std_error;
  row.reps = e.reps;
  row.seed = spec.seed;
  return row;
}

void validate(const ExperimentSpec& s) {
  if (s.reps < 1) throw InvalidArgument("reps must be positive");
  if (s.threads < 1) throw InvalidArgument("threads must be positive");
  require_probability(s.q, "q");
  for (double p : s.p_grid) require_probability(p, "p");
  switch (s.kind) {
    case ExperimentKind::phi_curve:
    case ExperimentKind::pc_tilde:
    case ExperimentKind::truncated_pc:
    case ExperimentKind::coupling_check:
      if (s.n < 2) throw InvalidArgument("invalid window: n must be at least 2");
      break;
    case ExperimentKind::edge_speed:
    case ExperimentKind::defects:
      if (s.n < 1) throw InvalidArgument("n must be positive");
      break;
    case ExperimentKind::crossing:
      if (s.m < 1 && !s.generators) throw InvalidArgument("crossing height m must be positive");
      break;
    case ExperimentKind::lower_bound_mc:
      for (int n0 : s.n0) {
        if (n0 < 1) throw InvalidArgument("n0 must be positive");
      }
      break;
  }
  for (int L : s.L) {
    if (L < 1) throw InvalidArgument("truncation length must be positive");
  }
}

void run_phi_curve(const ExperimentSpec& s, const std::vector<double>& grid, RunResult& out, const Budget& budget) {
  std::vector<double> t(static_cast<std::size_t>(s.reps));
  parallel_for(t.size(), s.threads, [&](std::size_t r) {
    if (r % 64 == 0) budget.check();
    const auto field = sample_field(s.n, rng::derive(s.seed, kind_id(s.kind), 0, r));
    t[r] = threshold_table(field, TruncationRule::full(), true).top();
  });
  for (double p : grid) {
    std::vector<double> hit(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) hit[r] = t[r] <= p ? 1.0 : 0.0;
    auto row = make_row(s, "", summarize(hit));
    row.n = s.n;
    row.p = p;
    out.rows.push_back(row);
  }
}

void run_pc(const ExperimentSpec& s, RunResult& out, const Budget& budget) {
  std::vector<int> Ls = s.L;
  if (s.kind == ExperimentKind::truncated_pc && Ls.empty()) Ls = {1, 2, 4, 8, 16, 32};
  std::sort(Ls.begin(), Ls.end());
  std::vector<std::vector<double>> t(static_cast<std::size_t>(s.reps));
  parallel_for(t.size(), s.threads, [&](std::size_t r) {
    if (r % 8 == 0) budget.check();
    t[r] = conditioned_thresholds(s.n, Ls, rng::derive(s.seed, kind_id(s.kind), 0, r));
  });
  auto column = [&](std::size_t c) {
    std::vector<double> xs;
    for (const auto& row : t) xs.push_back(row[c]);
    return xs;
  };
  if (s.kind == ExperimentKind::pc_tilde) {
    auto row = make_row(s, "", summarize(column(0)));
    row.n = s.n;
    out.rows.push_back(row);
    return;
  }
  auto full = make_row(s, "full", summarize(column(0)));
  full.n = s.n;
  out.rows.push_back(full);
  for (std::size_t c = 0; c < Ls.size(); ++c) {
    auto row = make_row(s, "", summarize(column(c + 1)));
    row.n = s.n;
    row.L = Ls[c];
    out.rows.push_back(row);
  }
  // Pathwise order: full <= truncated(L) and nonincreasing in L.
  int violations = 0;
  for (const auto& row : t) {
    bool ok = true;
    for (std::size_t c = 1; c < row.size(); ++c) ok = ok && row[0] <= row[c];
    for (std::size_t c = 2; c < row.size(); ++c) ok = ok && row[c] <= row[c - 1];
    violations += ok ? 0 : 1;
  }
  auto v = make_row(s, "order_violations", {static_cast<double>(violations), 0.0, s.reps});
  v.n = s.n;
  out.rows.push_back(v);
}

void run_lower_bound_mc(const ExperimentSpec& s, RunResult& out, const Budget& budget) {
  std::vector<int> cutoffs = s.n0;
  if (cutoffs.empty()) {
    for (int k = 1; k <= 10; ++k) cutoffs.push_back(k);
  }
  ThetaProvider theta;
  if (s.theta_table && s.exact_theta) throw InvalidArgument("choose either a theta table or exact theta");
  if (s.theta_table) {
    theta = theta_provider_from_table(*s.theta_table);
  } else if (s.exact_theta) {
    theta = exact_theta_provider(*std::max_element(cutoffs.begin(), cutoffs.end()));
  } else {
    const int n_max = *std::max_element(cutoffs.begin(), cutoffs.end());
    theta = ThetaSampler(n_max, s.reps, rng::derive(s.seed, kind_id(s.kind), 0), s.threads).provider();
  }
  LowerBoundMcOptions opts;
  opts.classifier.tail_length = s.tail_length;
  opts.tolerance = s.tolerance;
  std::vector<LowerBoundMcResult> res(cutoffs.size());
  parallel_for(cutoffs.size(), s.threads, [&](std::size_t k) {
    budget.check();
    res[k] = lower_bound_mc(theta, cutoffs[k], opts);
  });
  const int reps = (s.theta_table || s.exact_theta) ? 0 : s.reps;
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    const auto& r = res[k];
    auto add = [&](const char* stat, double value, double err) {
      auto row = make_row(s, stat, {value, err, reps});
      row.n0 = cutoffs[k];
      row.truncated = r.widened ? 1 : 0;
      out.rows.push_back(row);
    };
    add("", r.estimate, 0.5 * (r.hi - r.lo));
    add("lo", r.lo, 0.0);
    add("hi", r.hi, 0.0);
  }
}

Parallelogram crossing_region(const ExperimentSpec& s) {
  if (s.generators) return Parallelogram(s.generators->first, s.generators->second);
  const int ell = s.ell > 0 ? s.ell : static_cast<int>(std::ceil(std::pow(static_cast<double>(s.m), 0.45)));
  return Parallelogram({static_cast<double>(ell), 0.0},
                       {static_cast<double>(s.m + s.sign * 4 * ell), static_cast<double>(s.m)});
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::up:
      return "up";
    case Direction::right:
      return "right";
    case Direction::left:
      return "left";
  }
  return "up";
}

void run_grid(const ExperimentSpec& s, const std::vector<double>& grid, RunResult& out, const Budget& budget) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    budget.check();
    const double p = grid[k];
    const std::uint64_t key = rng::derive(s.seed, kind_id(s.kind), k);
    switch (s.kind) {
      case ExperimentKind::edge_speed: {
        const auto e = edge_speed_estimate(p, s.q, s.n, s.reps, key, s.threads);
        auto add = [&](const char* stat, const Estimate& est) {
          auto row = make_row(s, stat, est);
          row.n = s.n;
          row.p = p;
          row.q = s.q;
          row.truncated = e.excluded;
          out.rows.push_back(row);
        };
        add("alpha", e.alpha);
        add("beta", e.beta);
        add("alpha_subadditive", {e.alpha_subadditive, 0.0, e.alpha.reps});
        break;
      }
      case ExperimentKind::crossing: {
        const auto e = crossing_probability(crossing_region(s), s.direction, p, s.q, s.reps, key, s.band, s.threads);
        auto row = make_row(s, direction_name(s.direction), e);
        row.n = s.m;
        row.p = p;
        row.q = s.q;
        out.rows.push_back(row);
        break;
      }
      case ExperimentKind::defects: {
        const auto e = defects_survival(p, s.delta, s.width, s.n, s.reps, key, s.threads);
        auto row = make_row(s, "", e.survival);
        row.n = s.n;
        row.p = p;
        row.truncated = e.truncated;
        out.rows.push_back(row);
        break;
      }
      case ExperimentKind::coupling_check: {
        const std::size_t reps = static_cast<std::size_t>(s.reps);
        std::vector<CouplingVerdict> op(reps), enh(reps);
        std::vector<double> short_rate(reps);
        const bool enhanced = s.n >= 5;
        parallel_for(reps, s.threads, [&](std::size_t r) {
          const std::uint64_t rkey = rng::derive(key, r);
          op[r] = op_implies_catalan(s.n, p, rng::derive(rkey, 0));
          if (!enhanced) return;
          const EnhancedCoupling c(s.n, p, rng::derive(rkey, 1));
          enh[r] = {c.event(), occupy(c.field(), p, TruncationRule::full()).occupied(0, s.n)};
          int open = 0;
          for (int j = 0; j + 2 <= s.n; ++j) open += c.field().open(j, j + 2, p) ? 1 : 0;
          short_rate[r] = static_cast<double>(open) / (s.n - 1);
        });
        auto add = [&](const char* stat, const Estimate& est) {
          auto row = make_row(s, stat, est);
          row.n = s.n;
          row.p = p;
          out.rows.push_back(row);
        };
        auto tally = [&](const std::vector<CouplingVerdict>& v, const char* viol, const char* rate) {
          std::vector<double> reached;
          int bad = 0;
          for (const auto& x : v) {
            reached.push_back(x.reached ? 1.0 : 0.0);
            bad += x.holds() ? 0 : 1;
          }
          add(viol, {static_cast<double>(bad), 0.0, s.reps});
          add(rate, summarize(reached));
        };
        tally(op, "op_violations", "op_reached");
        if (enhanced) {
          tally(enh, "enhanced_violations", "enhanced_reached");
          add("short_edge_rate", summarize(short_rate));
        }
        break;
      }
      default:
        break;
    }
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::phi_curve:
      return "phi_curve";
    case ExperimentKind::pc_tilde:
      return "pc_tilde";
    case ExperimentKind::truncated_pc:
      return "truncated_pc";
    case ExperimentKind::lower_bound_mc:
      return "lower_bound_mc";
    case ExperimentKind::edge_speed:
      return "edge_speed";
    case ExperimentKind::crossing:
      return "crossing";
    case ExperimentKind::defects:
      return "defects";
    case ExperimentKind::coupling_check:
      return "coupling_check";
  }
  return "unknown";
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::describe() const {
  std::vector<std::pair<std::string, std::string>> d;
  d.emplace_back("experiment", to_string(kind));
  d.emplace_back("seed", std::to_string(seed));
  d.emplace_back("reps", std::to_string(reps));
  const std::vector<double> grid = p_grid.empty() ? default_grid(kind) : p_grid;
  switch (kind) {
    case ExperimentKind::phi_curve:
      d.emplace_back("n", std::to_string(n));
      d.emplace_back("p_grid", join(grid));
      break;
    case ExperimentKind::pc_tilde:
      d.emplace_back("n", std::to_string(n));
      break;
    case ExperimentKind::truncated_pc:
      d.emplace_back("n", std::to_string(n));
      d.emplace_back("L", L.empty() ? "1;2;4;8;16;32" : join(L));
      break;
    case ExperimentKind::lower_bound_mc:
      d.emplace_back("n0", n0.empty() ? "1;2;3;4;5;6;7;8;9;10" : join(n0));
      d.emplace_back("tail_length", std::to_string(tail_length));
      d.emplace_back("tolerance", num(tolerance));
      d.emplace_back("theta_source", exact_theta   ? "exact"
                                     : theta_table ? "table:" + std::to_string(theta_table->size()) + "rows"
                                                   : "monte_carlo");
      break;
    case ExperimentKind::edge_speed:
      d.emplace_back("n", std::to_string(n));
      d.emplace_back("p_grid", join(grid));
      d.emplace_back("q", num(q));
      break;
    case ExperimentKind::crossing:
      if (generators) {
        d.emplace_back("u", num(generators->first.x) + ";" + num(generators->first.y));
        d.emplace_back("v", num(generators->second.x) + ";" + num(generators->second.y));
      } else {
        d.emplace_back("m", std::to_string(m));
        d.emplace_back("ell", std::to_string(ell));
        d.emplace_back("sign", std::to_string(sign));
      }
      d.emplace_back("direction", direction_name(direction));
      d.emplace_back("band", num(band));
      d.emplace_back("p_grid", join(grid));
      d.emplace_back("q", num(q));
      break;
    case ExperimentKind::defects:
      d.emplace_back("n_max", std::to_string(n));
      d.emplace_back("p_grid", join(grid));
      d.emplace_back("delta", num(delta));
      d.emplace_back("width", std::to_string(width));
      break;
    case ExperimentKind::coupling_check:
      d.emplace_back("n", std::to_string(n));
      d.emplace_back("p_grid", join(grid));
      break;
  }
  if (max_seconds > 0.0) d.emplace_back("max_seconds", num(max_seconds));
  return d;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult run(const ExperimentSpec& spec) {
  validate(spec);
  RunResult out;
  out.spec = spec;
  std::string canonical;
  for (const auto& [k, v] : spec.describe()) canonical += k + "=" + v + "\n";
  out.spec_hash = fnv1a_hex(canonical);
  const Budget budget(spec.max_seconds);
  const std::vector<double> grid = spec.p_grid.empty() ? default_grid(spec.kind) : spec.p_grid;
  try {
    switch (spec.kind) {
      case ExperimentKind::phi_curve:
        run_phi_curve(spec, grid, out, budget);
        break;
      case ExperimentKind::pc_tilde:
      case ExperimentKind::truncated_pc:
        run_pc(spec, out, budget);
        break;
      case ExperimentKind::lower_bound_mc:
        run_lower_bound_mc(spec, out, budget);
        break;
      default:
        run_grid(spec, grid, out, budget);
        break;
    }
  } catch (const ResourceError& e) {
    out.complete = false;
    out.note = e.what();
  }
  out.wall_seconds = budget.elapsed();
  return out;
}

std::vector<double> conditioned_thresholds(int n, const std::vector<int>& L, std::uint64_t key) {
  const CouplingField field = sample_field(n, key);
  std::vector<double> t;
  t.reserve(L.size() + 1);
  t.push_back(threshold_table(field, TruncationRule::full(), true).top());
  for (int l : L) t.push_back(threshold_table(field, TruncationRule::truncated(l), true).top());
  return t;
}

ThetaSampler::ThetaSampler(int n_max, int reps, std::uint64_t seed, int threads)
    : n_max_(n_max), reps_(reps), sorted_(static_cast<std::size_t>(std::max(n_max, 0))) {
  if (n_max < 1) throw InvalidArgument("theta sampler needs n_max >= 1");
  if (reps < 1) throw InvalidArgument("reps must be positive");
  const int window = std::max(n_max, 2);
  std::vector<std::vector<double>> per_rep(static_cast<std::size_t>(reps));
  parallel_for(per_rep.size(), threads, [&](std::size_t r) {
    // Thresholds of sub-edges only involve labels inside them, so one table on
    // [0, n_max] serves every smaller window.
    const auto table = threshold_table(sample_field(window, rng::derive(seed, r)), TruncationRule::full(), false);
    auto& row = per_rep[r];
    row.resize(static_cast<std::size_t>(n_max));
    for (int n = 2; n <= n_max; ++n) row[static_cast<std::size_t>(n - 1)] = table.mediated(0, n);
  });
  for (int n = 2; n <= n_max; ++n) {
    auto& col = sorted_[static_cast<std::size_t>(n - 1)];
    col.reserve(per_rep.size());
    for (const auto& row : per_rep) col.push_back(row[static_cast<std::size_t>(n - 1)]);
    std::sort(col.begin(), col.end());
  }
}

double ThetaSampler::fraction(int n, double p) const {
  if (n < 1 || n > n_max_) throw InvalidArgument("theta-hat not sampled for n=" + std::to_string(n));
  if (n == 1) return 1.0;
  const auto& col = sorted_[static_cast<std::size_t>(n - 1)];
  const auto k = std::upper_bound(col.begin(), col.end(), p) - col.begin();
  return static_cast<double>(k) / static_cast<double>(col.size());
}

double ThetaSampler::theta(int n, double p) const { return n == 1 ? 1.0 : p * fraction(n, p); }

double ThetaSampler::std_error(int n, double p) const {
  if (n == 1 || reps_ < 2) return 0.0;
  const double f = fraction(n, p);
  return p * std::sqrt(f * (1.0 - f) / (reps_ - 1));
}

ThetaProvider ThetaSampler::provider() const {
  auto self = std::make_shared<const ThetaSampler>(*this);
  return [self](int n, double p) { return self->theta(n, p); };
}

std::vector<ThetaEstimate> ThetaSampler::table(const std::vector<double>& p_grid) const {
  std::vector<ThetaEstimate> rows;
  for (int n = 1; n <= n_max_; ++n) {
    for (double p : p_grid) rows.push_back({n, p, theta(n, p), std_error(n, p)});
  }
  return rows;
}

}  // namespace catperc
