#pragma once

#include "catperc/oriented.hpp"
#include "catperc/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace catperc {

enum class ExperimentKind { phi_curve, pc_tilde, truncated_pc, lower_bound_mc, edge_speed, crossing, defects, coupling_check };

std::string to_string(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::phi_curve;
  int n = 100;                   // window length, OP depth (edge speed uses 2n levels), defects n_max
  std::vector<int> L;            // truncated_pc sweep
  std::vector<double> p_grid;    // phi_curve, edge_speed, crossing, defects, coupling_check
  double q = 0.0;
  int reps = 1000;
  std::vector<int> n0;           // lower_bound_mc cutoffs
  std::uint64_t seed = 1;
  int threads = 1;

  // lower_bound_mc
  int tail_length = 4000;
  double tolerance = 1e-4;
  std::optional<std::vector<ThetaEstimate>> theta_table;  // replaces the Monte Carlo theta-hat
  bool exact_theta = false;  // exact theta_n instead (n0 <= 8)

  // crossing: R((ell,0),(m + sign*4*ell, m)) unless u and v are given
  int m = 200;
  int ell = 0;                   // 0 selects ceil(m^0.45)
  int sign = -1;
  std::optional<std::pair<Vec2, Vec2>> generators;
  Direction direction = Direction::up;
  double band = 1.0;

  // defects
  double delta = 0.05;
  int width = 0;                 // 0 selects n + 1

  /// Wall-clock budget in seconds; 0 means none. When exceeded the run stops
  /// between points and is reported incomplete.
  double max_seconds = 0.0;

  /// Canonical "key=value" lines describing every field that affects output.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

struct ResultRow {
  std::string experiment;  // "<kind>[.<statistic>]"
  std::optional<int> n;
  std::optional<int> L;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<int> n0;
  double estimate = 0.0;
  double std_error = 0.0;
  int reps = 0;
  int truncated = 0;
  std::uint64_t seed = 0;
};

struct RunResult {
  ExperimentSpec spec;
  std::vector<ResultRow> rows;
  bool complete = true;
  std::string note;            // why the run is incomplete
  std::string spec_hash;       // FNV-1a of describe()
  double wall_seconds = 0.0;   // never serialized
};

/// Deterministic in (spec, seed): replicate r of point k uses the substream
/// derive(seed, kind, k, r), whatever the thread count.
RunResult run(const ExperimentSpec& spec);

/// Monte Carlo theta-hat: conditioned thresholds of {0,n} for every n <= n_max,
/// read from one threshold table per replicate on [0, n_max].
class ThetaSampler {
 public:
  ThetaSampler(int n_max, int reps, std::uint64_t seed, int threads = 1);

  int n_max() const { return n_max_; }
  int reps() const { return reps_; }
  /// p * (fraction of replicates with conditioned threshold <= p); 1 for n = 1.
  double theta(int n, double p) const;
  double std_error(int n, double p) const;
  ThetaProvider provider() const;
  std::vector<ThetaEstimate> table(const std::vector<double>& p_grid) const;

 private:
  double fraction(int n, double p) const;
  int n_max_, reps_;
  std::vector<std::vector<double>> sorted_;  // index n - 1
};

/// One conditioned threshold per replicate: p-tilde_c(n), or its truncated
/// counterparts for each L (entry 0 is the full rule).
std::vector<double> conditioned_thresholds(int n, const std::vector<int>& L, std::uint64_t key);

std::string fnv1a_hex(const std::string& text);

}  // namespace catperc
