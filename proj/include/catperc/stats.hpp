#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace catperc {

/// Sample mean with standard error (sample standard deviation / sqrt(reps)).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  int reps = 0;
};

inline Estimate summarize(const std::vector<double>& xs) {
  Estimate e;
  e.reps = static_cast<int>(xs.size());
  if (xs.empty()) {
    e.mean = e.std_error = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (!std::isfinite(e.mean)) {
    e.std_error = std::numeric_limits<double>::infinity();
    return e;
  }
  if (xs.size() < 2) return e;
  double ss = 0.0;
  for (double x : xs) ss += (x - e.mean) * (x - e.mean);
  e.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  return e;
}

}  // namespace catperc
