#pragma once

#include <stdexcept>
#include <string>

namespace catperc {

/// Bad parameters: window too small, probability outside [0,1], unknown option.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its budget (enumeration size, truncation rate).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parallelogram rasterizes to no lattice points.
class DegenerateRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

}  // namespace catperc
