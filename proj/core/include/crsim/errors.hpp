#pragma once

#include <stdexcept>
#include <string>

namespace crsim {

/// Malformed or out-of-range scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A root finder or bisection did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Moments describe a point mass (zero variance), so shape statistics are undefined.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crsim
