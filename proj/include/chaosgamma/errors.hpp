#pragma once

#include <stdexcept>
#include <string>

namespace chaosgamma {

/// Invalid configuration or CLI input. Mapped to exit code 2 by the CLI.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its accuracy target. Carries the best
/// estimate obtained so far and a bound on its error. Exit code 3 in the CLI.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
  numeric_error(const std::string& what, double best, double bound)
      : std::runtime_error(what), best_estimate(best), error_bound(bound) {}

  double best_estimate = 0.0;
  double error_bound = 0.0;
};

/// Filesystem failure while writing results. Exit code 4 in the CLI.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chaosgamma
