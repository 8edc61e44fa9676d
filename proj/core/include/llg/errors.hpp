#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace llg {

/// Rejected user input: bad parameter combination, malformed configuration,
/// unreadable or unwritable files. The command line maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical blow-up: a node norm collapsed below the renormalization
/// threshold or the state stopped being finite. Exit code 3.
class BlowupError : public std::runtime_error {
 public:
  explicit BlowupError(const std::string& what,
                       double t = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), time_(t) {}

  /// Simulation time at which the failure was detected; NaN when unknown.
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace llg
