#pragma once

#include <stdexcept>
#include <string>

namespace ferrowrite {

// Thrown when an iterative solve exhausts its budget.  Carries the
// temperature of the failing point so sweeps can report where they died.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double temperature)
      : std::runtime_error(what), temperature_(temperature) {}

  double temperature() const noexcept { return temperature_; }

 private:
  double temperature_;
};

// Thrown when a pulse-angle set cannot be certified against its target
// state.  Carries the best trace distance achieved before giving up.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(const std::string& what, double temperature,
                     double best_distance)
      : std::runtime_error(what),
        temperature_(temperature),
        best_distance_(best_distance) {}

  double temperature() const noexcept { return temperature_; }
  double best_distance() const noexcept { return best_distance_; }

 private:
  double temperature_;
  double best_distance_;
};

// Thrown when a population vector lies outside the image of the pulse
// map (two-qubit product form violated).
class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a scan grid fails to bracket the feature it searches for.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or contradictory run configuration (CLI or config file).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure while reading or writing tables.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ferrowrite
