#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace formation {

// Base class for failures raised by the library. The integration loop tags
// in-flight errors with the simulation time at which they surfaced.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}

  void set_time(double t) {
    if (time_) return;
    time_ = t;
    annotated_ = "t=" + std::to_string(t) + ": " + std::runtime_error::what();
  }

  [[nodiscard]] std::optional<double> time() const noexcept { return time_; }

  [[nodiscard]] const char* what() const noexcept override {
    return annotated_.empty() ? std::runtime_error::what() : annotated_.c_str();
  }

 private:
  std::optional<double> time_;
  std::string annotated_;
};

// Two agents (numerically) share a position; bearings are undefined.
class CoincidentAgents : public SimError {
  using SimError::SimError;
};

// A distance estimate fell to or below the 1/r-hat guard.
class EstimatorSingular : public SimError {
  using SimError::SimError;
};

// Graph construction rule violated.
class InvalidAttachment : public SimError {
  using SimError::SimError;
};

// Scenario file or programmatic configuration rejected.
class ConfigError : public SimError {
  using SimError::SimError;
};

// Integration produced NaN or infinity.
class NonFiniteState : public SimError {
  using SimError::SimError;
};

}  // namespace formation
