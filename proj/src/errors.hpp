#pragma once

#include <stdexcept>
#include <string>

namespace luwave {

/// Bad configuration or construction arguments (maps to CLI exit code 2).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach its tolerance (maps to CLI exit code 3).
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A running simulation hit an invalid state (dry cell, NaN), with where/when.
class simulation_error : public std::runtime_error {
 public:
  simulation_error(const std::string& what, double time, double position)
      : std::runtime_error(what), time_(time), position_(position) {}
  double time() const { return time_; }
  double position() const { return position_; }

 private:
  double time_ = 0.0;
  double position_ = 0.0;
};

}  // namespace luwave
