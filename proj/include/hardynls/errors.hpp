#pragma once

#include <stdexcept>
#include <string>

namespace hardynls {

// Base of every error the library throws. The CLI maps ParameterError to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class ParameterError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parameter"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class ShapeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "shape"; }
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate_input"; }
};

/// Raised by the ground-state flow when max_iter is exhausted.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double last_J,
                   double last_residual)
      : Error(what),
        iterations(iterations),
        last_J(last_J),
        last_residual(last_residual) {}
  const char* kind() const noexcept override { return "convergence"; }

  int iterations;
  double last_J;
  double last_residual;
};

/// Raised by a time step whose implicit nonlinear stage did not converge.
class StepError : public Error {
 public:
  StepError(const std::string& what, double time, int fixed_point_iterations,
            double last_update)
      : Error(what),
        time(time),
        fixed_point_iterations(fixed_point_iterations),
        last_update(last_update) {}
  const char* kind() const noexcept override { return "step"; }

  double time;
  int fixed_point_iterations;
  double last_update;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time) : Error(what), time(time) {}
  const char* kind() const noexcept override { return "blow_up"; }

  double time;
};

}  // namespace hardynls
