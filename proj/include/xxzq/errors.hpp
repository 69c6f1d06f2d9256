#pragma once

#include <stdexcept>
#include <string>

namespace xxzq {

class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A Bogoliubov mode with vanishing energy; the angle and A_q/eps_q are undefined.
class SingularModeError : public std::runtime_error {
public:
  SingularModeError(const std::string& what, double q) : std::runtime_error(what), q_(q) {}
  double momentum() const noexcept { return q_; }

private:
  double q_;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Raised when a reduced state is negative beyond round-off.
class PhysicalityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace xxzq
