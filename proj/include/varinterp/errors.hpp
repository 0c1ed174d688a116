#pragma once

#include <stdexcept>
#include <string>

namespace varinterp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The leading strong-coupling coefficient b0(c) has no positive extremum.
class NoExtremum : public Error {
 public:
  using Error::Error;
};

/// b0''(c) vanishes at the optimal growth constant; the shift expansion is singular.
class DegenerateCurvature : public Error {
 public:
  using Error::Error;
};

/// Neither dW/dOmega nor d2W/dOmega2 has a positive root inside the scan window.
class NoCandidate : public Error {
 public:
  NoCandidate(const std::string& what, double alpha) : Error(what), alpha_(alpha) {}
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (model file, grid specification, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace varinterp
