#pragma once

#include <stdexcept>
#include <string>

namespace qjump {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (n < 0, etc).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// The integrand produced NaN or Inf.
class NonFiniteIntegrand : public Error {
 public:
  NonFiniteIntegrand(double abscissa)
      : Error("integrand is not finite at z = " + std::to_string(abscissa)),
        abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Adaptive quadrature hit its subdivision cap before meeting tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double error_estimate)
      : Error(what), error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

/// Upsilon(t) vanished, so the su(1,1) disentangled form does not exist there.
class SingularFactorization : public Error {
 public:
  using Error::Error;
};

class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

/// Asymptotic formula requested outside its approximate validity window.
class RegimeViolation : public Error {
 public:
  RegimeViolation(const std::string& what, double threshold)
      : Error(what), threshold_(threshold) {}
  double threshold() const noexcept { return threshold_; }

 private:
  double threshold_;
};

}  // namespace qjump
