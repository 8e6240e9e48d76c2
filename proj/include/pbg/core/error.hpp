#pragma once

#include <stdexcept>
#include <string>

namespace pbg {

/// Base class of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration (bad length, negative photon number, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Linear signal/idler boundary system has no unique solution.
class SingularBoundary : public Error {
 public:
  using Error::Error;
};

/// Newton shooting did not converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Transfer matrix integration produced non-finite entries.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double z) : Error(what), z_(z) {}
  double z() const noexcept { return z_; }

 private:
  double z_;
};

/// Backward block of the transfer matrix too close to singular for inversion.
class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Composite quadrature failed to reach its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double a, double b)
      : Error(what), a_(a), b_(b) {}
  double worst_lower() const noexcept { return a_; }
  double worst_upper() const noexcept { return b_; }

 private:
  double a_, b_;
};

/// Gaussian state whose Husimi covariance is not positive definite.
class UnphysicalState : public Error {
 public:
  using Error::Error;
};

/// Configuration file problem; the message carries the offending field path.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace pbg
