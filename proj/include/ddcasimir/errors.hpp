#ifndef DDCASIMIR_ERRORS_HPP
#define DDCASIMIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ddcasimir {

/// Argument outside the domain of an operation (negative frequency, q <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matching coefficient (1 +- lambda f)^-1 diverges at this frequency.
class SingularMatchingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real-axis integrand denominator vanished.
class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its panel budget. Carries the partial result.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double partial, double error)
      : std::runtime_error(what), partial_(partial), error_(error) {}

  double partial_result() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double partial_;
  double error_;
};

/// Force ratio requested where the beta = 0 companion force is zero.
class RatioUndefinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ddcasimir

#endif  // DDCASIMIR_ERRORS_HPP
