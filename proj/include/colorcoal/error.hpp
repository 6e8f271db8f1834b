#pragma once

#include <stdexcept>
#include <string>

namespace colorcoal {

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear system is singular or too ill-conditioned to solve reliably.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by lump() when the partition fails the lumpability criterion.
class NotLumpable : public std::runtime_error {
 public:
  NotLumpable(const std::string& what, double max_violation)
      : std::runtime_error(what), max_violation_(max_violation) {}
  double max_violation() const noexcept { return max_violation_; }

 private:
  double max_violation_;
};

/// Bayes posterior with zero total likelihood.
class UndefinedPosterior : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw InvalidArgument(message);
}

inline void require_color_parameter(double x) {
  if (!(x > 0.0 && x < 1.0))
    throw InvalidArgument("color parameter x must lie in the open interval (0, 1)");
}

}  // namespace detail
}  // namespace colorcoal
