#ifndef FRI2D_ERRORS_HPP
#define FRI2D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fri2d {

/// Input violates a documented precondition (shape, range, format).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid shapes are incompatible (filter larger than sample grid, ...).
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Oracle grid too coarse for the requested frequencies.
class ResolutionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed TRIGPOLY / FSAMPLES text.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerically degenerate input: all-zero systems, zero polynomials.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fri2d

#endif  // FRI2D_ERRORS_HPP
