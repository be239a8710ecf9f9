#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fista_affine {

// Raised when an operand's dimension does not match what an operation expects.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected_dim, std::size_t got_dim, const std::string& where)
      : std::invalid_argument("dimension mismatch in " + where + ": expected " +
                              std::to_string(expected_dim) + ", got " + std::to_string(got_dim)),
        expected(expected_dim),
        got(got_dim) {}

  std::size_t expected;
  std::size_t got;
};

// Raised by fixed-point decomposition when the affine map has no fixed point.
class NoFixedPoint : public std::runtime_error {
 public:
  explicit NoFixedPoint(double ls_residual)
      : std::runtime_error("affine map has no fixed point (least-squares residual " +
                           std::to_string(ls_residual) + ")"),
        residual(ls_residual) {}

  double residual;
};

// Raised when a step-size sequence violates one of its defining conditions.
class SequenceConditionError : public std::invalid_argument {
 public:
  SequenceConditionError(const std::string& condition_name, std::size_t offending_index,
                         double offending_value)
      : std::invalid_argument("t-sequence violates " + condition_name + " at index " +
                              std::to_string(offending_index) + " (value " +
                              std::to_string(offending_value) + ")"),
        condition(condition_name),
        index(offending_index),
        value(offending_value) {}

  std::string condition;
  std::size_t index;
  double value;
};

// Raised when the supplied step constant is below the smoothness threshold.
class SmoothnessError : public std::invalid_argument {
 public:
  SmoothnessError(double beta_value, double rayleigh_quotient)
      : std::invalid_argument("beta " + std::to_string(beta_value) +
                              " is below the smoothness threshold; violating Rayleigh quotient " +
                              std::to_string(rayleigh_quotient)),
        beta(beta_value),
        rayleigh(rayleigh_quotient) {}

  double beta;
  double rayleigh;
};

// Raised when the objective has no minimizer (solution set empty).
class UnsolvableProblem : public std::runtime_error {
 public:
  explicit UnsolvableProblem(const std::string& why) : std::runtime_error(why) {}
};

// Raised on malformed experiment configuration; carries the offending field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& why) : std::runtime_error(why) {}
};

}  // namespace fista_affine
