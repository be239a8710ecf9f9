#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fista_affine/errors.hpp"

namespace fista_affine {

enum class TFamily { nesterov_recursive, linear_half, custom_explicit };

inline const char* t_family_name(TFamily f) {
  switch (f) {
    case TFamily::nesterov_recursive: return "nesterov_recursive";
    case TFamily::linear_half: return "linear_half";
    case TFamily::custom_explicit: return "custom_explicit";
  }
  return "unknown";
}

namespace detail {

// Slack of t_n >= (n+2)/2; admissible when >= -1e-12.
inline double growth_slack(double tn, std::size_t n) {
  return tn - 0.5 * (static_cast<double>(n) + 2.0);
}

// Slack of t_n^2 >= t_{n+1}^2 - t_{n+1}, evaluated as
// (t_n - t_{n+1})(t_n + t_{n+1}) + t_{n+1} to avoid squaring large values and
// cancelling; admissible when >= -1e-9.
inline double momentum_slack(double tn, double tnext) {
  return (tn - tnext) * (tn + tnext) + tnext;
}

// Slack of t_n <= (n+1+sqrt(n+1))/2; admissible when >= -1e-9.
inline double envelope_slack(double tn, std::size_t n) {
  const double np1 = static_cast<double>(n) + 1.0;
  return 0.5 * (np1 + std::sqrt(np1)) - tn;
}

inline double nudge_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, 0.0);
  return x;
}

}  // namespace detail

/// Step-size sequence t_0 = 1, t_1, t_2, ... satisfying the growth lower
/// bound t_n >= (n+2)/2 and the momentum recurrence t_n^2 >= t_{n+1}^2 -
/// t_{n+1} (and consequently the upper envelope t_n <= (n+1+sqrt(n+1))/2).
///
/// nesterov_recursive realizes the recurrence with equality,
/// t_{n+1} = (1+sqrt(1+4 t_n^2))/2. Each root is stored nudged down a few
/// ulps: the exact root makes the recurrence slack a rounding coin-flip when
/// re-evaluated in doubles (magnitude ~1e-6 at n = 1e5, far outside the
/// -1e-9 admissible slack), while the nudge keeps the stored values on the
/// admissible side with margin and within 1e-12 relative of the exact
/// recursion.
class TSequence {
 public:
  static TSequence nesterov() { return TSequence(TFamily::nesterov_recursive, {}); }

  static TSequence linear_half() { return TSequence(TFamily::linear_half, {}); }

  /// Validates the list; throws SequenceConditionError naming the violated
  /// condition and the first offending index.
  static TSequence custom(std::vector<double> values) {
    if (values.empty())
      throw SequenceConditionError("initial value", 0, 0.0);
    if (values[0] != 1.0) throw SequenceConditionError("initial value", 0, values[0]);
    for (std::size_t n = 0; n < values.size(); ++n) {
      if (detail::growth_slack(values[n], n) < -1e-12)
        throw SequenceConditionError("growth lower bound", n, values[n]);
      if (detail::envelope_slack(values[n], n) < -1e-9)
        throw SequenceConditionError("upper envelope", n, values[n]);
      if (n + 1 < values.size() && detail::momentum_slack(values[n], values[n + 1]) < -1e-9)
        throw SequenceConditionError("momentum recurrence", n, values[n + 1]);
    }
    return TSequence(TFamily::custom_explicit, std::move(values));
  }

  /// Skips validation; for diagnostic code that reports violations instead of
  /// rejecting them.
  static TSequence custom_unchecked(std::vector<double> values) {
    return TSequence(TFamily::custom_explicit, std::move(values));
  }

  TFamily family() const { return family_; }

  /// Number of available values; unbounded (max size_t) for generated families.
  std::size_t available() const {
    return family_ == TFamily::custom_explicit ? values_.size()
                                               : static_cast<std::size_t>(-1);
  }

  double value(std::size_t n) {
    if (family_ == TFamily::custom_explicit) {
      if (n >= values_.size())
        throw std::out_of_range("custom t-sequence has " + std::to_string(values_.size()) +
                                " values; index " + std::to_string(n) + " requested");
      return values_[n];
    }
    if (family_ == TFamily::linear_half) return 0.5 * (static_cast<double>(n) + 2.0);
    while (values_.size() <= n) {
      const double t = values_.back();
      const double root = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      values_.push_back(detail::nudge_down(root, 8));
    }
    return values_[n];
  }

 private:
  TSequence(TFamily family, std::vector<double> values)
      : family_(family), values_(std::move(values)) {
    if (family_ == TFamily::nesterov_recursive) values_.push_back(1.0);
  }

  TFamily family_;
  std::vector<double> values_;
};

inline TSequence make_t_sequence(TFamily family, std::vector<double> custom_values = {}) {
  switch (family) {
    case TFamily::nesterov_recursive: return TSequence::nesterov();
    case TFamily::linear_half: return TSequence::linear_half();
    case TFamily::custom_explicit: return TSequence::custom(std::move(custom_values));
  }
  throw std::invalid_argument("unknown t-sequence family");
}

}  // namespace fista_affine
