#pragma once

#include <cstdint>
#include <random>

#include "fista_affine/vector.hpp"

namespace fista_affine {

/// Deterministic random source. Doubles are derived from the raw mt19937_64
/// stream directly (not through std::*_distribution), so a given seed yields
/// the same values on every standard library implementation.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // standard normal via Box-Muller
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = unit();
    } while (u <= 0.0);
    const double v = unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return eng_(); }

  Vector uniform_vector(std::size_t dim, double lo, double hi) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vector gaussian_vector(std::size_t dim) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = gaussian();
    return v;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fista_affine
