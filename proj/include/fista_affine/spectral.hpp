#pragma once

#include <cmath>
#include <cstddef>

#include "fista_affine/linear_map.hpp"
#include "fista_affine/rng.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

struct SpectralBound {
  double value = 0.0;  // upper bound on ||A||^2 (with 1% headroom)
  bool zero_map = false;
};

/// Upper bound on the squared operator norm via power iteration on A*A.
/// The 1.01 factor covers the (one-sided) underestimate power iteration can
/// leave after a fixed number of steps; the start vector is seeded so results
/// are reproducible across runs and platforms.
inline SpectralBound spectral_norm_sq_upper(const LinearMap& a) {
  const std::size_t n = a.in_dim();
  if (n == 0) return SpectralBound{0.0, true};
  SeededRng rng(0x5eedbeefULL);
  Vector x = rng.uniform_vector(n, -1.0, 1.0);
  double nx = norm(x);
  if (nx == 0.0) x = Vector::unit(n, 0), nx = 1.0;
  for (std::size_t i = 0; i < n; ++i) x[i] /= nx;

  double lambda = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    Vector y = a.apply_adjoint(a.apply(x));
    const double ny = norm(y);
    if (ny == 0.0) return SpectralBound{0.0, true};
    lambda = dot(x, y);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  if (lambda <= 0.0) return SpectralBound{0.0, true};
  return SpectralBound{1.01 * lambda, false};
}

/// Estimate of the smallest eigenvalue of a symmetric map, via power
/// iteration on (shift * Id - A) where shift bounds the largest eigenvalue.
/// Used to reject indefinite quadratic terms, so a mildly conservative
/// (too small) answer is fine.
inline double min_eigenvalue_estimate(const LinearMap& a) {
  const std::size_t n = a.in_dim();
  if (n == 0) return 0.0;
  const SpectralBound top = spectral_norm_sq_upper(a);
  if (top.zero_map) return 0.0;
  const double shift = std::sqrt(top.value);

  SeededRng rng(0x0ddba115ULL);
  Vector x = rng.uniform_vector(n, -1.0, 1.0);
  double nx = norm(x);
  if (nx == 0.0) x = Vector::unit(n, 0), nx = 1.0;
  for (std::size_t i = 0; i < n; ++i) x[i] /= nx;

  double rayleigh = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const Vector ax = a.apply(x);
    Vector y = axpy(shift, x, -1.0 * ax);  // (shift*I - A) x
    const double ny = norm(y);
    if (ny == 0.0) break;  // A = shift*I on this vector's orbit
    rayleigh = dot(x, ax);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  const Vector ax = a.apply(x);
  rayleigh = dot(x, ax);
  return rayleigh;
}

}  // namespace fista_affine
