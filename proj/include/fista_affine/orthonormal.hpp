#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fista_affine/vector.hpp"

namespace fista_affine {

namespace detail {

// Subtract from v its components along each member of basis (classical
// Gram-Schmidt step, applied twice by the callers below).
inline Vector orthogonalize_once(Vector v, const std::vector<Vector>& basis) {
  for (const Vector& b : basis) {
    const double c = dot(v, b);
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] -= c * b[i];
  }
  return v;
}

}  // namespace detail

/// Two-pass (re-orthogonalized) Gram-Schmidt. Near-dependent inputs are
/// dropped when the orthogonalized residual falls below the rank cutoff
/// max(dim, count) * eps * (original norm).
inline std::vector<Vector> orthonormalize(const std::vector<Vector>& input) {
  std::vector<Vector> basis;
  if (input.empty()) return basis;
  const std::size_t n = input.front().dim();
  const double eps = std::numeric_limits<double>::epsilon();
  const double dim_factor = static_cast<double>(n > input.size() ? n : input.size());
  for (const Vector& raw : input) {
    const double original = norm(raw);
    Vector v = detail::orthogonalize_once(raw, basis);
    v = detail::orthogonalize_once(v, basis);
    const double r = norm(v);
    if (r <= dim_factor * eps * original || r == 0.0) continue;
    basis.push_back((1.0 / r) * v);
  }
  return basis;
}

/// Extends an orthonormal family to an orthonormal basis of R^dim. The input
/// vectors are kept verbatim; each completion round orthogonalizes every
/// standard basis vector against the family and keeps the largest residual,
/// which is guaranteed at least sqrt((dim - size)/dim) in exact arithmetic.
inline std::vector<Vector> complete_basis(const std::vector<Vector>& onb, std::size_t dim) {
  std::vector<Vector> full = onb;
  while (full.size() < dim) {
    Vector best;
    double best_r = -1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      Vector v = detail::orthogonalize_once(Vector::unit(dim, j), full);
      v = detail::orthogonalize_once(v, full);
      const double r = norm(v);
      if (r > best_r) {
        best_r = r;
        best = v;
      }
    }
    if (best_r <= 1e-8) throw std::runtime_error("basis completion failed");
    full.push_back((1.0 / best_r) * best);
  }
  return full;
}

}  // namespace fista_affine
