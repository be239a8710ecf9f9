#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fista_affine/linear_map.hpp"
#include "fista_affine/matrix.hpp"
#include "fista_affine/orthonormal.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

/// Thin SVD of an m x n matrix, singular values descending. v always holds a
/// full n x n orthogonal matrix, so trailing columns span the kernel; columns
/// of u beyond the numerical rank are zero.
struct SvdResult {
  Matrix u;                   // m x n
  std::vector<double> sigma;  // length n, descending
  Matrix v;                   // n x n
};

/// One-sided Jacobi SVD. Wide inputs are zero-padded with rows (this leaves
/// singular values and right vectors unchanged) so the full right basis is
/// always recovered. Small singular values come out with high relative
/// accuracy, which is what the rank decisions downstream lean on.
inline SvdResult jacobi_svd(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n == 0) return SvdResult{Matrix(m, 0), {}, Matrix(0, 0)};

  const std::size_t mp = std::max(m, n);
  Matrix w(mp, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w.at(i, j) = a.at(i, j);
  Matrix v = Matrix::identity(n);

  const double conv = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < mp; ++i) {
          app += w.at(i, p) * w.at(i, p);
          aqq += w.at(i, q) * w.at(i, q);
          apq += w.at(i, p) * w.at(i, q);
        }
        if (std::abs(apq) <= conv * std::sqrt(app * aqq)) continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < mp; ++i) {
          const double wp = w.at(i, p), wq = w.at(i, q);
          w.at(i, p) = c * wp - s * wq;
          w.at(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v.at(i, p), vq = v.at(i, q);
          v.at(i, p) = c * vp - s * vq;
          v.at(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < mp; ++i) s += w.at(i, j) * w.at(i, j);
    sigma[j] = std::sqrt(s);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  SvdResult r;
  r.u = Matrix(m, n);
  r.v = Matrix(n, n);
  r.sigma.resize(n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    r.sigma[jj] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) r.v.at(i, jj) = v.at(i, j);
    if (sigma[j] > 0.0)
      for (std::size_t i = 0; i < m; ++i) r.u.at(i, jj) = w.at(i, j) / sigma[j];
  }
  return r;
}

/// Singular values at or below max(rows, cols) * eps * sigma_max are treated
/// as zero everywhere in this library.
inline double rank_cutoff(const SvdResult& s, std::size_t rows, std::size_t cols) {
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * smax;
}

struct LeastSquaresSolution {
  Vector particular;                 // minimum-norm least-squares solution
  std::vector<Vector> kernel_basis;  // orthonormal basis of ker A
  double residual;                   // ||A particular - b||
};

/// Minimum-norm solution of min ||A x - b|| plus an orthonormal kernel basis.
///
/// cutoff_floor raises the rank cutoff to an absolute level. It matters when
/// a carries entry-level noise inherited from a larger computation (e.g. a is
/// a compression of a bigger operator): the default cutoff is relative to
/// a's own top singular value, which misreads pure noise as signal when the
/// compression is numerically zero. Callers pass eps * dim * scale-of-parent.
inline LeastSquaresSolution min_norm_least_squares(const Matrix& a, const Vector& b,
                                                   double cutoff_floor = 0.0) {
  if (b.dim() != a.rows()) throw DimensionMismatch(a.rows(), b.dim(), "min_norm_least_squares");
  const SvdResult s = jacobi_svd(a);
  const double cutoff = std::max(rank_cutoff(s, a.rows(), a.cols()), cutoff_floor);

  LeastSquaresSolution out;
  out.particular = Vector(a.cols());
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    if (s.sigma[j] <= cutoff) {
      out.kernel_basis.push_back(s.v.column(j));
      continue;
    }
    const double c = dot(s.u.column(j), b) / s.sigma[j];
    for (std::size_t i = 0; i < a.cols(); ++i) out.particular[i] += c * s.v.at(i, j);
  }
  out.residual = distance(a.apply(out.particular), b);
  return out;
}

inline LeastSquaresSolution min_norm_least_squares(const LinearMap& a, const Vector& b) {
  return min_norm_least_squares(a.to_dense(), b);
}

/// Smallest singular value above the rank cutoff; 0 for the zero matrix.
inline double smallest_nonzero_singular(const Matrix& a) {
  const SvdResult s = jacobi_svd(a);
  const double cutoff = rank_cutoff(s, a.rows(), a.cols());
  double smallest = 0.0;
  for (double sv : s.sigma)
    if (sv > cutoff) smallest = sv;
  return smallest;
}

/// Sine of the largest principal angle between the spans of two orthonormal
/// families; 1 when the dimensions differ. Computed from the residual
/// (I - P2)B1 (and symmetrically), which stays accurate near zero where the
/// cross-Gram cosine saturates.
inline double subspace_deviation(const std::vector<Vector>& b1, const std::vector<Vector>& b2) {
  if (b1.size() != b2.size()) return 1.0;
  if (b1.empty()) return 0.0;
  const std::size_t n = b1.front().dim();
  auto one_sided = [n](const std::vector<Vector>& from, const std::vector<Vector>& onto) {
    std::vector<Vector> residuals;
    residuals.reserve(from.size());
    for (const Vector& v : from) {
      Vector r = v;
      for (const Vector& w : onto) {
        const double c = dot(r, w);
        for (std::size_t i = 0; i < n; ++i) r[i] -= c * w[i];
      }
      residuals.push_back(r);
    }
    const SvdResult s = jacobi_svd(Matrix::from_columns(residuals, n));
    return s.sigma.empty() ? 0.0 : std::min(1.0, s.sigma.front());
  };
  return std::max(one_sided(b1, b2), one_sided(b2, b1));
}

}  // namespace fista_affine
