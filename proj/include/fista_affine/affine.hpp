#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "fista_affine/errors.hpp"
#include "fista_affine/linear_map.hpp"
#include "fista_affine/orthonormal.hpp"
#include "fista_affine/svd.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

/// Affine subspace anchor + span(basis), stored with its minimum-norm element
/// as the anchor (so anchor is orthogonal to every basis vector) and an
/// orthonormal basis of the parallel subspace.
struct AffineSubspace {
  Vector anchor;
  std::vector<Vector> basis;
  std::size_t ambient = 0;

  std::size_t dim() const { return basis.size(); }

  static AffineSubspace from_point_and_directions(const Vector& point,
                                                  const std::vector<Vector>& directions) {
    for (const Vector& d : directions) require_same_dim(point, d, "AffineSubspace directions");
    AffineSubspace v;
    v.ambient = point.dim();
    v.basis = orthonormalize(directions);
    // two orthogonalization passes pin the anchor's residual components
    // along the basis to the scale of the anchor itself, not of the point
    Vector a = detail::orthogonalize_once(point, v.basis);
    v.anchor = detail::orthogonalize_once(a, v.basis);
    return v;
  }

  static AffineSubspace whole_space(std::size_t dim) {
    AffineSubspace v;
    v.ambient = dim;
    v.anchor = Vector(dim);
    for (std::size_t j = 0; j < dim; ++j) v.basis.push_back(Vector::unit(dim, j));
    return v;
  }

  static AffineSubspace single_point(Vector point) {
    AffineSubspace v;
    v.ambient = point.dim();
    v.anchor = std::move(point);
    return v;
  }

  static AffineSubspace linear_span(const std::vector<Vector>& directions, std::size_t dim) {
    AffineSubspace v;
    v.ambient = dim;
    v.anchor = Vector(dim);
    v.basis = orthonormalize(directions);
    for (const Vector& b : v.basis)
      if (b.dim() != dim) throw DimensionMismatch(dim, b.dim(), "AffineSubspace::linear_span");
    return v;
  }
};

namespace detail {

inline Vector project_affine_once(const AffineSubspace& v, const Vector& x) {
  const Vector d = x - v.anchor;
  Vector p = v.anchor;
  for (const Vector& b : v.basis) p = axpy(dot(d, b), b, p);
  return p;
}

}  // namespace detail

/// Orthogonal projection onto an affine subspace: anchor + sum of basis
/// components of (x - anchor).
///
/// A single pass of that formula is not exactly idempotent in floating point
/// (reprojecting a projected point flips last bits), so inputs that already
/// sit within reprojection rounding noise of the subspace are returned
/// unchanged. Any projected output lands inside that snap zone, which makes
/// the function exactly idempotent while perturbing results by at most a few
/// ulps at the data's scale.
inline Vector project_affine(const AffineSubspace& v, const Vector& x) {
  if (x.dim() != v.ambient) throw DimensionMismatch(v.ambient, x.dim(), "project_affine");
  const Vector p = detail::project_affine_once(v, x);
  const double snap = 32.0 * static_cast<double>(v.ambient) *
                      std::numeric_limits<double>::epsilon() *
                      (1.0 + norm(x) + norm(v.anchor));
  if (distance(x, p) <= snap) return x;
  return p;
}

/// Projection onto the parallel (linear) subspace.
inline Vector project_parallel(const AffineSubspace& v, const Vector& x) {
  if (x.dim() != v.ambient) throw DimensionMismatch(v.ambient, x.dim(), "project_parallel");
  Vector p(v.ambient);
  for (const Vector& b : v.basis) p = axpy(dot(x, b), b, p);
  return p;
}

inline double distance_to(const AffineSubspace& v, const Vector& x) {
  return distance(x, project_affine(v, x));
}

/// x -> linear(x) + translation. Every affine evaluation in the library goes
/// through evaluate(), so identical inputs give bitwise identical outputs.
struct AffineMap {
  LinearMap linear;
  Vector translation;
  bool nonexpansive = false;

  Vector evaluate(const Vector& x) const { return linear.apply(x) + translation; }

  std::size_t dim() const { return translation.dim(); }
};

inline AffineMap make_affine(LinearMap linear, Vector translation, bool nonexpansive = false) {
  if (linear.in_dim() != linear.out_dim())
    throw DimensionMismatch(linear.in_dim(), linear.out_dim(), "make_affine");
  if (linear.out_dim() != translation.dim())
    throw DimensionMismatch(linear.out_dim(), translation.dim(), "make_affine");
  return AffineMap{std::move(linear), std::move(translation), nonexpansive};
}

/// f then g outside: x -> f(g(x)).
inline AffineMap compose_affine(const AffineMap& f, const AffineMap& g) {
  return AffineMap{LinearMap::compose(f.linear, g.linear),
                   f.linear.apply(g.translation) + f.translation,
                   f.nonexpansive && g.nonexpansive};
}

/// The projector onto an affine subspace as an AffineMap (linear part is the
/// parallel projector, translation the anchor's orthogonal remainder).
inline AffineMap affine_projector(const AffineSubspace& v) {
  LinearMap p = LinearMap::projector(v.basis, v.ambient);
  Vector t = v.anchor - p.apply(v.anchor);
  return AffineMap{std::move(p), std::move(t), true};
}

/// Fix T = anchor + span(fix_directions) for an affine map T = L + q.
struct FixedPointDecomposition {
  Vector anchor;                       // minimum-norm fixed point of T
  std::vector<Vector> fix_directions;  // orthonormal basis of Fix L = ker(Id - L)

  AffineSubspace as_subspace() const {
    AffineSubspace v;
    v.anchor = anchor;
    v.basis = fix_directions;
    v.ambient = anchor.dim();
    return v;
  }
};

/// Solves (Id - L) a = q for the minimum-norm fixed point and the fixed
/// subspace of the linear part. Throws NoFixedPoint when the system is
/// inconsistent beyond tol * (1 + ||q||).
inline FixedPointDecomposition fixed_point_decompose(const AffineMap& t, double tol = 1e-9) {
  const LinearMap id_minus_l = LinearMap::identity_minus_scaled(1.0, t.linear);
  LeastSquaresSolution ls = min_norm_least_squares(id_minus_l, t.translation);
  if (ls.residual > tol * (1.0 + norm(t.translation))) throw NoFixedPoint(ls.residual);
  return FixedPointDecomposition{std::move(ls.particular), std::move(ls.kernel_basis)};
}

/// Projection onto Fix T, via anchor + P_{Fix L}(x - anchor).
inline Vector project_fixed_set(const AffineMap& t, const Vector& x, double tol = 1e-9) {
  return project_affine(fixed_point_decompose(t, tol).as_subspace(), x);
}

/// Orthonormal bases of (Fix L)^perp and ran(Id - L), which coincide for
/// nonexpansive L; deviation is the sine of the largest principal angle
/// between them.
struct RangeComplementReport {
  std::vector<Vector> fix_perp_basis;
  std::vector<Vector> range_basis;
  double deviation = 0.0;
};

inline RangeComplementReport range_complement_check(const LinearMap& l) {
  if (l.in_dim() != l.out_dim())
    throw DimensionMismatch(l.in_dim(), l.out_dim(), "range_complement_check");
  const Matrix m = LinearMap::identity_minus_scaled(1.0, l).to_dense();
  const SvdResult s = jacobi_svd(m);
  const double cutoff = rank_cutoff(s, m.rows(), m.cols());
  RangeComplementReport report;
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    if (s.sigma[j] <= cutoff) continue;
    report.fix_perp_basis.push_back(s.v.column(j));
    report.range_basis.push_back(s.u.column(j));
  }
  report.deviation = subspace_deviation(report.fix_perp_basis, report.range_basis);
  return report;
}

}  // namespace fista_affine
