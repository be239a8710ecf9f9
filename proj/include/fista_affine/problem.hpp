#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fista_affine/affine.hpp"
#include "fista_affine/errors.hpp"
#include "fista_affine/linear_map.hpp"
#include "fista_affine/orthonormal.hpp"
#include "fista_affine/rng.hpp"
#include "fista_affine/spectral.hpp"
#include "fista_affine/svd.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

enum class ProblemKind {
  constrained_least_squares,
  unconstrained_least_squares,
  alternating_projections,
  quadratic_form,
};

inline const char* kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::constrained_least_squares: return "constrained_least_squares";
    case ProblemKind::unconstrained_least_squares: return "unconstrained_least_squares";
    case ProblemKind::alternating_projections: return "alternating_projections";
    case ProblemKind::quadratic_form: return "quadratic_form";
  }
  return "unknown";
}

/// Minimize F = f + (indicator of V) where f is a convex quadratic.
///
/// Kinds and their smooth parts:
///   constrained/unconstrained_least_squares: f(x) = 1/2 ||A x - b||^2
///   alternating_projections:  f(x) = 1/2 dist(x, U)^2, stored with
///     A = projector onto (par U)-perp and b = U's minimum-norm anchor so the
///     generic formulas apply verbatim
///   quadratic_form: f(x) = 1/2 <x, A x> + <x, b> with A symmetric PSD; V is
///     the whole space
///
/// beta is the gradient Lipschitz constant used for the 1/beta step:
/// beta >= ||A||^2 for the least-squares kinds, beta >= ||A|| for
/// quadratic_form.
struct AffineQuadraticProblem {
  ProblemKind kind = ProblemKind::unconstrained_least_squares;
  LinearMap a = LinearMap::zero(0, 0);
  Vector b;
  AffineSubspace v;
  std::optional<AffineSubspace> u;  // alternating_projections only
  double beta = 1.0;
  double beta_floor = 0.0;  // smallest accepted beta
  double rayleigh = 0.0;    // spectral estimate backing the floor

  std::size_t dim() const { return v.ambient; }
};

namespace detail {

inline double resolve_beta(std::optional<double> requested, double auto_value, double floor,
                           double rayleigh) {
  if (!requested) return auto_value;
  if (!std::isfinite(*requested) || *requested <= 0.0 || *requested < floor)
    throw SmoothnessError(*requested, rayleigh);
  return *requested;
}

}  // namespace detail

/// f(x) = 1/2 ||A x - b||^2 subject to x in V. beta defaults to the spectral
/// upper bound on ||A||^2; an explicit beta below the estimated bound is
/// rejected.
inline AffineQuadraticProblem make_constrained_least_squares(LinearMap a, Vector b,
                                                             AffineSubspace v,
                                                             std::optional<double> beta = {}) {
  if (a.in_dim() != v.ambient) throw DimensionMismatch(v.ambient, a.in_dim(), "problem operator");
  if (a.out_dim() != b.dim()) throw DimensionMismatch(a.out_dim(), b.dim(), "problem offset");
  AffineQuadraticProblem p;
  p.kind = ProblemKind::constrained_least_squares;
  const SpectralBound top = spectral_norm_sq_upper(a);
  p.rayleigh = top.zero_map ? 0.0 : top.value / 1.01;
  p.beta_floor = p.rayleigh - 1e-9;
  p.beta = detail::resolve_beta(beta, top.zero_map ? 1.0 : top.value, p.beta_floor, p.rayleigh);
  p.a = std::move(a);
  p.b = std::move(b);
  p.v = std::move(v);
  return p;
}

inline AffineQuadraticProblem make_unconstrained_least_squares(LinearMap a, Vector b,
                                                               std::optional<double> beta = {}) {
  const std::size_t n = a.in_dim();
  AffineQuadraticProblem p =
      make_constrained_least_squares(std::move(a), std::move(b), AffineSubspace::whole_space(n),
                                     beta);
  p.kind = ProblemKind::unconstrained_least_squares;
  return p;
}

/// f(x) = 1/2 dist(x, U)^2 subject to x in V; the prox-grad operator is the
/// projector composition P_V P_U (step 1/beta with beta = 1).
inline AffineQuadraticProblem make_alternating_projections(AffineSubspace u, AffineSubspace v) {
  if (u.ambient != v.ambient) throw DimensionMismatch(v.ambient, u.ambient, "alternating spaces");
  AffineQuadraticProblem p;
  p.kind = ProblemKind::alternating_projections;
  p.a = LinearMap::identity_minus_scaled(1.0, LinearMap::projector(u.basis, u.ambient));
  p.b = u.anchor;
  const SpectralBound top = spectral_norm_sq_upper(p.a);
  p.rayleigh = top.zero_map ? 0.0 : top.value / 1.01;
  p.beta_floor = p.rayleigh - 1e-9;
  p.beta = 1.0;
  p.u = std::move(u);
  p.v = std::move(v);
  return p;
}

/// f(x) = 1/2 <x, A x> + <x, b> over the whole space; A must be symmetric
/// (entries within 1e-12) and positive semidefinite (estimated minimum
/// eigenvalue >= -1e-10). For this kind the step condition is beta >= ||A||.
inline AffineQuadraticProblem make_quadratic_form(LinearMap a, Vector b,
                                                  std::optional<double> beta = {}) {
  if (a.in_dim() != a.out_dim())
    throw DimensionMismatch(a.in_dim(), a.out_dim(), "quadratic form operator");
  if (a.in_dim() != b.dim()) throw DimensionMismatch(a.in_dim(), b.dim(), "quadratic form offset");
  const Matrix m = a.to_dense();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12)
        throw UnsolvableProblem("quadratic form operator must be symmetric (entries " +
                                std::to_string(i) + "," + std::to_string(j) + " differ)");
  const double min_eig = min_eigenvalue_estimate(a);
  if (min_eig < -1e-10)
    throw UnsolvableProblem("quadratic form operator must be positive semidefinite "
                            "(estimated minimum eigenvalue " +
                            std::to_string(min_eig) + ")");
  AffineQuadraticProblem p;
  p.kind = ProblemKind::quadratic_form;
  const SpectralBound top = spectral_norm_sq_upper(a);
  p.rayleigh = top.zero_map ? 0.0 : std::sqrt(top.value / 1.01);
  p.beta_floor = p.rayleigh - 1e-9;
  p.beta = detail::resolve_beta(beta, top.zero_map ? 1.0 : std::sqrt(top.value), p.beta_floor,
                                p.rayleigh);
  p.v = AffineSubspace::whole_space(a.in_dim());
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

/// Value of the smooth part f at x (ignores the constraint).
inline double smooth_value(const AffineQuadraticProblem& p, const Vector& x) {
  if (p.kind == ProblemKind::quadratic_form) return 0.5 * dot(x, p.a.apply(x)) + dot(x, p.b);
  const Vector r = p.a.apply(x) - p.b;
  return 0.5 * norm_sq(r);
}

/// Gradient of the smooth part at x.
inline Vector smooth_gradient(const AffineQuadraticProblem& p, const Vector& x) {
  if (p.kind == ProblemKind::quadratic_form) return p.a.apply(x) + p.b;
  return p.a.apply_adjoint(p.a.apply(x) - p.b);
}

/// F(x) = f(x) when x lies in V within 1e-8 * (1 + ||x||), +infinity
/// otherwise. The tolerance absorbs round-off in iterates that are feasible
/// by construction.
inline double evaluate_objective(const AffineQuadraticProblem& p, const Vector& x) {
  if (distance_to(p.v, x) > 1e-8 * (1.0 + norm(x)))
    return std::numeric_limits<double>::infinity();
  return smooth_value(p, x);
}

namespace detail {

inline void probe_nonexpansive(const AffineMap& t, double beta) {
  SeededRng rng(0xfe15ab1eULL);
  for (int pair = 0; pair < 32; ++pair) {
    const Vector x = rng.gaussian_vector(t.dim());
    const Vector y = rng.gaussian_vector(t.dim());
    const double in = distance(x, y);
    const double out = distance(t.evaluate(x), t.evaluate(y));
    if (out > (1.0 + 1e-10) * in) throw SmoothnessError(beta, (out * out) / (in * in));
  }
}

}  // namespace detail

/// The proximal-gradient operator T for the problem: a gradient step of
/// length 1/beta on f followed by projection onto V, algebraically reduced to
/// one affine map per kind. Fixed points of T are exactly the minimizers.
inline AffineMap build_prox_grad(const AffineQuadraticProblem& p) {
  if (p.beta < p.beta_floor || p.beta <= 0.0) throw SmoothnessError(p.beta, p.rayleigh);
  const double inv_beta = 1.0 / p.beta;
  AffineMap t = [&]() -> AffineMap {
    switch (p.kind) {
      case ProblemKind::constrained_least_squares: {
        const LinearMap par = LinearMap::projector(p.v.basis, p.v.ambient);
        const LinearMap gradient_step = LinearMap::identity_minus_scaled(
            inv_beta, LinearMap::compose(LinearMap::adjoint(p.a), p.a));
        return AffineMap{LinearMap::compose(par, gradient_step),
                         par.apply(inv_beta * p.a.apply_adjoint(p.b)) + p.v.anchor, true};
      }
      case ProblemKind::unconstrained_least_squares: {
        const LinearMap gradient_step = LinearMap::identity_minus_scaled(
            inv_beta, LinearMap::compose(LinearMap::adjoint(p.a), p.a));
        return AffineMap{gradient_step, inv_beta * p.a.apply_adjoint(p.b), true};
      }
      case ProblemKind::alternating_projections:
        return compose_affine(affine_projector(p.v), affine_projector(*p.u));
      case ProblemKind::quadratic_form: {
        const LinearMap gradient_step = LinearMap::identity_minus_scaled(inv_beta, p.a);
        return AffineMap{gradient_step, (-inv_beta) * p.b, true};
      }
    }
    throw UnsolvableProblem("unknown problem kind");
  }();
  detail::probe_nonexpansive(t, p.beta);
  return t;
}

/// Ground truth for the solution set S = Argmin F and the optimal value,
/// computed by least squares over a parametrization of V — independent of the
/// prox-grad operator and of the iteration.
struct Oracle {
  Vector solution_anchor;             // minimum-norm element of S
  std::vector<Vector> solution_basis; // orthonormal directions of S
  double mu = 0.0;                    // optimal value
  std::size_t ambient = 0;

  AffineSubspace as_subspace() const {
    AffineSubspace s;
    s.anchor = solution_anchor;
    s.basis = solution_basis;
    s.ambient = ambient;
    return s;
  }
};

/// Solves the problem exactly: parametrize x = v0 + M z over par V, take the
/// minimum-norm least-squares solution of (A M) z = b - A v0, and read S off
/// as v0 + M (z + ker(A M)). For the quadratic_form kind solves the
/// stationarity equation A x = -b instead, which must be consistent for a
/// minimizer to exist.
inline Oracle solve_oracle(const AffineQuadraticProblem& p) {
  Oracle oracle;
  oracle.ambient = p.dim();
  if (p.kind == ProblemKind::quadratic_form) {
    const LeastSquaresSolution ls = min_norm_least_squares(p.a, -1.0 * p.b);
    if (ls.residual > 1e-9 * (1.0 + norm(p.b)))
      throw UnsolvableProblem(
          "quadratic form has no stationary point (objective unbounded below); "
          "least-squares residual " +
          std::to_string(ls.residual));
    oracle.solution_anchor = ls.particular;
    oracle.solution_basis = ls.kernel_basis;
    oracle.mu = smooth_value(p, oracle.solution_anchor);
    return oracle;
  }

  const std::size_t k = p.v.basis.size();
  std::vector<Vector> am_cols;
  am_cols.reserve(k);
  for (const Vector& dir : p.v.basis) am_cols.push_back(p.a.apply(dir));
  const Matrix am = Matrix::from_columns(am_cols, p.a.out_dim());
  const Vector rhs = p.b - p.a.apply(p.v.anchor);
  // Singular values of the compressed operator below the round-off level of
  // forming it from A are noise; without the absolute floor, a constraint
  // lying inside ker A would turn that noise into a huge pseudo-inverse.
  const Matrix a_dense = p.a.to_dense();
  double frob_sq = 0.0;
  for (std::size_t i = 0; i < a_dense.rows(); ++i)
    for (std::size_t j = 0; j < a_dense.cols(); ++j)
      frob_sq += a_dense.at(i, j) * a_dense.at(i, j);
  const double noise_floor = std::sqrt(frob_sq) *
                             static_cast<double>(std::max(am.rows(), am.cols())) *
                             std::numeric_limits<double>::epsilon();
  const LeastSquaresSolution ls = min_norm_least_squares(am, rhs, noise_floor);

  auto lift = [&](const Vector& z) {
    Vector x = p.v.anchor;
    for (std::size_t j = 0; j < k; ++j) x = axpy(z[j], p.v.basis[j], x);
    return x;
  };
  Vector anchor = lift(ls.particular);
  for (const Vector& kz : ls.kernel_basis) {
    Vector dir(p.dim());
    for (std::size_t j = 0; j < k; ++j) dir = axpy(kz[j], p.v.basis[j], dir);
    oracle.solution_basis.push_back(dir);
  }
  // lifting through the orthonormal basis of par V preserves orthonormality
  // up to round-off; the anchor is reduced to the minimum-norm element of S
  oracle.solution_basis = orthonormalize(oracle.solution_basis);
  anchor = detail::orthogonalize_once(anchor, oracle.solution_basis);
  oracle.solution_anchor = detail::orthogonalize_once(anchor, oracle.solution_basis);
  oracle.mu = smooth_value(p, oracle.solution_anchor);
  return oracle;
}

/// P_S x0: the oracle projection the iteration is certified against.
inline Vector project_solution_set(const Oracle& oracle, const Vector& x0) {
  return project_affine(oracle.as_subspace(), x0);
}

}  // namespace fista_affine
