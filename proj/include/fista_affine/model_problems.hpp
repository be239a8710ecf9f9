#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fista_affine/affine.hpp"
#include "fista_affine/linear_map.hpp"
#include "fista_affine/problem.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

/// Angle/weight schedule for the parameterized model problems. generate(m)
/// yields the first m values gamma_0 .. gamma_{m-1}.
struct GammaSchedule {
  enum class Kind { geometric, harmonic, explicit_list };

  Kind kind = Kind::geometric;
  double start = 1.0;
  double ratio = 0.8;
  std::vector<double> values;

  static GammaSchedule geometric(double start, double ratio) {
    GammaSchedule s;
    s.kind = Kind::geometric;
    s.start = start;
    s.ratio = ratio;
    return s;
  }

  static GammaSchedule harmonic(double start) {
    GammaSchedule s;
    s.kind = Kind::harmonic;
    s.start = start;
    return s;
  }

  static GammaSchedule explicit_list(std::vector<double> values) {
    GammaSchedule s;
    s.kind = Kind::explicit_list;
    s.values = std::move(values);
    return s;
  }

  std::vector<double> generate(std::size_t m) const {
    std::vector<double> out;
    out.reserve(m);
    switch (kind) {
      case Kind::geometric: {
        double g = start;
        for (std::size_t k = 0; k < m; ++k, g *= ratio) out.push_back(g);
        break;
      }
      case Kind::harmonic:
        for (std::size_t k = 0; k < m; ++k) out.push_back(start / static_cast<double>(k + 1));
        break;
      case Kind::explicit_list:
        if (values.size() < m)
          throw std::invalid_argument("schedule provides " + std::to_string(values.size()) +
                                      " values but " + std::to_string(m) + " are needed");
        out.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
        break;
    }
    return out;
  }
};

namespace detail {

inline void require_angles(const std::vector<double>& gammas) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 0.0) || !(gammas[k] < half_pi))
      throw std::invalid_argument("angle schedule must stay strictly inside (0, pi/2); value " +
                                  std::to_string(gammas[k]) + " at position " + std::to_string(k));
    if (k > 0 && !(gammas[k] < gammas[k - 1]))
      throw std::invalid_argument("angle schedule must be strictly decreasing; position " +
                                  std::to_string(k));
  }
}

inline void require_weights(const std::vector<double>& gammas) {
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 0.0))
      throw std::invalid_argument("weight schedule must be positive; value " +
                                  std::to_string(gammas[k]) + " at position " +
                                  std::to_string(k));
    if (k > 0 && gammas[k] > gammas[k - 1])
      throw std::invalid_argument("weight schedule must be non-increasing; position " +
                                  std::to_string(k));
  }
}

}  // namespace detail

/// Two m-dimensional subspaces of a 2m-dimensional space meeting only at the
/// origin: U is spanned by the even-indexed coordinate vectors e_{2k}; V pairs
/// each of them with its odd partner, span{cos(g_k) e_{2k} + sin(g_k) e_{2k+1}}.
/// The angle between the k-th pair of lines is g_k, so a decreasing schedule
/// makes the spaces asymptotically tangent as m grows. Alternating-projections
/// kind; the solution set is {0}.
inline AffineQuadraticProblem build_friedrichs(
    std::size_t m, const GammaSchedule& schedule = GammaSchedule::geometric(
                       std::numbers::pi / 4.0, 0.8)) {
  if (m < 1) throw std::invalid_argument("friedrichs builder needs m >= 1");
  const std::vector<double> gammas = schedule.generate(m);
  detail::require_angles(gammas);

  const std::size_t dim = 2 * m;
  std::vector<Vector> u_basis, v_basis;
  u_basis.reserve(m);
  v_basis.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    u_basis.push_back(Vector::unit(dim, 2 * k));
    Vector pair(dim);
    pair[2 * k] = std::cos(gammas[k]);
    pair[2 * k + 1] = std::sin(gammas[k]);
    v_basis.push_back(std::move(pair));
  }
  AffineSubspace u = AffineSubspace::from_point_and_directions(Vector(dim), u_basis);
  AffineSubspace v = AffineSubspace::from_point_and_directions(Vector(dim), v_basis);
  return make_alternating_projections(std::move(u), std::move(v));
}

/// Minimize 1/2 ||x - R x||^2 over the first coordinate axis, where R shifts
/// every coordinate up by one slot. The operator Id - R is injective with
/// smallest singular value shrinking as m grows, so the instances get
/// progressively worse conditioned. Solution set {0}.
inline AffineQuadraticProblem build_shift(std::size_t m, std::optional<double> beta = {}) {
  if (m < 2) throw std::invalid_argument("shift builder needs m >= 2");
  LinearMap a = LinearMap::identity_minus_scaled(1.0, LinearMap::right_shift(m));
  AffineSubspace v =
      AffineSubspace::from_point_and_directions(Vector(m), {Vector::unit(m, 0)});
  return make_constrained_least_squares(std::move(a), Vector(m), std::move(v), beta);
}

/// Minimize 1/2 ||Diag(g) x||^2 over the whole space with positive
/// non-increasing weights; the unique minimizer is 0 and the trailing weights
/// control the conditioning.
inline AffineQuadraticProblem build_diagonal(
    std::size_t m, const GammaSchedule& schedule = GammaSchedule::geometric(1.0, 0.8),
    std::optional<double> beta = {}) {
  if (m < 1) throw std::invalid_argument("diagonal builder needs m >= 1");
  const std::vector<double> gammas = schedule.generate(m);
  detail::require_weights(gammas);
  return make_unconstrained_least_squares(LinearMap::diagonal(gammas), Vector(m), beta);
}

/// Named passthrough to the alternating-projections problem for two explicit
/// affine subspaces (the minimizers of 1/2 dist(., U)^2 over V).
inline AffineQuadraticProblem build_alternating(AffineSubspace u, AffineSubspace v) {
  return make_alternating_projections(std::move(u), std::move(v));
}

}  // namespace fista_affine
