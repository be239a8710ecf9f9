#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fista_affine/affine.hpp"
#include "fista_affine/problem.hpp"
#include "fista_affine/t_sequence.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

enum class StopReason { max_iter, residual_tol, diverged };

inline const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::max_iter: return "max_iter";
    case StopReason::residual_tol: return "residual_tol";
    case StopReason::diverged: return "diverged";
  }
  return "unknown";
}

struct TraceRecord {
  std::size_t n = 0;
  double t = 1.0;
  Vector x;
  Vector y;
  double objective_gap = 0.0;         // F(x_n) - mu; 0 when no oracle attached
  double dist_to_projection_x = 0.0;  // ||x_n - P x_0||; 0 when no oracle
  double dist_to_projection_y = 0.0;  // ||y_n - P x_0||; 0 when no oracle
  double fixed_point_residual = 0.0;  // ||x_n - T x_n||
  double xy_residual = 0.0;           // ||x_n - y_n||
  double momentum_ratio = 0.0;        // (t_n - 1) / t_{n+1}; 0 for plain iteration
};

struct SolveTrace {
  std::vector<TraceRecord> records;
  StopReason reason = StopReason::max_iter;
  bool has_oracle = false;
  double mu = 0.0;  // optimal value when has_oracle
  Vector projected_start;  // P x_0 onto the solution set when has_oracle

  const TraceRecord& final_record() const {
    if (records.empty()) throw std::logic_error("empty solve trace");
    return records.back();
  }
};

struct OracleContext {
  const AffineQuadraticProblem* problem = nullptr;
  const Oracle* oracle = nullptr;
};

inline constexpr double kDefaultResidualTol = 1e-10;
inline constexpr std::size_t kDefaultMaxIter = 10000;

namespace detail {

inline void fill_oracle_fields(TraceRecord& rec, const SolveTrace& trace,
                               const OracleContext& ctx) {
  rec.objective_gap = evaluate_objective(*ctx.problem, rec.x) - trace.mu;
  rec.dist_to_projection_x = distance(rec.x, trace.projected_start);
  rec.dist_to_projection_y = distance(rec.y, trace.projected_start);
}

inline bool diverged_iterate(const Vector& x, double divergence_bound) {
  return !x.all_finite() || norm(x) > divergence_bound;
}

}  // namespace detail

/// Runs x_{n+1} = T(y_n), y_{n+1} = x_{n+1} + ((t_n-1)/t_{n+1})(x_{n+1}-x_n)
/// from y_0 = x_0, recording one diagnostic row per visited index. Stops when
/// max(fixed_point_residual, xy_residual) <= residual_tol (checked from index
/// 0 on), when index max_iter has been recorded, or when an iterate leaves
/// the finite ball of radius 1e12 (1 + ||x_0||).
///
/// When ctx supplies the problem and its solution-set description, the
/// projection of x_0 onto the solution set is computed once up front and
/// every record carries the objective gap and the distances of x_n and y_n
/// to that projection.
inline SolveTrace fista_run(const AffineMap& t, const Vector& x0, TSequence& ts,
                            std::size_t max_iter = kDefaultMaxIter,
                            double residual_tol = kDefaultResidualTol,
                            const OracleContext* ctx = nullptr) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (t.dim() != x0.dim())
    throw DimensionMismatch(t.dim(), x0.dim(), "fista_run start point");
  if (ctx != nullptr && (ctx->problem == nullptr || ctx->oracle == nullptr))
    throw std::invalid_argument("oracle context must carry both problem and solution set");

  SolveTrace trace;
  if (ctx != nullptr) {
    trace.has_oracle = true;
    trace.mu = ctx->oracle->mu;
    trace.projected_start = project_solution_set(*ctx->oracle, x0);
  }

  const double divergence_bound = 1e12 * (1.0 + norm(x0));
  Vector x = x0;
  Vector y = x0;
  for (std::size_t n = 0;; ++n) {
    const double tn = ts.value(n);
    const double ratio = (tn - 1.0) / ts.value(n + 1);

    TraceRecord rec;
    rec.n = n;
    rec.t = tn;
    rec.x = x;
    rec.y = y;
    rec.fixed_point_residual = distance(x, t.evaluate(x));
    rec.xy_residual = distance(x, y);
    rec.momentum_ratio = ratio;
    if (trace.has_oracle) detail::fill_oracle_fields(rec, trace, *ctx);
    trace.records.push_back(std::move(rec));

    const TraceRecord& back = trace.records.back();
    if (std::max(back.fixed_point_residual, back.xy_residual) <= residual_tol) {
      trace.reason = StopReason::residual_tol;
      break;
    }
    if (n == max_iter) {
      trace.reason = StopReason::max_iter;
      break;
    }

    Vector x_next = t.evaluate(y);
    if (detail::diverged_iterate(x_next, divergence_bound)) {
      trace.reason = StopReason::diverged;
      break;
    }
    y = axpy(ratio, x_next - x, x_next);
    x = std::move(x_next);
  }
  return trace;
}

/// Plain fixed-point iteration x_{n+1} = T(x_n) recorded with the same
/// diagnostics; y_n coincides with x_n, so xy_residual and momentum_ratio are
/// identically zero and the t column is pinned at 1.
inline SolveTrace picard_run(const AffineMap& t, const Vector& x0,
                             std::size_t max_iter = kDefaultMaxIter,
                             double residual_tol = kDefaultResidualTol,
                             const OracleContext* ctx = nullptr) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (t.dim() != x0.dim())
    throw DimensionMismatch(t.dim(), x0.dim(), "picard_run start point");
  if (ctx != nullptr && (ctx->problem == nullptr || ctx->oracle == nullptr))
    throw std::invalid_argument("oracle context must carry both problem and solution set");

  SolveTrace trace;
  if (ctx != nullptr) {
    trace.has_oracle = true;
    trace.mu = ctx->oracle->mu;
    trace.projected_start = project_solution_set(*ctx->oracle, x0);
  }

  const double divergence_bound = 1e12 * (1.0 + norm(x0));
  Vector x = x0;
  for (std::size_t n = 0;; ++n) {
    Vector tx = t.evaluate(x);

    TraceRecord rec;
    rec.n = n;
    rec.t = 1.0;
    rec.x = x;
    rec.y = x;
    rec.fixed_point_residual = distance(x, tx);
    rec.xy_residual = 0.0;
    rec.momentum_ratio = 0.0;
    if (trace.has_oracle) detail::fill_oracle_fields(rec, trace, *ctx);
    trace.records.push_back(std::move(rec));

    if (trace.records.back().fixed_point_residual <= residual_tol) {
      trace.reason = StopReason::residual_tol;
      break;
    }
    if (n == max_iter) {
      trace.reason = StopReason::max_iter;
      break;
    }
    if (detail::diverged_iterate(tx, divergence_bound)) {
      trace.reason = StopReason::diverged;
      break;
    }
    x = std::move(tx);
  }
  return trace;
}

}  // namespace fista_affine
