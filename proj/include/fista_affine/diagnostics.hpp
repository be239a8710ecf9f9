#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "fista_affine/solve.hpp"
#include "fista_affine/t_sequence.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

/// Checks the objective-value rate F(x_n) - mu <= 2 beta ||x_0 - P x_0||^2 / (n+1)^2.
struct RateCertificate {
  double sup_scaled_gap = 0.0;   // sup over n >= 1 of (n+1)^2 (F(x_n) - mu)
  double bound_constant = 0.0;   // 2 beta ||x_0 - P x_0||^2
  bool passed = false;           // sup <= bound * (1 + 1e-6)
  std::size_t worst_index = 0;   // index attaining the sup (0 when no n >= 1 records)
};

inline RateCertificate certify_rate(const SolveTrace& trace, double beta,
                                    const Vector& x0, const Vector& psx0) {
  if (!trace.has_oracle)
    throw std::invalid_argument(
        "rate certification needs a trace with solution-set diagnostics attached");
  RateCertificate cert;
  const double d0 = distance(x0, psx0);
  cert.bound_constant = 2.0 * beta * d0 * d0;
  for (const TraceRecord& rec : trace.records) {
    if (rec.n < 1) continue;
    const double np1 = static_cast<double>(rec.n) + 1.0;
    const double scaled = np1 * np1 * rec.objective_gap;
    if (scaled > cert.sup_scaled_gap) {
      cert.sup_scaled_gap = scaled;
      cert.worst_index = rec.n;
    }
  }
  cert.passed = cert.sup_scaled_gap <= cert.bound_constant * (1.0 + 1e-6);
  return cert;
}

/// Summarizes how close the iterates came to the projection of the start
/// point onto the solution set.
struct StrongConvergenceReport {
  double final_dist_x = 0.0;
  double final_dist_y = 0.0;
  bool converged = false;           // both final distances <= tol
  bool tol_reached = false;         // some index had max(dist_x, dist_y) <= tol
  std::size_t first_index_within_tol = 0;  // meaningful only when tol_reached
  // Share of consecutive steps where the x-iterate distance did not increase
  // by more than 1e-12; 1.0 for single-record traces.
  double tail_monotonicity_fraction = 1.0;
};

inline StrongConvergenceReport certify_strong_convergence(const SolveTrace& trace,
                                                          double tol) {
  if (!trace.has_oracle)
    throw std::invalid_argument(
        "strong-convergence certification needs a trace with solution-set "
        "diagnostics attached");
  if (trace.records.empty()) throw std::logic_error("empty solve trace");

  StrongConvergenceReport report;
  const TraceRecord& last = trace.records.back();
  report.final_dist_x = last.dist_to_projection_x;
  report.final_dist_y = last.dist_to_projection_y;
  report.converged = report.final_dist_x <= tol && report.final_dist_y <= tol;

  for (const TraceRecord& rec : trace.records) {
    if (std::max(rec.dist_to_projection_x, rec.dist_to_projection_y) <= tol) {
      report.tol_reached = true;
      report.first_index_within_tol = rec.n;
      break;
    }
  }

  if (trace.records.size() > 1) {
    std::size_t non_increasing = 0;
    for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
      if (trace.records[i + 1].dist_to_projection_x <=
          trace.records[i].dist_to_projection_x + 1e-12)
        ++non_increasing;
    }
    report.tail_monotonicity_fraction =
        static_cast<double>(non_increasing) /
        static_cast<double>(trace.records.size() - 1);
  }
  return report;
}

/// Result of scanning a step-size sequence over a horizon: bound violations
/// are reported (not thrown) along with how close the tail momentum ratio
/// (t_n - 1)/t_{n+1} sits to 1.
struct TSequenceReport {
  bool ok = true;
  std::string violated_condition;        // empty when ok
  std::size_t first_offending_index = 0;  // meaningful only when !ok
  double offending_value = 0.0;           // meaningful only when !ok
  double max_tail_ratio_deviation = 0.0;  // max |(t_n-1)/t_{n+1} - 1| over last 10%
};

/// Scans t_0..t_horizon (capped at the sequence length for explicit lists).
/// Requires horizon >= 10. The tail ratio is taken over the last tenth of the
/// scanned indices.
inline TSequenceReport check_t_asymptotics(TSequence& ts, std::size_t horizon) {
  if (horizon < 10) throw std::invalid_argument("asymptotics horizon must be at least 10");
  if (ts.available() == 0) {
    TSequenceReport report;
    report.ok = false;
    report.violated_condition = "initial value";
    return report;
  }
  std::size_t last = horizon;
  if (ts.available() != static_cast<std::size_t>(-1) && ts.available() > 0)
    last = std::min(last, ts.available() - 1);

  TSequenceReport report;
  auto flag = [&report](const char* condition, std::size_t index, double value) {
    if (!report.ok) return;
    report.ok = false;
    report.violated_condition = condition;
    report.first_offending_index = index;
    report.offending_value = value;
  };

  if (ts.value(0) != 1.0) flag("initial value", 0, ts.value(0));
  for (std::size_t n = 0; n <= last && report.ok; ++n) {
    const double tn = ts.value(n);
    if (detail::growth_slack(tn, n) < -1e-12) {
      flag("growth lower bound", n, tn);
      break;
    }
    if (detail::envelope_slack(tn, n) < -1e-9) {
      flag("upper envelope", n, tn);
      break;
    }
    if (n + 1 <= last && detail::momentum_slack(tn, ts.value(n + 1)) < -1e-9) {
      flag("momentum recurrence", n, ts.value(n + 1));
      break;
    }
  }

  const std::size_t tail_start = last - last / 10;
  for (std::size_t n = tail_start; n + 1 <= last; ++n) {
    const double ratio = (ts.value(n) - 1.0) / ts.value(n + 1);
    report.max_tail_ratio_deviation =
        std::max(report.max_tail_ratio_deviation, std::fabs(ratio - 1.0));
  }
  return report;
}

}  // namespace fista_affine
