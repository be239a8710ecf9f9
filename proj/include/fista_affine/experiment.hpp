#pragma once

// Orchestration: run a configured experiment, certify the outcome, and emit
// byte-stable CSV/JSON artifacts. Nothing here depends on wall-clock state,
// so identical configs always produce identical files.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "fista_affine/config.hpp"
#include "fista_affine/diagnostics.hpp"
#include "fista_affine/solve.hpp"

namespace fista_affine {

/// Distance tolerance the summary certifies the computed limit against.
inline constexpr double kCertifiedDistanceTol = 1e-6;

enum class LogLevel { error = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("FISTA_AFFINE_LOG");
    if (env != nullptr) {
      const std::string v(env);
      if (v == "debug") return LogLevel::debug;
      if (v == "info") return LogLevel::info;
    }
    return LogLevel::error;
  }();
  return level;
}

inline void log_at(LogLevel lvl, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(log_level())) std::cerr << msg << '\n';
}

inline void log_error(const std::string& msg) { log_at(LogLevel::error, msg); }
inline void log_info(const std::string& msg) { log_at(LogLevel::info, msg); }
inline void log_debug(const std::string& msg) { log_at(LogLevel::debug, msg); }

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline void write_trace_csv(std::ostream& out, const SolveTrace& trace) {
  out << "n,t_n,objective_gap,dist_to_psx0_x,dist_to_psx0_y,fixed_point_residual,"
         "xy_residual,momentum_ratio\n";
  for (const TraceRecord& rec : trace.records) {
    out << rec.n << ',' << format_double(rec.t) << ',' << format_double(rec.objective_gap)
        << ',' << format_double(rec.dist_to_projection_x) << ','
        << format_double(rec.dist_to_projection_y) << ','
        << format_double(rec.fixed_point_residual) << ',' << format_double(rec.xy_residual)
        << ',' << format_double(rec.momentum_ratio) << '\n';
  }
}

inline void write_iterates_csv(std::ostream& out, const SolveTrace& trace) {
  if (trace.records.empty()) return;
  const std::size_t dim = trace.records.front().x.dim();
  out << 'n';
  for (std::size_t i = 0; i < dim; ++i) out << ",x_" << i;
  for (std::size_t i = 0; i < dim; ++i) out << ",y_" << i;
  out << '\n';
  for (const TraceRecord& rec : trace.records) {
    out << rec.n;
    for (std::size_t i = 0; i < dim; ++i) out << ',' << format_double(rec.x[i]);
    for (std::size_t i = 0; i < dim; ++i) out << ',' << format_double(rec.y[i]);
    out << '\n';
  }
}

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

inline ojson vector_json(const Vector& v) {
  ojson arr = ojson::array();
  for (std::size_t i = 0; i < v.dim(); ++i) arr.push_back(v[i]);
  return arr;
}

inline ojson run_block(const SolveTrace& trace) {
  const TraceRecord& last = trace.final_record();
  ojson block;
  block["iterations"] = trace.records.size() - 1;
  block["stop_reason"] = stop_reason_name(trace.reason);
  block["final_objective_gap"] = last.objective_gap;
  block["final_dist_x"] = last.dist_to_projection_x;
  block["final_dist_y"] = last.dist_to_projection_y;
  block["final_fixed_point_residual"] = last.fixed_point_residual;
  block["final_xy_residual"] = last.xy_residual;
  return block;
}

}  // namespace detail

struct ExperimentOutcome {
  int exit_code = 0;  // 0 pass, 2 certification failure
  std::string summary_path;
};

/// Runs one configured experiment end to end and writes
/// `<prefix>.trace.csv` + `<prefix>.summary.json` (plus optional baseline and
/// iterate files). Throws on config/build problems; certification failures
/// are reported through the exit code instead.
inline ExperimentOutcome run_experiment(const ExperimentConfig& cfg,
                                        bool dump_iterates = false,
                                        const std::string& prefix_override = "") {
  const std::string prefix =
      prefix_override.empty() ? cfg.output_prefix : prefix_override;

  AffineQuadraticProblem problem = build_problem(cfg.problem, cfg.beta);
  log_info("problem kind=" + std::string(kind_name(problem.kind)) +
           " dim=" + std::to_string(problem.dim()) + " beta=" + format_double(problem.beta));
  const Oracle oracle = solve_oracle(problem);
  log_debug("oracle mu=" + format_double(oracle.mu) +
            " solution_dim=" + std::to_string(oracle.solution_basis.size()));
  const AffineMap t = build_prox_grad(problem);
  const Vector x0 = make_start(cfg.x0, problem.dim());
  TSequence ts = make_sequence(cfg.t_sequence, cfg.max_iter);
  const OracleContext ctx{&problem, &oracle};

  const SolveTrace trace = fista_run(t, x0, ts, cfg.max_iter, cfg.residual_tol, &ctx);
  log_info("solved in " + std::to_string(trace.records.size() - 1) + " iterations, stop=" +
           stop_reason_name(trace.reason));

  const StrongConvergenceReport strong =
      certify_strong_convergence(trace, kCertifiedDistanceTol);
  const RateCertificate rate = certify_rate(trace, problem.beta, x0, trace.projected_start);
  const bool passed =
      strong.converged && rate.passed && trace.reason != StopReason::diverged;

  std::optional<SolveTrace> baseline;
  if (cfg.baseline) baseline = picard_run(t, x0, cfg.max_iter, cfg.residual_tol, &ctx);

  const std::string trace_path = prefix + ".trace.csv";
  {
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    detail::write_file(trace_path, csv.str());
  }
  std::string iterates_path;
  if (dump_iterates) {
    iterates_path = prefix + ".iterates.csv";
    std::ostringstream csv;
    write_iterates_csv(csv, trace);
    detail::write_file(iterates_path, csv.str());
  }
  std::string baseline_path;
  if (baseline) {
    baseline_path = prefix + ".baseline.csv";
    std::ostringstream csv;
    write_trace_csv(csv, *baseline);
    detail::write_file(baseline_path, csv.str());
  }

  ojson summary;
  summary["schema"] = 1;
  summary["config"] = config_to_json(cfg);
  {
    ojson pb;
    pb["kind"] = kind_name(problem.kind);
    pb["dim"] = problem.dim();
    pb["beta"] = problem.beta;
    pb["beta_floor"] = problem.beta_floor;
    pb["rayleigh_estimate"] = problem.rayleigh;
    summary["problem"] = std::move(pb);
  }
  {
    ojson ob;
    ob["mu"] = oracle.mu;
    ob["solution_dim"] = oracle.solution_basis.size();
    summary["oracle"] = std::move(ob);
  }
  summary["limit"] = detail::vector_json(trace.projected_start);
  summary["run"] = detail::run_block(trace);
  {
    ojson certs;
    ojson sc;
    sc["tol"] = kCertifiedDistanceTol;
    sc["converged"] = strong.converged;
    sc["final_dist_x"] = strong.final_dist_x;
    sc["final_dist_y"] = strong.final_dist_y;
    sc["tol_reached"] = strong.tol_reached;
    if (strong.tol_reached) sc["first_index_within_tol"] = strong.first_index_within_tol;
    sc["tail_monotonicity_fraction"] = strong.tail_monotonicity_fraction;
    certs["strong_convergence"] = std::move(sc);
    ojson rc;
    rc["passed"] = rate.passed;
    rc["sup_scaled_gap"] = rate.sup_scaled_gap;
    rc["bound_constant"] = rate.bound_constant;
    rc["worst_index"] = rate.worst_index;
    certs["objective_rate"] = std::move(rc);
    summary["certifications"] = std::move(certs);
  }
  if (baseline) summary["baseline"] = detail::run_block(*baseline);
  {
    ojson outputs;
    outputs["trace_csv"] = trace_path;
    if (!iterates_path.empty()) outputs["iterates_csv"] = iterates_path;
    if (!baseline_path.empty()) outputs["baseline_csv"] = baseline_path;
    summary["outputs"] = std::move(outputs);
  }
  summary["passed"] = passed;

  const std::string summary_path = prefix + ".summary.json";
  detail::write_file(summary_path, summary.dump(2) + "\n");
  return ExperimentOutcome{passed ? 0 : 2, summary_path};
}

/// Loads and strictly parses a config file.
inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

struct SweepResult {
  int exit_code = 0;
  std::vector<std::string> summary_paths;  // in sorted config order; empty slot on error
};

/// Runs every `*.json` config in a directory, `jobs` at a time. Outputs go to
/// each config's own prefix; results keep the sorted config order so repeated
/// sweeps are byte- and line-identical. Exit code: 1 if any config failed to
/// run, else 2 if any certification failed, else 0.
inline SweepResult run_sweep(const std::string& config_dir, unsigned jobs) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(config_dir))
    throw ConfigError("config directory not found: " + config_dir);
  std::vector<std::string> config_paths;
  for (const auto& entry : fs::directory_iterator(config_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      config_paths.push_back(entry.path().string());
  std::sort(config_paths.begin(), config_paths.end());
  if (config_paths.empty()) throw ConfigError("no .json configs in " + config_dir);

  struct Slot {
    int code = 0;
    std::string summary_path;
    std::string error;
  };
  std::vector<Slot> slots(config_paths.size());
  std::atomic<std::size_t> next{0};
  const unsigned worker_count =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(config_paths.size())));

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config_paths.size()) return;
      try {
        const ExperimentConfig cfg = load_config(config_paths[i]);
        const ExperimentOutcome outcome = run_experiment(cfg);
        slots[i].code = outcome.exit_code;
        slots[i].summary_path = outcome.summary_path;
      } catch (const std::exception& e) {
        slots[i].code = 1;
        slots[i].error = config_paths[i] + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (unsigned w = 0; w < worker_count; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();

  SweepResult result;
  bool any_error = false, any_cert_failure = false;
  for (const Slot& slot : slots) {
    if (!slot.error.empty()) log_error(slot.error);
    if (slot.code == 1) any_error = true;
    if (slot.code == 2) any_cert_failure = true;
    result.summary_paths.push_back(slot.summary_path);
  }
  result.exit_code = any_error ? 1 : (any_cert_failure ? 2 : 0);
  return result;
}

}  // namespace fista_affine
