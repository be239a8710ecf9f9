// Command-line front end: solve one config, validate a config without
// iterating, or sweep a directory of configs. Exit codes: 0 success,
// 1 config/build error, 2 certification failure. stdout carries only the
// summary path(s) for solve/sweep; diagnostics go to stderr, gated by
// FISTA_AFFINE_LOG (error|info|debug).

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fista_affine/fista_affine.hpp"

namespace {

using namespace fista_affine;

int run_solve(const std::string& config_path, bool dump_iterates,
              const std::string& out_prefix) {
  const ExperimentConfig cfg = load_config(config_path);
  const ExperimentOutcome outcome = run_experiment(cfg, dump_iterates, out_prefix);
  std::cout << outcome.summary_path << '\n';
  return outcome.exit_code;
}

int run_validate(const std::string& config_path) {
  const ExperimentConfig cfg = load_config(config_path);
  const AffineQuadraticProblem problem = build_problem(cfg.problem, cfg.beta);
  // exercise the remaining launch-time validation without iterating
  make_start(cfg.x0, problem.dim());
  make_sequence(cfg.t_sequence, cfg.max_iter);
  solve_oracle(problem);

  std::cout << "config: ok\n"
            << "kind: " << kind_name(problem.kind) << '\n'
            << "dim: " << problem.dim() << '\n'
            << "beta_hat: " << format_double(problem.beta) << '\n'
            << "beta_floor: " << format_double(problem.beta_floor) << '\n'
            << "rayleigh_estimate: " << format_double(problem.rayleigh) << '\n'
            << "max_iter: " << cfg.max_iter << '\n'
            << "residual_tol: " << format_double(cfg.residual_tol) << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& config_dir, unsigned jobs) {
  const SweepResult result = run_sweep(config_dir, jobs);
  for (const std::string& path : result.summary_paths)
    if (!path.empty()) std::cout << path << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accelerated proximal-gradient runner for affinely constrained quadratics"};
  app.require_subcommand(1);

  std::string solve_config, solve_prefix;
  bool dump_iterates = false;
  CLI::App* solve = app.add_subcommand("solve", "run one experiment from a JSON config");
  solve->add_option("--config", solve_config, "path to the experiment config")->required();
  solve->add_flag("--dump-iterates", dump_iterates,
                  "also write full x/y iterate vectors to <prefix>.iterates.csv");
  solve->add_option("--out-prefix", solve_prefix,
                    "override the config's output_prefix");

  std::string validate_config_path;
  CLI::App* validate =
      app.add_subcommand("validate", "parse a config and build the problem without iterating");
  validate->add_option("--config", validate_config_path, "path to the experiment config")
      ->required();

  std::string sweep_dir;
  unsigned jobs = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "run every *.json config in a directory");
  sweep->add_option("--config-dir", sweep_dir, "directory of experiment configs")->required();
  sweep->add_option("--jobs", jobs, "concurrent experiments")->default_val(1u);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(solve_config, dump_iterates, solve_prefix);
    if (validate->parsed()) return run_validate(validate_config_path);
    return run_sweep_cmd(sweep_dir, jobs);
  } catch (const std::exception& e) {
    fista_affine::log_error(std::string("error: ") + e.what());
    return 1;
  }
}
