#pragma once

// Strict JSON experiment descriptions: every field is checked, unknown fields
// are rejected with their full dotted path, and a parsed config serializes
// back to the exact same document.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fista_affine/errors.hpp"
#include "fista_affine/model_problems.hpp"
#include "fista_affine/problem.hpp"
#include "fista_affine/rng.hpp"
#include "fista_affine/t_sequence.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

using ojson = nlohmann::ordered_json;

struct SubspaceSpec {
  std::vector<double> anchor;
  std::vector<std::vector<double>> basis;
};

struct ScheduleSpec {
  GammaSchedule::Kind kind = GammaSchedule::Kind::geometric;
  std::optional<double> start;  // absent = builder default
  double ratio = 0.8;           // geometric only
  std::vector<double> values;   // explicit only

  GammaSchedule resolve(double default_start) const {
    switch (kind) {
      case GammaSchedule::Kind::geometric:
        return GammaSchedule::geometric(start.value_or(default_start), ratio);
      case GammaSchedule::Kind::harmonic:
        return GammaSchedule::harmonic(start.value_or(default_start));
      case GammaSchedule::Kind::explicit_list:
        return GammaSchedule::explicit_list(values);
    }
    throw ConfigError("unreachable schedule kind");
  }
};

struct ProblemSpec {
  std::string kind;  // friedrichs | shift | diagonal | alt_projections | dense | quadratic_form
  std::size_t m = 0;
  std::optional<ScheduleSpec> schedule;
  std::vector<std::vector<double>> a;  // dense, quadratic_form: row-major matrix
  std::vector<double> b;
  std::optional<SubspaceSpec> u;  // alt_projections
  std::optional<SubspaceSpec> v;  // alt_projections; dense (optional constraint)
};

struct StartSpec {
  bool random = false;
  std::vector<double> values;  // explicit form
  std::uint64_t seed = 0;      // random form
  double scale = 1.0;
};

struct TSequenceSpec {
  TFamily family = TFamily::nesterov_recursive;
  std::vector<double> values;  // custom only
};

struct ExperimentConfig {
  ProblemSpec problem;
  StartSpec x0;
  TSequenceSpec t_sequence;
  std::optional<double> beta;  // absent = "auto"
  std::size_t max_iter = 0;
  double residual_tol = 0.0;
  bool baseline = false;
  std::string output_prefix;
};

namespace detail {

inline std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline void require_object(const ojson& v, const std::string& path) {
  if (!v.is_object())
    throw ConfigError("field \"" + (path.empty() ? std::string("<root>") : path) +
                      "\" must be an object");
}

inline void reject_unknown(const ojson& obj, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown field \"" + join_path(path, item.key()) + "\"");
  }
}

inline const ojson& require_field(const ojson& obj, const std::string& path,
                                  const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing field \"" + join_path(path, key) + "\"");
  return *it;
}

inline double as_number(const ojson& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("field \"" + path + "\" must be a number");
  return v.get<double>();
}

inline std::size_t as_positive_integer(const ojson& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ConfigError("field \"" + path + "\" must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

inline std::uint64_t as_seed(const ojson& v, const std::string& path) {
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)))
    throw ConfigError("field \"" + path + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

inline bool as_bool(const ojson& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError("field \"" + path + "\" must be a boolean");
  return v.get<bool>();
}

inline std::string as_string(const ojson& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("field \"" + path + "\" must be a string");
  return v.get<std::string>();
}

inline std::vector<double> as_number_array(const ojson& v, const std::string& path) {
  if (!v.is_array() || v.empty())
    throw ConfigError("field \"" + path + "\" must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<double>> as_matrix(const ojson& v, const std::string& path) {
  if (!v.is_array() || v.empty())
    throw ConfigError("field \"" + path + "\" must be a non-empty array of number rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(as_number_array(v[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size())
      throw ConfigError("field \"" + path + "\" must have rows of equal length");
  }
  return rows;
}

inline SubspaceSpec parse_subspace(const ojson& v, const std::string& path) {
  require_object(v, path);
  reject_unknown(v, path, {"anchor", "basis"});
  SubspaceSpec s;
  s.anchor = as_number_array(require_field(v, path, "anchor"), path + ".anchor");
  const ojson& basis = require_field(v, path, "basis");
  if (!basis.is_array()) throw ConfigError("field \"" + path + ".basis\" must be an array");
  for (std::size_t i = 0; i < basis.size(); ++i)
    s.basis.push_back(
        as_number_array(basis[i], path + ".basis[" + std::to_string(i) + "]"));
  return s;
}

inline ScheduleSpec parse_schedule(const ojson& v, const std::string& path) {
  require_object(v, path);
  ScheduleSpec s;
  const std::string family = as_string(require_field(v, path, "family"), path + ".family");
  if (family == "geometric") {
    reject_unknown(v, path, {"family", "start", "ratio"});
    s.kind = GammaSchedule::Kind::geometric;
    s.ratio = as_number(require_field(v, path, "ratio"), path + ".ratio");
  } else if (family == "harmonic") {
    reject_unknown(v, path, {"family", "start"});
    s.kind = GammaSchedule::Kind::harmonic;
  } else if (family == "explicit") {
    reject_unknown(v, path, {"family", "values"});
    s.kind = GammaSchedule::Kind::explicit_list;
    s.values = as_number_array(require_field(v, path, "values"), path + ".values");
  } else {
    throw ConfigError("field \"" + path +
                      ".family\" must be one of geometric|harmonic|explicit");
  }
  if (s.kind != GammaSchedule::Kind::explicit_list && v.contains("start"))
    s.start = as_number(v.at("start"), path + ".start");
  return s;
}

inline ProblemSpec parse_problem(const ojson& v, const std::string& path) {
  require_object(v, path);
  ProblemSpec p;
  p.kind = as_string(require_field(v, path, "kind"), path + ".kind");
  if (p.kind == "friedrichs" || p.kind == "diagonal") {
    reject_unknown(v, path, {"kind", "m", "schedule"});
    p.m = as_positive_integer(require_field(v, path, "m"), path + ".m");
    if (v.contains("schedule")) p.schedule = parse_schedule(v.at("schedule"), path + ".schedule");
  } else if (p.kind == "shift") {
    reject_unknown(v, path, {"kind", "m"});
    p.m = as_positive_integer(require_field(v, path, "m"), path + ".m");
  } else if (p.kind == "alt_projections") {
    reject_unknown(v, path, {"kind", "u", "v"});
    p.u = parse_subspace(require_field(v, path, "u"), path + ".u");
    p.v = parse_subspace(require_field(v, path, "v"), path + ".v");
  } else if (p.kind == "dense") {
    reject_unknown(v, path, {"kind", "a", "b", "v"});
    p.a = as_matrix(require_field(v, path, "a"), path + ".a");
    p.b = as_number_array(require_field(v, path, "b"), path + ".b");
    if (v.contains("v")) p.v = parse_subspace(v.at("v"), path + ".v");
  } else if (p.kind == "quadratic_form") {
    reject_unknown(v, path, {"kind", "a", "b"});
    p.a = as_matrix(require_field(v, path, "a"), path + ".a");
    p.b = as_number_array(require_field(v, path, "b"), path + ".b");
  } else {
    throw ConfigError(
        "field \"" + path +
        ".kind\" must be one of friedrichs|shift|diagonal|alt_projections|dense|quadratic_form");
  }
  return p;
}

inline StartSpec parse_start(const ojson& v, const std::string& path) {
  StartSpec s;
  if (v.is_array()) {
    s.random = false;
    s.values = as_number_array(v, path);
    return s;
  }
  require_object(v, path);
  reject_unknown(v, path, {"random"});
  const ojson& r = require_field(v, path, "random");
  require_object(r, path + ".random");
  reject_unknown(r, path + ".random", {"seed", "scale"});
  s.random = true;
  s.seed = as_seed(require_field(r, path + ".random", "seed"), path + ".random.seed");
  s.scale = as_number(require_field(r, path + ".random", "scale"), path + ".random.scale");
  if (!(s.scale > 0.0))
    throw ConfigError("field \"" + path + ".random.scale\" must be positive");
  return s;
}

inline TSequenceSpec parse_t_sequence(const ojson& v, const std::string& path) {
  require_object(v, path);
  TSequenceSpec s;
  const std::string family = as_string(require_field(v, path, "family"), path + ".family");
  if (family == "nesterov") {
    reject_unknown(v, path, {"family"});
    s.family = TFamily::nesterov_recursive;
  } else if (family == "linear_half") {
    reject_unknown(v, path, {"family"});
    s.family = TFamily::linear_half;
  } else if (family == "custom") {
    reject_unknown(v, path, {"family", "values"});
    s.family = TFamily::custom_explicit;
    s.values = as_number_array(require_field(v, path, "values"), path + ".values");
  } else {
    throw ConfigError("field \"" + path +
                      ".family\" must be one of nesterov|linear_half|custom");
  }
  return s;
}

}  // namespace detail

inline ExperimentConfig parse_config(const ojson& root) {
  detail::require_object(root, "");
  detail::reject_unknown(root, "",
                         {"schema", "problem", "x0", "t_sequence", "beta", "max_iter",
                          "residual_tol", "baseline", "output_prefix"});
  const ojson& schema = detail::require_field(root, "", "schema");
  if (!schema.is_number_integer() || schema.get<long long>() != 1)
    throw ConfigError("field \"schema\" must be the integer 1");

  ExperimentConfig cfg;
  cfg.problem = detail::parse_problem(detail::require_field(root, "", "problem"), "problem");
  cfg.x0 = detail::parse_start(detail::require_field(root, "", "x0"), "x0");
  cfg.t_sequence =
      detail::parse_t_sequence(detail::require_field(root, "", "t_sequence"), "t_sequence");

  const ojson& beta = detail::require_field(root, "", "beta");
  if (beta.is_string()) {
    if (beta.get<std::string>() != "auto")
      throw ConfigError("field \"beta\" must be a positive number or \"auto\"");
  } else {
    const double value = detail::as_number(beta, "beta");
    if (!(value > 0.0)) throw ConfigError("field \"beta\" must be a positive number or \"auto\"");
    cfg.beta = value;
  }

  cfg.max_iter =
      detail::as_positive_integer(detail::require_field(root, "", "max_iter"), "max_iter");
  cfg.residual_tol =
      detail::as_number(detail::require_field(root, "", "residual_tol"), "residual_tol");
  if (!(cfg.residual_tol >= 0.0))
    throw ConfigError("field \"residual_tol\" must be non-negative");
  cfg.baseline = detail::as_bool(detail::require_field(root, "", "baseline"), "baseline");
  cfg.output_prefix =
      detail::as_string(detail::require_field(root, "", "output_prefix"), "output_prefix");
  if (cfg.output_prefix.empty()) throw ConfigError("field \"output_prefix\" must be non-empty");
  return cfg;
}

inline ojson config_to_json(const ExperimentConfig& cfg) {
  ojson root;
  root["schema"] = 1;

  ojson problem;
  problem["kind"] = cfg.problem.kind;
  if (cfg.problem.kind == "friedrichs" || cfg.problem.kind == "diagonal" ||
      cfg.problem.kind == "shift")
    problem["m"] = cfg.problem.m;
  if (cfg.problem.schedule) {
    ojson sched;
    switch (cfg.problem.schedule->kind) {
      case GammaSchedule::Kind::geometric:
        sched["family"] = "geometric";
        if (cfg.problem.schedule->start) sched["start"] = *cfg.problem.schedule->start;
        sched["ratio"] = cfg.problem.schedule->ratio;
        break;
      case GammaSchedule::Kind::harmonic:
        sched["family"] = "harmonic";
        if (cfg.problem.schedule->start) sched["start"] = *cfg.problem.schedule->start;
        break;
      case GammaSchedule::Kind::explicit_list:
        sched["family"] = "explicit";
        sched["values"] = cfg.problem.schedule->values;
        break;
    }
    problem["schedule"] = std::move(sched);
  }
  const auto subspace_json = [](const SubspaceSpec& s) {
    ojson out;
    out["anchor"] = s.anchor;
    out["basis"] = s.basis;
    return out;
  };
  if (cfg.problem.kind == "alt_projections") {
    problem["u"] = subspace_json(*cfg.problem.u);
    problem["v"] = subspace_json(*cfg.problem.v);
  }
  if (cfg.problem.kind == "dense" || cfg.problem.kind == "quadratic_form") {
    problem["a"] = cfg.problem.a;
    problem["b"] = cfg.problem.b;
    if (cfg.problem.kind == "dense" && cfg.problem.v) problem["v"] = subspace_json(*cfg.problem.v);
  }
  root["problem"] = std::move(problem);

  if (cfg.x0.random) {
    ojson r;
    r["seed"] = cfg.x0.seed;
    r["scale"] = cfg.x0.scale;
    root["x0"] = ojson{{"random", std::move(r)}};
  } else {
    root["x0"] = cfg.x0.values;
  }

  ojson tseq;
  switch (cfg.t_sequence.family) {
    case TFamily::nesterov_recursive: tseq["family"] = "nesterov"; break;
    case TFamily::linear_half: tseq["family"] = "linear_half"; break;
    case TFamily::custom_explicit:
      tseq["family"] = "custom";
      tseq["values"] = cfg.t_sequence.values;
      break;
  }
  root["t_sequence"] = std::move(tseq);

  if (cfg.beta)
    root["beta"] = *cfg.beta;
  else
    root["beta"] = "auto";
  root["max_iter"] = cfg.max_iter;
  root["residual_tol"] = cfg.residual_tol;
  root["baseline"] = cfg.baseline;
  root["output_prefix"] = cfg.output_prefix;
  return root;
}

namespace detail {

inline AffineSubspace to_subspace(const SubspaceSpec& spec, const std::string& path) {
  const std::size_t dim = spec.anchor.size();
  Vector anchor(dim);
  for (std::size_t i = 0; i < dim; ++i) anchor[i] = spec.anchor[i];
  std::vector<Vector> dirs;
  dirs.reserve(spec.basis.size());
  for (const auto& row : spec.basis) {
    if (row.size() != dim)
      throw ConfigError("field \"" + path + ".basis\" rows must match the anchor dimension");
    Vector d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = row[i];
    dirs.push_back(std::move(d));
  }
  return AffineSubspace::from_point_and_directions(anchor, dirs);
}

inline Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

inline Vector to_vector(const std::vector<double>& values) {
  Vector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i];
  return v;
}

}  // namespace detail

/// Builds the problem a parsed config describes. Throws ConfigError for
/// parameters that contradict the chosen kind; builder preconditions propagate
/// their own exceptions.
inline AffineQuadraticProblem build_problem(const ProblemSpec& spec,
                                            std::optional<double> beta) {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  if (spec.kind == "friedrichs" || spec.kind == "alt_projections") {
    if (beta && *beta != 1.0)
      throw ConfigError(
          "field \"beta\" must be \"auto\" (or exactly 1) for projection-composition problems");
  }
  if (spec.kind == "friedrichs") {
    const GammaSchedule schedule = spec.schedule
                                       ? spec.schedule->resolve(kQuarterPi)
                                       : GammaSchedule::geometric(kQuarterPi, 0.8);
    return build_friedrichs(spec.m, schedule);
  }
  if (spec.kind == "shift") return build_shift(spec.m, beta);
  if (spec.kind == "diagonal") {
    const GammaSchedule schedule = spec.schedule ? spec.schedule->resolve(1.0)
                                                 : GammaSchedule::geometric(1.0, 0.8);
    return build_diagonal(spec.m, schedule, beta);
  }
  if (spec.kind == "alt_projections")
    return build_alternating(detail::to_subspace(*spec.u, "problem.u"),
                             detail::to_subspace(*spec.v, "problem.v"));
  if (spec.kind == "dense") {
    LinearMap a = LinearMap::dense(detail::to_matrix(spec.a));
    Vector b = detail::to_vector(spec.b);
    if (spec.v) {
      AffineSubspace v = detail::to_subspace(*spec.v, "problem.v");
      return make_constrained_least_squares(std::move(a), std::move(b), std::move(v), beta);
    }
    return make_unconstrained_least_squares(std::move(a), std::move(b), beta);
  }
  if (spec.kind == "quadratic_form")
    return make_quadratic_form(LinearMap::dense(detail::to_matrix(spec.a)),
                               detail::to_vector(spec.b), beta);
  throw ConfigError("unsupported problem kind \"" + spec.kind + "\"");
}

/// Materializes the starting point; explicit vectors must match the problem
/// dimension, seeded random starts draw coordinates uniformly from
/// [-scale, scale].
inline Vector make_start(const StartSpec& spec, std::size_t dim) {
  if (!spec.random) {
    if (spec.values.size() != dim)
      throw ConfigError("field \"x0\" has dimension " + std::to_string(spec.values.size()) +
                        " but the problem has dimension " + std::to_string(dim));
    return detail::to_vector(spec.values);
  }
  SeededRng rng(spec.seed);
  Vector x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = rng.uniform(-spec.scale, spec.scale);
  return x;
}

/// Builds the momentum sequence; custom lists are validated and must reach one
/// step past max_iter because the engine looks ahead one index.
inline TSequence make_sequence(const TSequenceSpec& spec, std::size_t max_iter) {
  if (spec.family == TFamily::custom_explicit) {
    TSequence ts = TSequence::custom(spec.values);  // condition violations first
    if (spec.values.size() < max_iter + 2)
      throw ConfigError("field \"t_sequence.values\" must contain at least max_iter + 2 = " +
                        std::to_string(max_iter + 2) + " entries, got " +
                        std::to_string(spec.values.size()));
    return ts;
  }
  return make_t_sequence(spec.family);
}

}  // namespace fista_affine
