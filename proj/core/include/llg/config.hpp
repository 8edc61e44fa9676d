#pragma once

#include <optional>
#include <string>
#include <vector>

#include "llg/dynamics.hpp"
#include "llg/integrator.hpp"

namespace llg {

enum class ExperimentKind { stabilize, hysteresis, sweep, verify };
enum class FRule { f_equals_k, constant };
enum class InitialPreset { target, perturbed, constant, nodes };
enum class ProjectionMode { automatic, on, off };

/// Fully resolved run configuration: defaults filled in, every value
/// validated at parse time. Round-trips exactly through serialize_config.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::stabilize;

  int grid_n = 64;
  double grid_length = 1.0;
  double nu = 0.02;

  double k = 0.25;
  FRule f_rule = FRule::f_equals_k;
  double f_value = 0.25;  // the resolved f(k), equal to k under f_equals_k
  Vec3 r{1.0, 0.0, 0.0};

  InitialPreset initial = InitialPreset::perturbed;
  Vec3 initial_constant{1.0, 0.0, 0.0};
  std::vector<Vec3> initial_nodes;
  double initial_amplitude = 0.1;

  Scheme scheme = Scheme::rk4_projected;
  double dt = 0.0;  // 0 = automatic, CFL-guarded
  double cfl_safety = 0.5;
  ProjectionMode projection = ProjectionMode::automatic;
  int stride = 0;  // 0 = automatic

  double t_end = 200.0;
  double tol_conv = 1e-3;

  double amplitude = 0.01;
  std::vector<double> omegas{1.0, 0.1, 0.01};
  int component = 1;
  double xstar = 1.0;
  int periods = 3;

  std::vector<std::string> warnings;

  bool operator==(const RunConfig&) const = default;

  GridSpec grid() const { return {grid_n, grid_length}; }
  SimParams make_params() const;
  EquilibriumPoint equilibrium() const;
  Field initial_field() const;
  PeriodicInput periodic_input(double omega) const;

  /// Projection defaults to on, except for the input-output experiments
  /// whose drive is intentionally not tangent to the sphere.
  IntegratorConfig integrator_config() const;
};

/// Parses `key = value` lines ('#' starts a comment). Unknown keys,
/// duplicates, malformed values and inadmissible parameter sets are
/// rejected with the offending line number in the message. `force`
/// overrides the experiment key (the CLI subcommand) before defaults
/// that depend on it are resolved.
RunConfig parse_config(const std::string& text,
                       std::optional<ExperimentKind> force = std::nullopt);

/// Reads and parses a configuration file; the path prefixes any error.
RunConfig load_config_file(const std::string& path,
                           std::optional<ExperimentKind> force = std::nullopt);

/// Canonical text form: parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

std::string to_string(ExperimentKind e);
std::string to_string(FRule f);
std::string to_string(InitialPreset p);
std::string to_string(ProjectionMode p);
std::string to_string(Scheme s);

}  // namespace llg
