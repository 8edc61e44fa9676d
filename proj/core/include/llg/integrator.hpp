#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "llg/dynamics.hpp"
#include "llg/grid_field.hpp"

namespace llg {

enum class Scheme { rk4_projected, euler_projected };

/// Time stepping controls. dt <= 0 selects the automatic step, which is
/// cfl_safety times the tighter of the two stability bounds below. `project`
/// renormalizes every node after each full step; switching it off integrates
/// the raw vector field, which is what the periodic input-output experiments
/// need since their drive is deliberately not tangent to the sphere.
struct IntegratorConfig {
  double dt = 0.0;
  Scheme scheme = Scheme::rk4_projected;
  double cfl_safety = 0.5;
  bool project = true;
};

/// Parabolic step bound dx^2 / (2 max(nu, 0.1)) for the damping term.
double stable_dt(double dx, double nu);

/// Rotation step bound sqrt(2)/2 * dx^2. The exchange term spins the fastest
/// grid mode at close to 4/dx^2 radians per unit time, and the classical
/// Runge-Kutta region only covers the imaginary axis up to |z| = 2 sqrt(2).
/// The parabolic bound alone admits steps roughly 3.5x past this limit at
/// small nu, which turns round-off into exponential growth.
double precession_stable_dt(double dx);

/// The step actually used: explicit dt when positive, else
/// cfl_safety * min(stable_dt, precession_stable_dt).
double resolve_dt(const IntegratorConfig& cfg, double dx, double nu);

struct SimState {
  double t = 0.0;
  Field m;
};

/// Sampled times (and optionally field snapshots) plus the step count.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> snapshots;
  std::size_t steps = 0;
};

struct SimulateOptions {
  int stride = 1;  // steps between observer samples
  bool record_snapshots = false;
  std::vector<std::function<void(const SimState&)>> observers;
};

/// One explicit step of the closed-loop system. The proportional control
/// (when given) is re-evaluated at every stage from the stage value, the
/// periodic input (when given) at the stage time. With cfg.project the node
/// norms are restored to 1 afterwards; otherwise the state is only checked
/// for finiteness.
[[nodiscard]] SimState step(const SimState& state, const SimParams& params,
                            const std::optional<EquilibriumPoint>& control,
                            const std::optional<PeriodicInput>& input,
                            const IntegratorConfig& cfg);

/// Equal substeps from initial.t to exactly t_end, each no larger than the
/// resolved dt. Observers fire on the initial state, on every stride-th step
/// and on the final step. Blow-ups are rethrown with the failing time
/// attached.
Trajectory simulate(const SimState& initial, const SimParams& params,
                    const std::optional<EquilibriumPoint>& control,
                    const std::optional<PeriodicInput>& input,
                    const IntegratorConfig& cfg, double t_end,
                    const SimulateOptions& opts = {});

}  // namespace llg
