#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "llg/dynamics.hpp"
#include "llg/integrator.hpp"
#include "llg/lyapunov.hpp"

namespace llg {

struct StabilizationReport {
  std::vector<LyapunovSample> samples;
  bool converged = false;
  std::optional<double> t_converge;  // first sampled time below tol_conv
  long violations = 0;               // decay certificate failures
  double dt = 0.0;                   // step actually used
};

/// Closed-loop run toward r from m0 with per-sample energy diagnostics.
/// Rejects initial data off the sphere or outside the attraction ball
/// ||m0 - r|| < 2 (1 - 1e-6) sqrt(L). stride <= 0 picks roughly one sample
/// every 0.05 time units.
StabilizationReport run_stabilization(const SimParams& params,
                                      const EquilibriumPoint& r,
                                      const Field& m0, double t_end,
                                      double tol_conv,
                                      const IntegratorConfig& cfg = {},
                                      int stride = 0);

struct HysteresisPoint {
  double t = 0.0;
  double input = 0.0;
  double output = 0.0;

  bool operator==(const HysteresisPoint&) const = default;
};

struct LoopMetrics {
  double area = 0.0;
  bool closed = false;  // endpoints agree within 1% of each coordinate's swing
};

/// Shoelace area of the closed (input, output) polygon over one period.
/// Each coordinate's endpoint gap is compared against 1% of that
/// coordinate's range over the period (with the input amplitude as a floor,
/// so flat traces are not judged by their own noise); a cycle that misses
/// either tolerance is flagged as not closed. The area is still returned.
LoopMetrics loop_area(std::span<const HysteresisPoint> period,
                      double input_amplitude);

struct HysteresisRun {
  double omega = 0.0;
  int component = 1;
  double xstar = 0.0;
  std::vector<HysteresisPoint> series;  // covers >= 3 full periods
  double area = 0.0;                    // final full period only
  bool settled = false;

  bool operator==(const HysteresisRun&) const = default;
};

/// Drives the system with the periodic input alongside the proportional
/// control and records the input against the chosen magnetization component
/// at the node nearest xstar. Needs at least 3 periods so the final one is
/// past the transient.
HysteresisRun run_hysteresis(const SimParams& params,
                             const EquilibriumPoint& r, const Field& m0,
                             const PeriodicInput& input, int periods,
                             double xstar, const IntegratorConfig& cfg = {});

struct HysteresisSetup {
  SimParams params;
  EquilibriumPoint r;
  Field m0;
  PeriodicInput input;  // omega is replaced per sweep member
  int periods = 3;
  double xstar = 0.0;
  IntegratorConfig integrator{};
};

struct SweepEntry {
  double omega = 0.0;
  std::optional<HysteresisRun> run;
  std::string error;       // empty on success
  int error_exit_code = 0; // 0 ok, 2 config, 3 blow-up
};

/// Runs the setup once per frequency. Members are independent and execute
/// concurrently; per-run failures are collected instead of aborting the
/// sweep, and results are deterministic regardless of scheduling.
std::vector<SweepEntry> frequency_sweep(const HysteresisSetup& setup,
                                        std::span<const double> omegas);

/// Default stabilization initial condition: r plus a smooth tangential bump
/// amplitude * cos(pi x / L), renormalized. The cosine profile has zero
/// slope at both ends, so the Neumann condition holds from the first step.
Field perturbed_initial(const GridSpec& grid, const EquilibriumPoint& r,
                        double amplitude);

}  // namespace llg
