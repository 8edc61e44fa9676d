#include "llg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "llg/errors.hpp"

namespace llg {

namespace {

void require_on_sphere(const Field& m0) {
  if (!m0.on_sphere) {
    throw ConfigError(
        "initial field must be renormalized onto the unit sphere");
  }
}

double component_of(const Vec3& v, int component) {
  return component == 1 ? v.x : component == 2 ? v.y : v.z;
}

}  // namespace

StabilizationReport run_stabilization(const SimParams& params,
                                      const EquilibriumPoint& r,
                                      const Field& m0, double t_end,
                                      double tol_conv,
                                      const IntegratorConfig& cfg,
                                      int stride) {
  require_on_sphere(m0);
  if (!(tol_conv > 0.0)) {
    throw ConfigError("convergence tolerance must be > 0");
  }
  const double ball = 2.0 * (1.0 - 1e-6) * std::sqrt(params.grid().length());
  const double err0 = std::sqrt(l2_norm_sq(subtract_uniform(m0, r.vec())));
  if (err0 >= ball) {
    std::ostringstream os;
    os << "initial field outside the attraction ball: ||m0 - r|| = " << err0
       << " >= " << ball;
    throw ConfigError(os.str());
  }

  const double dx = params.grid().dx();
  const double dt = resolve_dt(cfg, dx, params.nu());
  if (stride <= 0) {
    stride = static_cast<int>(std::max(1.0, std::floor(0.05 / dt)));
  }

  StabilizationReport rep;
  rep.dt = dt;
  auto observe = [&](const SimState& s) {
    LyapunovSample smp =
        make_sample(s.t, s.m, r, params.nu(), params.k(), params.f_of_k());
    if (!rep.samples.empty()) {
      const LyapunovSample& prev = rep.samples.back();
      smp.dVdt_est = dVdt_estimate(prev, smp);
      if (smp.dVdt_est > prev.bound + decay_tolerance(dt, dx, prev.V)) {
        ++rep.violations;
      }
    }
    if (!rep.t_converge && smp.err_norm < tol_conv) {
      rep.t_converge = smp.t;
    }
    rep.samples.push_back(smp);
  };

  SimulateOptions opts;
  opts.stride = stride;
  opts.observers.push_back(observe);
  simulate(SimState{0.0, m0}, params, r, std::nullopt, cfg, t_end, opts);

  rep.converged = !rep.samples.empty() &&
                  rep.samples.back().err_norm < tol_conv;
  return rep;
}

LoopMetrics loop_area(std::span<const HysteresisPoint> period,
                      double input_amplitude) {
  LoopMetrics lm;
  const std::size_t n = period.size();
  if (n < 3) return lm;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const HysteresisPoint& p = period[i];
    const HysteresisPoint& q = period[(i + 1) % n];
    twice += p.input * q.output - q.input * p.output;
  }
  lm.area = 0.5 * std::abs(twice);

  double in_lo = period[0].input, in_hi = in_lo;
  double out_lo = period[0].output, out_hi = out_lo;
  for (const HysteresisPoint& p : period) {
    in_lo = std::min(in_lo, p.input);
    in_hi = std::max(in_hi, p.input);
    out_lo = std::min(out_lo, p.output);
    out_hi = std::max(out_hi, p.output);
  }
  const double floor_scale = std::abs(input_amplitude);
  const double in_tol = 0.01 * std::max(in_hi - in_lo, floor_scale);
  const double out_tol = 0.01 * std::max(out_hi - out_lo, floor_scale);
  lm.closed =
      std::abs(period.front().input - period.back().input) <= in_tol &&
      std::abs(period.front().output - period.back().output) <= out_tol;
  return lm;
}

HysteresisRun run_hysteresis(const SimParams& params,
                             const EquilibriumPoint& r, const Field& m0,
                             const PeriodicInput& input, int periods,
                             double xstar, const IntegratorConfig& cfg) {
  require_on_sphere(m0);
  if (periods < 3) {
    throw ConfigError(
        "hysteresis runs need at least 3 periods so the final one is past "
        "the transient");
  }
  const double L = params.grid().length();
  if (!(xstar >= 0.0 && xstar <= L)) {
    throw ConfigError("probe position xstar must lie in [0, L]");
  }

  const int node = std::clamp(
      static_cast<int>(std::llround(xstar / params.grid().dx())), 0,
      params.grid().cells());
  const double period = input.period();
  const double t_end = static_cast<double>(periods) * period;
  const double dt = resolve_dt(cfg, params.grid().dx(), params.nu());

  // Dense enough for the polygon area, sparse enough to keep series small.
  constexpr double kSamplesPerPeriod = 2048.0;
  const int stride = static_cast<int>(
      std::max(1.0, std::floor(period / (kSamplesPerPeriod * dt))));

  HysteresisRun run;
  run.omega = input.omega();
  run.component = input.component();
  run.xstar = xstar;

  auto observe = [&](const SimState& s) {
    run.series.push_back(
        {s.t, input.amplitude() * std::cos(input.omega() * s.t),
         component_of(s.m[node], input.component())});
  };

  SimulateOptions opts;
  opts.stride = stride;
  opts.observers.push_back(observe);
  simulate(SimState{0.0, m0}, params, r, input, cfg, t_end, opts);

  const double cut = t_end - period * (1.0 + 1e-9);
  std::size_t first = 0;
  while (first < run.series.size() && run.series[first].t < cut) ++first;
  const auto lm = loop_area(
      std::span<const HysteresisPoint>(run.series).subspan(first),
      input.amplitude());
  run.area = lm.area;
  run.settled = lm.closed;
  return run;
}

std::vector<SweepEntry> frequency_sweep(const HysteresisSetup& setup,
                                        std::span<const double> omegas) {
  std::vector<std::future<HysteresisRun>> futures;
  futures.reserve(omegas.size());
  for (double omega : omegas) {
    futures.push_back(std::async(std::launch::async, [&setup, omega] {
      return run_hysteresis(setup.params, setup.r, setup.m0,
                            setup.input.with_omega(omega), setup.periods,
                            setup.xstar, setup.integrator);
    }));
  }
  std::vector<SweepEntry> entries(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    entries[i].omega = omegas[i];
    try {
      entries[i].run = futures[i].get();
    } catch (const BlowupError& e) {
      entries[i].error = e.what();
      entries[i].error_exit_code = 3;
    } catch (const std::exception& e) {
      entries[i].error = e.what();
      entries[i].error_exit_code = 2;
    }
  }
  return entries;
}

Field perturbed_initial(const GridSpec& grid, const EquilibriumPoint& r,
                        double amplitude) {
  const Vec3 rv = r.vec();
  const double ax = std::abs(rv.x);
  const double ay = std::abs(rv.y);
  const double az = std::abs(rv.z);
  Vec3 axis{};
  if (ax <= ay && ax <= az) {
    axis = {1.0, 0.0, 0.0};
  } else if (ay <= az) {
    axis = {0.0, 1.0, 0.0};
  } else {
    axis = {0.0, 0.0, 1.0};
  }
  Vec3 tangent = cross(rv, axis);
  tangent *= 1.0 / norm(tangent);

  Field f(grid);
  const double L = grid.length();
  for (int j = 0; j < f.nodes(); ++j) {
    const double bump =
        amplitude * std::cos(std::numbers::pi * grid.node_x(j) / L);
    f[j] = rv + bump * tangent;
  }
  return renormalize(f);
}

}  // namespace llg
