#include "llg/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "llg/errors.hpp"

namespace llg {

double stable_dt(double dx, double nu) {
  return dx * dx / (2.0 * std::max(nu, 0.1));
}

double precession_stable_dt(double dx) {
  return 0.5 * std::numbers::sqrt2 * dx * dx;
}

double resolve_dt(const IntegratorConfig& cfg, double dx, double nu) {
  if (cfg.dt > 0.0) {
    if (!std::isfinite(cfg.dt)) throw ConfigError("dt must be finite");
    return cfg.dt;
  }
  if (!(cfg.cfl_safety > 0.0) || cfg.cfl_safety > 1.0) {
    throw ConfigError("cfl_safety must lie in (0, 1]");
  }
  return cfg.cfl_safety * std::min(stable_dt(dx, nu), precession_stable_dt(dx));
}

namespace {

// Closed-loop stepper with preallocated stage buffers; the step loops are
// the hot path of every experiment and must not allocate.
class Stepper {
 public:
  Stepper(const SimParams& params, std::optional<EquilibriumPoint> control,
          std::optional<PeriodicInput> input, IntegratorConfig cfg)
      : nu_(params.nu()),
        gain_(params.k()),
        inv_dx2_(1.0 / (params.grid().dx() * params.grid().dx())),
        control_(control),
        input_(input),
        cfg_(cfg),
        n_(params.grid().nodes()),
        k1_(n_), k2_(n_), k3_(n_), k4_(n_), stage_(n_) {
    if (params.grid().cells() < 2) {
      throw std::invalid_argument("time stepping needs at least 2 grid cells");
    }
  }

  // Advances m in place across [s.t, s.t + dt]; the caller owns updating s.t.
  void advance(SimState& s, double dt) {
    auto& m = s.m.values;
    if (cfg_.scheme == Scheme::rk4_projected) {
      rhs(m, s.t, k1_);
      staged(m, 0.5 * dt, k1_);
      rhs(stage_, s.t + 0.5 * dt, k2_);
      staged(m, 0.5 * dt, k2_);
      rhs(stage_, s.t + 0.5 * dt, k3_);
      staged(m, dt, k3_);
      rhs(stage_, s.t + dt, k4_);
      const double w = dt / 6.0;
      for (int j = 0; j < n_; ++j) {
        m[j] += w * (k1_[j] + 2.0 * k2_[j] + 2.0 * k3_[j] + k4_[j]);
      }
    } else {
      rhs(m, s.t, k1_);
      for (int j = 0; j < n_; ++j) m[j] += dt * k1_[j];
    }
    if (cfg_.project) {
      detail::project_nodes(m);
      s.m.on_sphere = true;
    } else {
      for (const auto& v : m) {
        if (!std::isfinite(norm_sq(v))) {
          throw BlowupError("field stopped being finite");
        }
      }
      s.m.on_sphere = false;
    }
  }

 private:
  void rhs(const std::vector<Vec3>& m, double t, std::vector<Vec3>& out) const {
    const int last = n_ - 1;
    const Vec3 drive = input_ ? input_->value(t) : Vec3{};
    const bool has_control = control_.has_value();
    const Vec3 r = has_control ? control_->vec() : Vec3{};
    for (int j = 0; j <= last; ++j) {
      Vec3 h;
      if (j == 0) {
        h = 2.0 * inv_dx2_ * (m[1] - m[0]);
      } else if (j == last) {
        h = 2.0 * inv_dx2_ * (m[last - 1] - m[last]);
      } else {
        h = inv_dx2_ * (m[j - 1] - 2.0 * m[j] + m[j + 1]);
      }
      if (has_control) h += gain_ * (r - m[j]);
      const Vec3 mxh = cross(m[j], h);
      out[j] = mxh - nu_ * cross(m[j], mxh) + drive;
    }
  }

  void staged(const std::vector<Vec3>& m, double scale,
              const std::vector<Vec3>& slope) {
    for (int j = 0; j < n_; ++j) stage_[j] = m[j] + scale * slope[j];
  }

  double nu_;
  double gain_;
  double inv_dx2_;
  std::optional<EquilibriumPoint> control_;
  std::optional<PeriodicInput> input_;
  IntegratorConfig cfg_;
  int n_;
  std::vector<Vec3> k1_, k2_, k3_, k4_, stage_;
};

[[noreturn]] void rethrow_with_time(const BlowupError& e, double t) {
  std::ostringstream os;
  os << e.what() << " at t = " << t;
  throw BlowupError(os.str(), t);
}

}  // namespace

SimState step(const SimState& state, const SimParams& params,
              const std::optional<EquilibriumPoint>& control,
              const std::optional<PeriodicInput>& input,
              const IntegratorConfig& cfg) {
  if (!(state.m.grid == params.grid())) {
    throw std::invalid_argument("step: state grid differs from params grid");
  }
  const double dt = resolve_dt(cfg, params.grid().dx(), params.nu());
  Stepper stepper(params, control, input, cfg);
  SimState s = state;
  try {
    stepper.advance(s, dt);
  } catch (const BlowupError& e) {
    rethrow_with_time(e, state.t + dt);
  }
  s.t = state.t + dt;
  return s;
}

Trajectory simulate(const SimState& initial, const SimParams& params,
                    const std::optional<EquilibriumPoint>& control,
                    const std::optional<PeriodicInput>& input,
                    const IntegratorConfig& cfg, double t_end,
                    const SimulateOptions& opts) {
  if (!(initial.m.grid == params.grid())) {
    throw std::invalid_argument(
        "simulate: state grid differs from params grid");
  }
  const auto stride = static_cast<std::size_t>(std::max(1, opts.stride));
  Trajectory traj;
  SimState s = initial;
  auto sample = [&](const SimState& st) {
    traj.times.push_back(st.t);
    if (opts.record_snapshots) traj.snapshots.push_back(st.m);
    for (const auto& obs : opts.observers) {
      if (obs) obs(st);
    }
  };
  sample(s);
  if (t_end <= initial.t) return traj;

  const double dt_cap = resolve_dt(cfg, params.grid().dx(), params.nu());
  const double span = t_end - initial.t;
  auto nsteps =
      static_cast<std::size_t>(std::ceil(span / dt_cap * (1.0 - 1e-12)));
  if (nsteps == 0) nsteps = 1;
  // Equal substeps that finish exactly on t_end; the resolved dt only caps
  // their size.
  const double dt = span / static_cast<double>(nsteps);

  Stepper stepper(params, control, input, cfg);
  for (std::size_t i = 1; i <= nsteps; ++i) {
    const double t_next =
        i == nsteps ? t_end : initial.t + static_cast<double>(i) * dt;
    try {
      stepper.advance(s, dt);
    } catch (const BlowupError& e) {
      rethrow_with_time(e, t_next);
    }
    s.t = t_next;
    traj.steps = i;
    if (i % stride == 0 || i == nsteps) sample(s);
  }
  return traj;
}

}  // namespace llg
