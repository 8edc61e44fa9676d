#include "llg/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "llg/errors.hpp"

namespace llg {

namespace {
constexpr double kUnitTol = 1e-12;

std::string format_gain_violation(double k, double f_of_k) {
  std::ostringstream os;
  os << "inadmissible gain pair: need f(k) > 0 and |f(k) + k| <= 1, got k = "
     << k << ", f(k) = " << f_of_k;
  return os.str();
}
}  // namespace

SimParams::SimParams(double nu, double k, double f_of_k, GridSpec grid)
    : nu_(nu), k_(k), f_of_k_(f_of_k), grid_(grid) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw ConfigError("damping nu must be finite and >= 0");
  }
  if (!std::isfinite(k) || k <= 0.0) {
    throw ConfigError("control gain k must be finite and > 0");
  }
  if (!std::isfinite(f_of_k) || f_of_k <= 0.0 ||
      std::abs(f_of_k + k) > 1.0) {
    throw ConfigError(format_gain_violation(k, f_of_k));
  }
}

EquilibriumPoint::EquilibriumPoint(const Vec3& r) : r_(r) {
  if (!finite(r) || std::abs(norm(r) - 1.0) > kUnitTol) {
    throw ConfigError("equilibrium point must be a unit vector to 1e-12");
  }
}

PeriodicInput::PeriodicInput(double amplitude, double omega, int component)
    : amplitude_(amplitude), omega_(omega), component_(component) {
  if (!std::isfinite(amplitude)) {
    throw ConfigError("input amplitude must be finite");
  }
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw ConfigError("input frequency omega must be finite and > 0");
  }
  if (component < 1 || component > 3) {
    throw ConfigError("input component must be 1, 2 or 3");
  }
}

double PeriodicInput::period() const {
  return 2.0 * std::numbers::pi / omega_;
}

Vec3 PeriodicInput::value(double t) const {
  const double a = amplitude_ * std::cos(omega_ * t);
  Vec3 v{};
  if (component_ == 1) {
    v.x = a;
  } else if (component_ == 2) {
    v.y = a;
  } else {
    v.z = a;
  }
  return v;
}

PeriodicInput PeriodicInput::with_omega(double omega) const {
  return PeriodicInput(amplitude_, omega, component_);
}

Field control_proportional(const Field& m, const EquilibriumPoint& r,
                           double k) {
  Field u(m.grid);
  for (int j = 0; j < m.nodes(); ++j) {
    u[j] = k * (r.vec() - m[j]);
  }
  return u;
}

Field llg_rhs(const Field& m, const Field& u, double nu) {
  if (!(m.grid == u.grid)) {
    throw std::invalid_argument(
        "llg_rhs: control field grid differs from magnetization grid");
  }
  const Field lap = laplacian_neumann(m);
  Field out(m.grid);
  for (int j = 0; j < m.nodes(); ++j) {
    const Vec3 h = lap[j] + u[j];
    out[j] = cross(m[j], h) - nu * triple_cross(m[j], m[j], h);
  }
  return out;
}

Field llg_rhs_with_additive_input(const Field& m, const Field& u, double nu,
                                  const Vec3& uhat) {
  Field out = llg_rhs(m, u, nu);
  for (auto& v : out.values) v += uhat;
  return out;
}

std::array<Vec3, 2> solve_collinear(const EquilibriumPoint& r) {
  if (r.vec().x == 0.0) {
    throw ConfigError(
        "collinearity solver requires a nonzero first component of r");
  }
  return {r.vec(), -r.vec()};
}

bool is_in_E(const Field& m, double tol) {
  Vec3 mean{};
  for (const auto& v : m.values) mean += v;
  mean *= 1.0 / static_cast<double>(m.nodes());
  for (const auto& v : m.values) {
    if (norm(v - mean) > tol) return false;
  }
  return std::abs(norm(mean) - 1.0) <= tol;
}

}  // namespace llg
