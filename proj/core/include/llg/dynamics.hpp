#pragma once

#include <array>

#include "llg/grid_field.hpp"
#include "llg/vec3.hpp"

namespace llg {

/// Physical and discretization parameters of one run. Construction enforces
/// the gain admissibility window f(k) > 0 and |f(k) + k| <= 1 together with
/// nu >= 0 and k > 0, so an instance is always a usable parameter set.
class SimParams {
 public:
  SimParams(double nu, double k, double f_of_k, GridSpec grid);

  double nu() const { return nu_; }
  double k() const { return k_; }
  double f_of_k() const { return f_of_k_; }
  const GridSpec& grid() const { return grid_; }

 private:
  double nu_;
  double k_;
  double f_of_k_;
  GridSpec grid_;
};

/// A constant-in-space unit vector, the target of the proportional control.
/// The first component may be zero; the collinearity solver is the only
/// operation that refuses that case.
class EquilibriumPoint {
 public:
  explicit EquilibriumPoint(const Vec3& r);

  const Vec3& vec() const { return r_; }

  bool operator==(const EquilibriumPoint&) const = default;

 private:
  Vec3 r_;
};

/// Scalar periodic drive a*cos(omega t) applied on one component (1..3).
class PeriodicInput {
 public:
  PeriodicInput(double amplitude, double omega, int component);

  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  int component() const { return component_; }
  double period() const;

  /// The drive as a 3-vector at time t.
  Vec3 value(double t) const;

  /// A copy with a different frequency (used by frequency sweeps).
  PeriodicInput with_omega(double omega) const;

 private:
  double amplitude_;
  double omega_;
  int component_;
};

/// Proportional control field u_j = k (r - m_j).
Field control_proportional(const Field& m, const EquilibriumPoint& r, double k);

/// Dissipative precession right-hand side
///   dm/dt = m x (lap m + u) - nu m x (m x (lap m + u))
/// evaluated nodewise with the zero-slope Laplacian. Expects m on the unit
/// sphere; the result is tangent to it. Grids of m and u must match.
Field llg_rhs(const Field& m, const Field& u, double nu);

/// llg_rhs plus a spatially constant additive drive appended outside the
/// cross-product structure. The drive is generally not tangent to the
/// sphere; see the integrator for how the constraint is handled.
Field llg_rhs_with_additive_input(const Field& m, const Field& u, double nu,
                                  const Vec3& uhat);

/// Solutions of m x r = 0 with |m| = 1: exactly {r, -r}. Requires a nonzero
/// first component of r; throws ConfigError otherwise.
std::array<Vec3, 2> solve_collinear(const EquilibriumPoint& r);

/// True when the field is a constant unit vector within tol: every node is
/// within tol of the nodal mean and the mean has unit norm within tol.
bool is_in_E(const Field& m, double tol);

}  // namespace llg
