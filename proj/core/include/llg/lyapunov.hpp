#pragma once

#include <optional>

#include "llg/dynamics.hpp"
#include "llg/grid_field.hpp"

namespace llg {

/// One diagnostic row of a stabilization run.
struct LyapunovSample {
  double t = 0.0;
  double V = 0.0;
  double dVdt_est = 0.0;  // finite difference against the previous sample
  double bound = 0.0;     // certified decay bound, always <= 0
  double err_norm = 0.0;  // ||m - r|| in the discrete L2 norm
  double cross_h_norm_sq = 0.0;

  bool operator==(const LyapunovSample&) const = default;
};

enum class Lemma { d_cross, orthogonality, bounded_cross };

struct LemmaReport {
  Lemma lemma;
  double residual = 0.0;
  int grid_cells = 0;
  std::optional<double> observed_order;
};

/// Energy functional
///   V(m) = f(k)/2 ||m - r||^2 + 1/2 ||m_x||^2
/// with the forward-difference gradient and trapezoid norms. Zero exactly
/// when m coincides with r.
double lyapunov_V(const Field& m, const EquilibriumPoint& r, double f_of_k);

/// Certified upper bound on dV/dt along closed-loop trajectories:
///   -nu k f(k) ||m x (m - r)||^2.
double decay_bound(const Field& m, const EquilibriumPoint& r, double nu,
                   double k, double f_of_k);

/// Finite-difference slope (b.V - a.V) / (b.t - a.t). The samples must have
/// distinct times.
double dVdt_estimate(const LyapunovSample& a, const LyapunovSample& b);

/// Discretization allowance for the decay certificate:
///   10 (dt^2 + dx^2) (1 + |V|).
double decay_tolerance(double dt, double dx, double V);

/// Max interior defect of d/dx (m x m_x) = m x m_xx, using central
/// differences in the bulk and one-sided second-order differences beside the
/// ends. Second-order small for smooth fields.
LemmaReport check_lemma1(const Field& m);

/// Quadrature residual of the orthogonality identity
///   integral (m - r) . (m x m_xx) dx = 0,
/// which holds for unit fields with zero endpoint slope. Trapezoid weights
/// pair with the mirror stencil to cancel this sum exactly at any resolution,
/// so the check integrates with Simpson weights instead; the residual then
/// carries the stencil's genuine second-order truncation term.
LemmaReport check_lemma2(const Field& m, const EquilibriumPoint& r);

/// |m x r| for two unit vectors; never exceeds 1. Rejects non-unit inputs.
double check_lemma3(const Vec3& m, const Vec3& r);

/// Gain admissibility predicate: f(k) > 0 and |f(k) + k| <= 1.
bool f_admissible(double f_of_k, double k);

/// Smooth on-sphere field with exactly zero endpoint slope, built from
/// smoothstep-modulated spherical angles so the higher odd derivatives stay
/// nonzero at the ends. Shared by the identity certificates and their tests.
Field lemma_test_field(const GridSpec& grid);

/// Diagnostic row for one state; dVdt_est is left zero (it needs a pair).
LyapunovSample make_sample(double t, const Field& m, const EquilibriumPoint& r,
                           double nu, double k, double f_of_k);

}  // namespace llg
