#include "llg/lyapunov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace llg {

namespace {
constexpr double kUnitTol = 1e-12;
}

double lyapunov_V(const Field& m, const EquilibriumPoint& r, double f_of_k) {
  const double err_sq = l2_norm_sq(subtract_uniform(m, r.vec()));
  const double grad_sq = l2_norm_sq(diff_forward(m));
  return 0.5 * f_of_k * err_sq + 0.5 * grad_sq;
}

double decay_bound(const Field& m, const EquilibriumPoint& r, double nu,
                   double k, double f_of_k) {
  const Field h = subtract_uniform(m, r.vec());
  return -nu * k * f_of_k * l2_norm_sq(nodewise_cross(m, h));
}

double dVdt_estimate(const LyapunovSample& a, const LyapunovSample& b) {
  if (b.t == a.t) {
    throw std::invalid_argument("dVdt_estimate: zero time gap");
  }
  return (b.V - a.V) / (b.t - a.t);
}

double decay_tolerance(double dt, double dx, double V) {
  return 10.0 * (dt * dt + dx * dx) * (1.0 + std::abs(V));
}

LemmaReport check_lemma1(const Field& m) {
  const int n = m.grid.cells();
  const Field lap = laplacian_neumann(m);
  const double inv_2dx = 1.0 / (2.0 * m.grid.dx());

  // m_x by central differences; the mirror ghosts make it vanish at the ends.
  std::vector<Vec3> mx(m.nodes());
  mx[0] = Vec3{};
  for (int j = 1; j < n; ++j) mx[j] = inv_2dx * (m[j + 1] - m[j - 1]);
  mx[n] = Vec3{};

  std::vector<Vec3> g(m.nodes());
  for (int j = 0; j <= n; ++j) g[j] = cross(m[j], mx[j]);

  // Beside the ends the centered stencil would mix the exact boundary value
  // of g with interior values carrying the O(dx^2) stencil error, losing an
  // order; one-sided second-order differences stay on interior nodes.
  double worst = 0.0;
  for (int j = 1; j < n; ++j) {
    Vec3 gx;
    if (j == 1 && n >= 4) {
      gx = inv_2dx * (-3.0 * g[1] + 4.0 * g[2] - g[3]);
    } else if (j == n - 1 && n >= 4) {
      gx = inv_2dx * (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]);
    } else {
      gx = inv_2dx * (g[j + 1] - g[j - 1]);
    }
    worst = std::max(worst, norm(gx - cross(m[j], lap[j])));
  }
  return {Lemma::d_cross, worst, n, std::nullopt};
}

LemmaReport check_lemma2(const Field& m, const EquilibriumPoint& r) {
  const Field lap = laplacian_neumann(m);
  const Field h = subtract_uniform(m, r.vec());
  const int n = m.grid.cells();
  const double dx = m.grid.dx();

  std::vector<double> phi(m.nodes());
  for (int j = 0; j <= n; ++j) {
    phi[j] = dot(h[j], cross(m[j], lap[j]));
  }

  // Simpson weights; trapezoid ones telescope against the mirror stencil.
  double sum = 0.0;
  const int even_end = (n % 2 == 0) ? n : n - 3;
  for (int j = 0; j + 2 <= even_end; j += 2) {
    sum += (dx / 3.0) * (phi[j] + 4.0 * phi[j + 1] + phi[j + 2]);
  }
  if (n % 2 != 0) {
    sum += (3.0 * dx / 8.0) *
           (phi[n - 3] + 3.0 * phi[n - 2] + 3.0 * phi[n - 1] + phi[n]);
  }
  return {Lemma::orthogonality, std::abs(sum), n, std::nullopt};
}

double check_lemma3(const Vec3& m, const Vec3& r) {
  if (std::abs(norm(m) - 1.0) > kUnitTol ||
      std::abs(norm(r) - 1.0) > kUnitTol) {
    throw std::invalid_argument("check_lemma3: inputs must be unit vectors");
  }
  return norm(cross(m, r));
}

bool f_admissible(double f_of_k, double k) {
  return f_of_k > 0.0 && std::abs(f_of_k + k) <= 1.0;
}

Field lemma_test_field(const GridSpec& grid) {
  Field f(grid);
  const double L = grid.length();
  for (int j = 0; j < f.nodes(); ++j) {
    const double u = grid.node_x(j) / L;
    // Smoothstep-modulated angles: endpoint slopes vanish exactly (Neumann)
    // while the third derivatives do not, unlike cosine profiles whose odd
    // endpoint derivatives all vanish and hide the truncation error.
    const double s = u * u * (3.0 - 2.0 * u);
    const double theta = 1.1 + 0.4 * s;
    const double phi = 0.7 + 1.3 * s;
    f[j] = {std::sin(theta) * std::cos(phi),
            std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
  return renormalize(f);
}

LyapunovSample make_sample(double t, const Field& m, const EquilibriumPoint& r,
                           double nu, double k, double f_of_k) {
  LyapunovSample s;
  s.t = t;
  const Field h = subtract_uniform(m, r.vec());
  const double err_sq = l2_norm_sq(h);
  s.err_norm = std::sqrt(err_sq);
  s.V = 0.5 * f_of_k * err_sq + 0.5 * l2_norm_sq(diff_forward(m));
  s.cross_h_norm_sq = l2_norm_sq(nodewise_cross(m, h));
  s.bound = -nu * k * f_of_k * s.cross_h_norm_sq;
  return s;
}

}  // namespace llg
