#include "llg/certificates.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "llg/dynamics.hpp"
#include "llg/errors.hpp"
#include "llg/experiments.hpp"
#include "llg/grid_field.hpp"
#include "llg/integrator.hpp"
#include "llg/lyapunov.hpp"

namespace llg {
namespace {

constexpr std::uint64_t kSeed = 0x11c0de2026ull;

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

std::string fixed2(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    const double n = norm(v);
    if (n > 1e-3) return (1.0 / n) * v;
  }
}

Field random_sphere_field(const GridSpec& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Field f(grid);
  for (int j = 0; j < f.nodes(); ++j) {
    const double theta = std::acos(2.0 * u(rng) - 1.0);
    const double phi = 2.0 * std::numbers::pi * u(rng);
    f[j] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
  return renormalize(f);
}

/// Slope of log(residual) against log(dx).
double fit_order(const std::vector<double>& dx, const std::vector<double>& res) {
  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  const double n = static_cast<double>(dx.size());
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const double x = std::log(dx[i]);
    const double y = std::log(res[i]);
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

bool run_certificates(std::ostream& out, bool quiet) {
  bool all_ok = true;
  const auto report = [&](bool ok, const std::string& line) {
    all_ok = all_ok && ok;
    if (!quiet || !ok) out << (ok ? "ok   " : "FAIL ") << line << "\n";
  };

  std::mt19937_64 rng(kSeed);

  {
    double bac = 0, anti = 0, lagrange = 0, orth = 0;
    for (int i = 0; i < 200; ++i) {
      const Vec3 a = random_unit(rng), b = random_unit(rng), c = random_unit(rng);
      bac = std::max(bac, norm(triple_cross(a, b, c) - (dot(a, c) * b - dot(a, b) * c)));
      anti = std::max(anti, norm(cross(a, b) + cross(b, a)));
      lagrange = std::max(lagrange, std::abs(norm_sq(cross(a, b)) -
                                             (norm_sq(a) * norm_sq(b) - dot(a, b) * dot(a, b))));
      orth = std::max(orth, std::max(std::abs(dot(cross(a, b), a)),
                                     std::abs(dot(cross(a, b), b))));
    }
    report(bac <= 1e-14 && anti == 0.0 && lagrange <= 1e-12 && orth <= 1e-14,
           "cross product algebra: bac-cab " + sci(bac) + ", antisymmetry " + sci(anti) +
               ", lagrange " + sci(lagrange) + ", orthogonality " + sci(orth));
  }

  {
    const double L = 1.0;
    std::vector<double> errs;
    for (const int n : {64, 128}) {
      const GridSpec grid(n, L);
      Field f(grid);
      for (int j = 0; j <= n; ++j) {
        f[j] = {std::cos(std::numbers::pi * grid.node_x(j) / L), 0.0, 0.0};
      }
      const Field lap = laplacian_neumann(f);
      double err = 0;
      const double c = std::numbers::pi / L;
      for (int j = 0; j <= n; ++j) {
        err = std::max(err, std::abs(lap[j].x + c * c * std::cos(c * grid.node_x(j))));
      }
      errs.push_back(err);
    }
    const double order = std::log2(errs[0] / errs[1]);
    report(order >= 1.9 && order <= 2.1,
           "laplacian stencil order " + fixed2(order) + " (max errors " + sci(errs[0]) +
               " -> " + sci(errs[1]) + ")");
  }

  {
    std::vector<double> res;
    bool ratios_ok = true;
    for (const int n : {32, 64, 128, 256}) {
      res.push_back(check_lemma1(lemma_test_field(GridSpec(n, 1.0))).residual);
    }
    std::string shown;
    for (std::size_t i = 0; i < res.size(); ++i) {
      if (i) {
        ratios_ok = ratios_ok && res[i - 1] / res[i] >= 2.0;
        shown += " -> ";
      }
      shown += sci(res[i]);
    }
    report(ratios_ok, "derivative identity for m x m_x: residuals " + shown);
  }

  {
    std::vector<double> dxs, res;
    const Vec3 r{1.0, 0.0, 0.0};
    for (const int n : {32, 64, 128, 256}) {
      const GridSpec grid(n, 1.0);
      dxs.push_back(grid.dx());
      res.push_back(check_lemma2(lemma_test_field(grid), EquilibriumPoint(r)).residual);
    }
    const double order = fit_order(dxs, res);
    report(order >= 1.7 && order <= 2.3,
           "integral orthogonality order " + fixed2(order) + " (residuals " + sci(res[0]) +
               " -> " + sci(res.back()) + ")");
  }

  {
    double worst = 0;
    for (int i = 0; i < 10'000; ++i) {
      worst = std::max(worst, check_lemma3(random_unit(rng), random_unit(rng)));
    }
    report(worst <= 1.0 + 1e-12,
           "cross product of unit vectors stays within the unit ball: max " + sci(worst));
  }

  {
    bool ok = true;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      Vec3 r = random_unit(rng);
      while (std::abs(r.x) < 1e-3) r = random_unit(rng);
      const auto sols = solve_collinear(EquilibriumPoint(r));
      ok = ok && sols[0] == r && sols[1] == -1.0 * r;
      for (const Vec3& m : sols) {
        worst = std::max(worst, norm(cross(m, r)));
        ok = ok && std::abs(norm(m) - 1.0) <= 1e-12;
        ok = ok && is_in_E(Field::uniform(GridSpec(8, 1.0), m), 1e-12);
      }
    }
    report(ok && worst <= 1e-14,
           "collinear equilibria are exactly {r, -r}: max residual " + sci(worst));
  }

  {
    bool accepted = true;
    for (int i = 1; i <= 50; ++i) {
      const double k = i / 100.0;
      try {
        (void)SimParams(0.02, k, k, GridSpec(8, 1.0));
      } catch (const ConfigError&) {
        accepted = false;
      }
    }
    int rejected = 0;
    const double bad[][2] = {{0.6, 0.6}, {0.25, 0.0}, {0.25, -0.1}, {0.25, 0.8}};
    for (const auto& kv : bad) {
      try {
        (void)SimParams(0.02, kv[0], kv[1], GridSpec(8, 1.0));
      } catch (const ConfigError&) {
        ++rejected;
      }
    }
    report(accepted && rejected == 4,
           "gain admissibility: k in (0, 1/2] with f = k accepted, 4/4 violators rejected");
  }

  {
    const GridSpec grid(24, 1.0);
    const SimParams params(0.02, 0.25, 0.25, grid);
    const EquilibriumPoint r(Vec3{0.0, 0.0, 1.0});
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const Field m = random_sphere_field(grid, rng);
      const Field rhs =
          llg_rhs(m, control_proportional(m, r, params.k()), params.nu());
      for (int j = 0; j < m.nodes(); ++j) {
        worst = std::max(worst, std::abs(dot(m[j], rhs[j])));
      }
    }
    report(worst <= 1e-12, "right-hand side is tangent to the sphere: max |m . dm/dt| " + sci(worst));
  }

  {
    const GridSpec grid(32, 1.0);
    const SimParams params(0.02, 0.25, 0.25, grid);
    const Vec3 rv{0.6, 0.8, 0.0};
    const EquilibriumPoint r(rv);
    SimState state{0.0, Field::uniform(grid, rv)};
    const IntegratorConfig cfg;
    const double dt = resolve_dt(cfg, grid.dx(), params.nu());
    for (int i = 0; i < 1000; ++i) {
      state = step(state, params, r, std::nullopt, cfg);
    }
    double worst = 0;
    for (int j = 0; j < state.m.nodes(); ++j) {
      worst = std::max(worst, norm(state.m[j] - rv));
    }
    report(worst <= 1e-12, "uniform target state is a fixed point over 1000 steps (dt " +
                               sci(dt) + "): max drift " + sci(worst));
  }

  {
    const GridSpec grid(32, 1.0);
    const SimParams params(0.02, 0.25, 0.25, grid);
    const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
    const Field m0 = perturbed_initial(grid, r, 0.1);
    const auto rep = run_stabilization(params, r, m0, 10.0, 1e-3);
    const bool ok = rep.violations == 0 && !rep.samples.empty() &&
                    rep.samples.back().V < rep.samples.front().V;
    report(ok, "energy decay certificate over t in [0, 10]: violations " +
                   std::to_string(rep.violations) + ", V " + sci(rep.samples.front().V) +
                   " -> " + sci(rep.samples.back().V));
  }

  return all_ok;
}

}  // namespace llg
