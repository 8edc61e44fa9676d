// Acceptance harness: one line per criterion, nonzero exit on any failure.
// Criteria run on the documented default problem sizes; the hysteresis
// sweep is the long pole and stays well under its two minute budget.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "llg/certificates.hpp"
#include "llg/config.hpp"
#include "llg/dynamics.hpp"
#include "llg/errors.hpp"
#include "llg/experiments.hpp"
#include "llg/grid_field.hpp"
#include "llg/integrator.hpp"
#include "llg/lyapunov.hpp"

using namespace llg;

namespace {

int failures = 0;

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    const double n = norm(v);
    if (n > 1e-3) return (1.0 / n) * v;
  }
}

// 1: node norms stay on the sphere to 1e-12 across 1e5 projected steps.
void criterion_sphere() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec grid(64, 1.0);
  const SimParams params(0.02, 0.25, 0.25, grid);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const Field m0 = perturbed_initial(grid, r, 0.1);
  const IntegratorConfig cfg;
  const double dt = resolve_dt(cfg, grid.dx(), params.nu());

  double worst = 0.0;
  SimulateOptions opts;
  opts.stride = 1;
  opts.observers.push_back(
      [&](const SimState& s) { worst = std::max(worst, max_norm_deviation(s.m)); });
  const Trajectory traj =
      simulate({0.0, m0}, params, r, std::nullopt, cfg, 100000 * dt, opts);
  const double secs = seconds_since(t0);
  const bool ok = traj.steps == 100000 && worst <= 1e-12 && secs < 10.0;
  report(1, "sphere residency over 1e5 steps", ok,
         strf("max | ||m_j|| - 1 | = %.2e across %zu steps in %.1f s", worst,
              traj.steps, secs));
}

// 2 and 3 share one long closed-loop run on the default problem.
void criteria_decay_and_convergence() {
  const GridSpec grid(64, 1.0);
  const SimParams params(0.02, 0.25, 0.25, grid);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const Field m0 = perturbed_initial(grid, r, 0.1);
  const StabilizationReport rep = run_stabilization(params, r, m0, 200.0, 1e-3);

  const double V0 = rep.samples.front().V;
  const double V_end = rep.samples.back().V;
  report(2, "certified energy decay to t = 200",
         rep.violations == 0 && V_end < 0.01 * V0,
         strf("violations = %ld, V: %.3e -> %.3e (factor %.1e)", rep.violations, V0,
              V_end, V_end / V0));

  const double err_end = rep.samples.back().err_norm;
  report(3, "convergence to the target equilibrium",
         rep.converged && err_end < 1e-3,
         strf("||m - r||(200) = %.3e, first below 1e-3 at t = %s", err_end,
              rep.t_converge ? strf("%.2f", *rep.t_converge).c_str() : "never"));
}

// 4: the three discrete lemma certificates.
void criterion_lemmas() {
  std::vector<double> res1, res2, dxs;
  for (const int n : {32, 64, 128, 256}) {
    const GridSpec grid(n, 1.0);
    res1.push_back(check_lemma1(lemma_test_field(grid)).residual);
    res2.push_back(check_lemma2(lemma_test_field(grid),
                                EquilibriumPoint(Vec3{1.0, 0.0, 0.0}))
                       .residual);
    dxs.push_back(grid.dx());
  }
  bool halves = true;
  for (std::size_t i = 1; i < res1.size(); ++i) {
    halves = halves && res1[i - 1] / res1[i] >= 2.0;
  }

  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < dxs.size(); ++i) {
    const double x = std::log(dxs[i]), y = std::log(res2[i]);
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
  }
  const double n = static_cast<double>(dxs.size());
  const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  std::mt19937_64 rng(20260817ull);
  double worst3 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    worst3 = std::max(worst3, check_lemma3(random_unit(rng), random_unit(rng)));
  }

  const bool ok = halves && order >= 1.7 && order <= 2.3 && worst3 <= 1.0 + 1e-12;
  report(4, "discrete lemma certificates", ok,
         strf("identity residual %.1e -> %.1e (halving %s), orthogonality order "
              "%.2f, max |m x r| = %.15f",
              res1.front(), res1.back(), halves ? "yes" : "no", order, worst3));
}

// 5: the two schemes agree on a smooth problem when euler is refined 100x.
void criterion_scheme_agreement() {
  const GridSpec grid(32, 1.0);
  const SimParams params(0.1, 0.25, 0.25, grid);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const Field m0 = perturbed_initial(grid, r, 0.005);
  const double T = 1.0;

  IntegratorConfig rk;
  rk.dt = resolve_dt(rk, grid.dx(), params.nu());
  IntegratorConfig eu;
  eu.scheme = Scheme::euler_projected;
  eu.dt = rk.dt / 100.0;

  SimulateOptions opts;
  opts.record_snapshots = true;
  opts.stride = 1 << 30;  // only the forced final sample matters
  const Trajectory a = simulate({0.0, m0}, params, r, std::nullopt, rk, T, opts);
  const Trajectory b = simulate({0.0, m0}, params, r, std::nullopt, eu, T, opts);
  const Field& fa = a.snapshots.back();
  const Field& fb = b.snapshots.back();
  double worst = 0.0;
  for (int j = 0; j < fa.nodes(); ++j) worst = std::max(worst, norm(fa[j] - fb[j]));
  report(5, "rk4 against 100x refined euler", worst <= 1e-6,
         strf("max node distance %.2e at t = 1 (rk4 dt %.2e, euler dt %.2e)", worst,
              rk.dt, eu.dt));
}

// 6: with no damping and no inputs the exchange energy is conserved.
void criterion_energy_conservation() {
  const GridSpec grid(64, 1.0);
  const SimParams params(0.0, 0.25, 0.25, grid);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const Field m0 = perturbed_initial(grid, r, 0.1);
  const auto energy = [](const Field& m) { return 0.5 * l2_norm_sq(diff_forward(m)); };
  const double e0 = energy(m0);

  SimulateOptions opts;
  opts.record_snapshots = true;
  opts.stride = 1 << 30;
  const Trajectory traj =
      simulate({0.0, m0}, params, std::nullopt, std::nullopt, IntegratorConfig{}, 10.0, opts);
  const double e1 = energy(traj.snapshots.back());
  const double drift = std::abs(e1 - e0) / e0;
  report(6, "exchange energy conservation without damping", drift <= 1e-4,
         strf("E: %.6e -> %.6e, relative drift %.2e", e0, e1, drift));
}

// 7: loops grow as the drive slows, along all three axes.
void criterion_hysteresis_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec grid(16, 1.0);
  const std::vector<double> omegas = {1.0, 0.1, 0.01};

  struct Case {
    Vec3 axis;
    int component;
    const char* label;
  };
  const Case cases[] = {{{1, 0, 0}, 1, "x"}, {{0, 1, 0}, 2, "y"}, {{0, 0, 1}, 3, "z"}};

  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    IntegratorConfig cfg;
    cfg.project = false;  // the drive is deliberately not tangent to the sphere
    const HysteresisSetup setup{SimParams(0.02, 0.25, 0.25, grid),
                                EquilibriumPoint(c.axis),
                                Field::uniform(grid, c.axis),
                                PeriodicInput(0.01, 1.0, c.component),
                                3,
                                1.0,
                                cfg};
    const auto entries = frequency_sweep(setup, omegas);
    std::vector<double> areas;
    for (const auto& e : entries) {
      if (!e.run || !e.run->settled) {
        ok = false;
        detail += strf("%s: run at omega %.2g failed; ", c.label, e.omega);
        continue;
      }
      areas.push_back(e.run->area);
    }
    if (areas.size() == omegas.size()) {
      const bool grows = areas[0] <= areas[1] && areas[1] <= areas[2] &&
                         areas[2] > 1.05 * areas[0];
      ok = ok && grows;
      detail += strf("%s: %.2e <= %.2e <= %.2e (x%.0f); ", c.label, areas[0], areas[1],
                     areas[2], areas[2] / areas[0]);
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 120.0;
  report(7, "loop area grows as the drive slows", ok,
         detail + strf("%.1f s", secs));
}

// 8: the admissibility window is enforced where parameters enter.
void criterion_admissibility() {
  const auto rejects = [](const std::string& text) {
    try {
      (void)parse_config(text);
      return false;
    } catch (const ConfigError&) {
      return true;
    }
  };
  const bool r1 = rejects("control.k = 0.6\n");  // f = k makes |f + k| = 1.2
  const bool r2 = rejects(
      "control.k = 0.3\ncontrol.f_rule = constant\ncontrol.f_value = 0.9\n");
  const bool r3 = rejects(
      "control.k = 0.25\ncontrol.f_rule = constant\ncontrol.f_value = -0.1\n");

  bool accepted = true;
  for (int i = 1; i <= 50; ++i) {
    const double k = i / 100.0;
    try {
      (void)SimParams(0.02, k, k, GridSpec(8, 1.0));
    } catch (const ConfigError&) {
      accepted = false;
    }
  }
  report(8, "gain admissibility window", r1 && r2 && r3 && accepted,
         strf("violators rejected %d/3, k = 0.01..0.50 with f = k all accepted: %s",
              int(r1) + int(r2) + int(r3), accepted ? "yes" : "no"));
}

// 9: the collinearity characterization returns exactly the two antipodes.
void criterion_collinearity() {
  std::mt19937_64 rng(871026ull);
  bool exact = true;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Vec3 r = random_unit(rng);
    while (std::abs(r.x) < 1e-3) r = random_unit(rng);
    const auto sols = solve_collinear(EquilibriumPoint(r));
    exact = exact && sols[0] == r && sols[1] == -1.0 * r;
    for (const Vec3& m : sols) {
      worst = std::max(worst, norm(cross(m, r)));
      exact = exact && std::abs(norm(m) - 1.0) <= 1e-12;
    }
  }
  report(9, "collinear equilibria are the target and its antipode",
         exact && worst <= 1e-14,
         strf("100 random targets, exact antipode pairs: %s, max residual %.1e",
              exact ? "yes" : "no", worst));
}

}  // namespace

int main() {
  std::printf("acceptance checks\n");
  criterion_sphere();
  criteria_decay_and_convergence();
  criterion_lemmas();
  criterion_scheme_agreement();
  criterion_energy_conservation();
  criterion_hysteresis_trend();
  criterion_admissibility();
  criterion_collinearity();
  if (failures == 0) {
    std::printf("all acceptance criteria hold\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
