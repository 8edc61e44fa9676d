#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "llg/dynamics.hpp"
#include "llg/grid_field.hpp"
#include "llg/lyapunov.hpp"

using namespace llg;

TEST_CASE("energy of a tilted constant state by hand") {
  // |m - r|^2 = 2 everywhere, gradient term zero: V = f/2 * 2 = 0.25
  const GridSpec g(64, 1.0);
  const Field m = Field::uniform(g, {0.0, 1.0, 0.0});
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  CHECK_EQ(lyapunov_V(m, r, 0.25), 0.25);
}

TEST_CASE("gradient part of the energy is positive for a bent field") {
  const GridSpec g(64, 1.0);
  const Field m = lemma_test_field(g);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const double with_grad = lyapunov_V(m, r, 0.25);
  CHECK_GT(with_grad, 0.0);
}

TEST_CASE("decay bound for the tilted constant state by hand") {
  // m x (m - r) = (0,0,1) everywhere, so bound = -nu k f
  const GridSpec g(64, 1.0);
  const Field m = Field::uniform(g, {0.0, 1.0, 0.0});
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  CHECK_EQ(decay_bound(m, r, 0.02, 0.25, 0.25),
           doctest::Approx(-0.02 * 0.25 * 0.25).epsilon(1e-15));
  CHECK_LE(decay_bound(m, r, 0.02, 0.25, 0.25), 0.0);
}

TEST_CASE("difference quotient of an exponential is close to its derivative") {
  LyapunovSample a, b;
  a.t = 1.0;
  a.V = std::exp(-a.t);
  b.t = 1.01;
  b.V = std::exp(-b.t);
  const double est = dVdt_estimate(a, b);
  const double exact = (b.V - a.V) / (b.t - a.t);
  CHECK_EQ(est, doctest::Approx(exact).epsilon(1e-12));
  CHECK_EQ(est, doctest::Approx(-std::exp(-1.0)).epsilon(1e-2));
  CHECK_THROWS_AS(dVdt_estimate(a, a), std::invalid_argument);
}

TEST_CASE("discretization slack grows with step, spacing and energy scale") {
  CHECK_EQ(decay_tolerance(1e-3, 1.0 / 64, 0.0),
           doctest::Approx(10.0 * (1e-6 + 1.0 / 4096)).epsilon(1e-12));
  CHECK_GT(decay_tolerance(1e-3, 1.0 / 64, 9.0), decay_tolerance(1e-3, 1.0 / 64, 0.0));
}

TEST_CASE("the bent reference field is a legal test subject") {
  const GridSpec g(64, 1.0);
  const Field m = lemma_test_field(g);
  CHECK(m.on_sphere);
  CHECK_LT(max_norm_deviation(m), 1e-14);
}

TEST_CASE("derivative identity residual shrinks when the grid is refined") {
  const double coarse = check_lemma1(lemma_test_field(GridSpec(32, 1.0))).residual;
  const double fine = check_lemma1(lemma_test_field(GridSpec(64, 1.0))).residual;
  CHECK_GT(coarse, 0.0);
  CHECK_LT(fine, coarse / 2.0);
}

TEST_CASE("integral orthogonality residual shrinks when the grid is refined") {
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const double coarse = check_lemma2(lemma_test_field(GridSpec(32, 1.0)), r).residual;
  const double fine = check_lemma2(lemma_test_field(GridSpec(64, 1.0)), r).residual;
  CHECK_GT(coarse, 0.0);
  CHECK_LT(fine, coarse / 2.0);
}

TEST_CASE("cross products of unit vectors never leave the unit ball") {
  CHECK_EQ(check_lemma3({1, 0, 0}, {0, 1, 0}), 1.0);
  CHECK_EQ(check_lemma3({1, 0, 0}, {1, 0, 0}), 0.0);
  CHECK_THROWS_AS(check_lemma3({2, 0, 0}, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("gain pair admissibility table: f first, k second") {
  CHECK(f_admissible(0.25, 0.25));
  CHECK(f_admissible(0.5, 0.5));
  CHECK(f_admissible(0.1, 0.9));
  CHECK_FALSE(f_admissible(0.0, 0.25));
  CHECK_FALSE(f_admissible(-0.5, 0.25));
  CHECK_FALSE(f_admissible(0.6, 0.6));
  CHECK_FALSE(f_admissible(0.8, 0.25));
}

TEST_CASE("a sample captures the state of the decay certificate") {
  const GridSpec g(32, 1.0);
  const Field m = lemma_test_field(g);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const LyapunovSample s = make_sample(2.5, m, r, 0.02, 0.25, 0.25);
  CHECK_EQ(s.t, 2.5);
  CHECK_GT(s.V, 0.0);
  CHECK_GT(s.err_norm, 0.0);
  CHECK_GE(s.cross_h_norm_sq, 0.0);
  CHECK_LE(s.bound, 0.0);
  CHECK_EQ(s.dVdt_est, 0.0);
  CHECK_EQ(s.V, lyapunov_V(m, r, 0.25));
  CHECK_EQ(s.bound, decay_bound(m, r, 0.02, 0.25, 0.25));
}
