#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "llg/errors.hpp"
#include "llg/grid_field.hpp"

using namespace llg;

TEST_CASE("grid spec exposes nodes, spacing and coordinates") {
  const GridSpec g(64, 1.0);
  CHECK_EQ(g.cells(), 64);
  CHECK_EQ(g.nodes(), 65);
  CHECK_EQ(g.dx(), doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK_EQ(g.node_x(0), 0.0);
  CHECK_EQ(g.node_x(64), doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("grid spec rejects degenerate shapes") {
  CHECK_THROWS_AS(GridSpec(0, 1.0), ConfigError);
  CHECK_THROWS_AS(GridSpec(-4, 1.0), ConfigError);
  CHECK_THROWS_AS(GridSpec(8, 0.0), ConfigError);
  CHECK_THROWS_AS(GridSpec(8, -2.0), ConfigError);
}

TEST_CASE("field construction checks node count and sphere flag") {
  const GridSpec g(4, 1.0);
  CHECK_THROWS_AS(Field(g, std::vector<Vec3>(3)), std::invalid_argument);
  const Field unit = Field::uniform(g, {0.0, 0.0, 1.0});
  CHECK(unit.on_sphere);
  const Field off = Field::uniform(g, {0.0, 0.0, 2.0});
  CHECK_FALSE(off.on_sphere);
}

TEST_CASE("laplacian of a constant field vanishes exactly") {
  const GridSpec g(16, 2.0);
  const Field f = Field::uniform(g, {0.3, -0.4, 0.5});
  const Field lap = laplacian_neumann(f);
  for (int j = 0; j < lap.nodes(); ++j) {
    CHECK_EQ(lap[j].x, 0.0);
    CHECK_EQ(lap[j].y, 0.0);
    CHECK_EQ(lap[j].z, 0.0);
  }
}

TEST_CASE("laplacian matches the mirrored three node stencil by hand") {
  // nodes (0,0,0), (1,0,0), (0,0,0) on [0,1] with dx = 1/2
  const GridSpec g(2, 1.0);
  Field f(g);
  f[1] = {1.0, 0.0, 0.0};
  const Field lap = laplacian_neumann(f);
  CHECK_EQ(lap[0].x, doctest::Approx(8.0).epsilon(1e-15));
  CHECK_EQ(lap[1].x, doctest::Approx(-8.0).epsilon(1e-15));
  CHECK_EQ(lap[2].x, doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("laplacian is second order accurate on a slope free profile") {
  const double L = 1.0;
  const GridSpec g(64, L);
  Field f(g);
  const double c = std::numbers::pi / L;
  for (int j = 0; j < f.nodes(); ++j) f[j] = {std::cos(c * g.node_x(j)), 0.0, 0.0};
  const Field lap = laplacian_neumann(f);
  double worst = 0.0;
  for (int j = 0; j < f.nodes(); ++j) {
    worst = std::max(worst, std::abs(lap[j].x + c * c * std::cos(c * g.node_x(j))));
  }
  CHECK_LT(worst, 10.0 * g.dx() * g.dx());
}

TEST_CASE("laplacian needs at least two cells") {
  const GridSpec g(1, 1.0);
  CHECK_THROWS_AS(laplacian_neumann(Field(g)), std::invalid_argument);
}

TEST_CASE("forward difference of a linear ramp is exact, last slot zero") {
  const GridSpec g(8, 2.0);
  Field f(g);
  for (int j = 0; j < f.nodes(); ++j) f[j] = {3.0 * g.node_x(j), 0.0, -g.node_x(j)};
  const Field d = diff_forward(f);
  for (int j = 0; j + 1 < f.nodes(); ++j) {
    CHECK_EQ(d[j].x, doctest::Approx(3.0).epsilon(1e-14));
    CHECK_EQ(d[j].z, doctest::Approx(-1.0).epsilon(1e-14));
  }
  CHECK_EQ(d[f.nodes() - 1].x, 0.0);
  CHECK_EQ(d[f.nodes() - 1].z, 0.0);
}

TEST_CASE("trapezoid norm of a constant unit field equals the interval length") {
  const Field f = Field::uniform(GridSpec(64, 1.0), {1.0, 0.0, 0.0});
  CHECK_EQ(l2_norm_sq(f), 1.0);
  const Field f2 = Field::uniform(GridSpec(10, 2.5), {0.0, 1.0, 0.0});
  CHECK_EQ(l2_norm_sq(f2), doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("trapezoid quadrature integrates sin^2 exactly on a uniform grid") {
  const GridSpec g(128, 1.0);
  Field f(g);
  for (int j = 0; j < f.nodes(); ++j) {
    f[j] = {std::sin(std::numbers::pi * g.node_x(j)), 0.0, 0.0};
  }
  CHECK_EQ(l2_norm_sq(f), doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("renormalize projects nodes onto the unit sphere") {
  const GridSpec g(2, 1.0);
  Field f(g);
  for (int j = 0; j < f.nodes(); ++j) f[j] = {1.0, 1.0, 1.0};
  const Field p = renormalize(f);
  CHECK(p.on_sphere);
  const double c = 0.5773502691896258;
  for (int j = 0; j < p.nodes(); ++j) {
    CHECK_EQ(p[j].x, doctest::Approx(c).epsilon(1e-15));
    CHECK_EQ(p[j].y, doctest::Approx(c).epsilon(1e-15));
    CHECK_EQ(p[j].z, doctest::Approx(c).epsilon(1e-15));
  }
}

TEST_CASE("renormalize rejects collapsed and non finite nodes") {
  const GridSpec g(2, 1.0);
  Field tiny(g);
  tiny[0] = {1.0, 0.0, 0.0};
  tiny[1] = {1e-12, 0.0, 0.0};
  tiny[2] = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(renormalize(tiny), BlowupError);

  Field bad(g);
  bad[0] = {1.0, 0.0, 0.0};
  bad[1] = {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
  bad[2] = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(renormalize(bad), BlowupError);
}

TEST_CASE("subtract_uniform shifts every node and clears the sphere flag") {
  const GridSpec g(4, 1.0);
  const Field f = Field::uniform(g, {1.0, 0.0, 0.0});
  const Field d = subtract_uniform(f, {1.0, 0.0, 0.0});
  CHECK_FALSE(d.on_sphere);
  for (int j = 0; j < d.nodes(); ++j) CHECK_EQ(norm(d[j]), 0.0);
}

TEST_CASE("nodewise cross product matches the pinned example") {
  const GridSpec g(2, 1.0);
  const Field a = Field::uniform(g, {1.0, 2.0, 3.0});
  const Field b = Field::uniform(g, {4.0, 5.0, 6.0});
  const Field c = nodewise_cross(a, b);
  for (int j = 0; j < c.nodes(); ++j) {
    CHECK_EQ(c[j].x, -3.0);
    CHECK_EQ(c[j].y, 6.0);
    CHECK_EQ(c[j].z, -3.0);
  }
  CHECK_THROWS_AS(nodewise_cross(a, Field::uniform(GridSpec(3, 1.0), {0, 0, 1})),
                  std::invalid_argument);
}

TEST_CASE("max_norm_deviation reports the worst unit norm defect") {
  const GridSpec g(4, 1.0);
  Field f = Field::uniform(g, {1.0, 0.0, 0.0});
  CHECK_EQ(max_norm_deviation(f), 0.0);
  f[2] = {1.5, 0.0, 0.0};
  CHECK_EQ(max_norm_deviation(f), doctest::Approx(0.5).epsilon(1e-15));
}
