#include "llg/grid_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "llg/errors.hpp"

namespace llg {

namespace {
constexpr double kUnitTol = 1e-12;
constexpr double kDegenerateNorm = 1e-8;
}  // namespace

GridSpec::GridSpec(int cells, double length) : cells_(cells), length_(length) {
  if (cells < 1) {
    throw ConfigError("grid must have at least 1 cell, got " +
                      std::to_string(cells));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite");
  }
}

Field::Field(GridSpec g, std::vector<Vec3> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != g.nodes()) {
    throw std::invalid_argument("field needs one value per node: expected " +
                                std::to_string(g.nodes()) + ", got " +
                                std::to_string(values.size()));
  }
}

Field Field::uniform(GridSpec g, const Vec3& v) {
  Field f(g);
  for (auto& node : f.values) node = v;
  f.on_sphere = std::abs(norm(v) - 1.0) <= kUnitTol;
  return f;
}

Field laplacian_neumann(const Field& f) {
  const int n = f.grid.cells();
  if (n < 2) {
    throw std::invalid_argument(
        "laplacian_neumann needs at least 2 cells, got " + std::to_string(n));
  }
  const double inv_dx2 = 1.0 / (f.grid.dx() * f.grid.dx());
  Field out(f.grid);
  out[0] = 2.0 * inv_dx2 * (f[1] - f[0]);
  for (int j = 1; j < n; ++j) {
    out[j] = inv_dx2 * (f[j - 1] - 2.0 * f[j] + f[j + 1]);
  }
  out[n] = 2.0 * inv_dx2 * (f[n - 1] - f[n]);
  return out;
}

Field diff_forward(const Field& f) {
  const int n = f.grid.cells();
  const double inv_dx = 1.0 / f.grid.dx();
  Field out(f.grid);
  for (int j = 0; j < n; ++j) {
    out[j] = inv_dx * (f[j + 1] - f[j]);
  }
  out[n] = Vec3{};
  return out;
}

double l2_norm_sq(const Field& f) {
  const int n = f.grid.cells();
  const double dx = f.grid.dx();
  double sum = 0.5 * (norm_sq(f[0]) + norm_sq(f[n]));
  for (int j = 1; j < n; ++j) {
    sum += norm_sq(f[j]);
  }
  return dx * sum;
}

namespace detail {

void project_nodes(std::vector<Vec3>& values) {
  for (auto& v : values) {
    const double n2 = norm_sq(v);
    if (!std::isfinite(n2)) {
      throw BlowupError("field stopped being finite");
    }
    const double n = std::sqrt(n2);
    if (n < kDegenerateNorm) {
      throw BlowupError("node norm collapsed below 1e-8");
    }
    v *= 1.0 / n;
  }
}

}  // namespace detail

Field renormalize(const Field& f) {
  Field out = f;
  detail::project_nodes(out.values);
  out.on_sphere = true;
  return out;
}

Field subtract_uniform(const Field& f, const Vec3& c) {
  Field out = f;
  for (auto& v : out.values) v -= c;
  out.on_sphere = false;
  return out;
}

Field nodewise_cross(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) {
    throw std::invalid_argument("nodewise_cross: grids differ");
  }
  Field out(a.grid);
  for (int j = 0; j < a.nodes(); ++j) {
    out[j] = cross(a[j], b[j]);
  }
  return out;
}

double max_norm_deviation(const Field& f) {
  double worst = 0.0;
  for (const auto& v : f.values) {
    worst = std::max(worst, std::abs(norm(v) - 1.0));
  }
  return worst;
}

}  // namespace llg
