#pragma once

#include <vector>

#include "llg/vec3.hpp"

namespace llg {

/// Uniform vertex-centred grid on [0, L]: nodes x_j = j * dx for
/// j = 0..cells, so both endpoints carry a node and dx * cells = L.
class GridSpec {
 public:
  GridSpec(int cells, double length);

  int cells() const { return cells_; }
  int nodes() const { return cells_ + 1; }
  double length() const { return length_; }
  double dx() const { return length_ / cells_; }
  double node_x(int j) const { return j * dx(); }

  bool operator==(const GridSpec&) const = default;

 private:
  int cells_;
  double length_;
};

/// Nodal field of 3-vectors over a GridSpec. `on_sphere` records that every
/// node is unit length to within 1e-12; operations that need the constraint
/// state it in their contract instead of re-checking per call.
struct Field {
  GridSpec grid;
  std::vector<Vec3> values;
  bool on_sphere = false;

  explicit Field(GridSpec g) : grid(g), values(g.nodes()) {}
  Field(GridSpec g, std::vector<Vec3> v);

  /// Constant field; flags on_sphere when |v| is unit to 1e-12.
  static Field uniform(GridSpec g, const Vec3& v);

  int nodes() const { return static_cast<int>(values.size()); }
  Vec3& operator[](int j) { return values[static_cast<std::size_t>(j)]; }
  const Vec3& operator[](int j) const {
    return values[static_cast<std::size_t>(j)];
  }

  bool operator==(const Field&) const = default;
};

/// Second-order centred Laplacian with mirror ghosts f_{-1} = f_1 and
/// f_{N+1} = f_{N-1}, which encodes the zero-slope boundary condition.
/// Needs at least 2 cells.
Field laplacian_neumann(const Field& f);

/// One-sided forward difference (f_{j+1} - f_j) / dx at nodes 0..N-1;
/// the final slot is zero.
Field diff_forward(const Field& f);

/// Composite trapezoid approximation of the integral of |f|^2 over [0, L].
double l2_norm_sq(const Field& f);

/// Nodewise projection onto the unit sphere. Throws BlowupError when a node
/// norm is non-finite or below 1e-8; the result is flagged on_sphere.
Field renormalize(const Field& f);

/// f - c at every node.
Field subtract_uniform(const Field& f, const Vec3& c);

/// Nodewise cross product a_j x b_j. Grids must match.
Field nodewise_cross(const Field& a, const Field& b);

/// max_j | |f_j| - 1 |, the worst deviation from the sphere constraint.
double max_norm_deviation(const Field& f);

namespace detail {
/// In-place unit projection shared by renormalize and the time stepper.
void project_nodes(std::vector<Vec3>& values);
}  // namespace detail

}  // namespace llg
