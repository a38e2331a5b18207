#ifndef FCM_MESH_HPP
#define FCM_MESH_HPP

#include <span>
#include <vector>

#include "fcm/basis.hpp"
#include "fcm/geometry.hpp"

namespace fcm {

/// Cell-local basis data in physical coordinates: global dof indices, values
/// and physical-space derivatives of the nonzero functions.
struct LocalBasis1d {
  int count = 0;
  std::array<int, kMaxFunctions1d> global{};
  std::array<double, kMaxFunctions1d> value{};
  std::array<double, kMaxFunctions1d> ddx{};
};

/// Structured 1D grid of equal cells on [x0, x1] carrying either the
/// hierarchic p-version basis (C0 across cells) or a clamped uniform B-spline
/// patch (one knot span per cell, C^(p-1) across spans). Shared functions
/// carry identical global indices in adjacent cells; the parametric-to-
/// physical map is linear per cell.
class RodMesh {
 public:
  RodMesh(double x0, double x1, int cells, BasisFamily family, int degree);

  BasisFamily family() const { return family_; }
  int degree() const { return degree_; }
  int cell_count() const { return cells_; }
  int dof_count() const { return dof_count_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double cell_width() const { return width_; }
  Box<1> cell_box(int cell) const;
  int cell_of(double x) const;

  /// Evaluates the nonzero functions at unit coordinate t in [0,1] within the
  /// cell. Derivatives are with respect to the physical coordinate.
  void evaluate_cell(int cell, double t, LocalBasis1d& out) const;

  /// Dof carrying the solution value on an embedding face (the nodal mode for
  /// the p-version, the clamped end function for B-splines).
  int left_boundary_dof() const;
  int right_boundary_dof() const;

  double field_value(std::span<const double> coefficients, double x) const;
  double field_derivative(std::span<const double> coefficients, double x) const;

 private:
  double x0_, x1_, width_;
  int cells_;
  BasisFamily family_;
  int degree_;
  int dof_count_;
  BsplineBasis1d bspline_;
};

enum class Face2d { Left, Right, Bottom, Top };

struct LocalBasis2d {
  int count = 0;
  std::array<int, kMaxFunctions2d> global{};
  std::array<double, kMaxFunctions2d> value{};
  std::array<double, kMaxFunctions2d> ddx{};
  std::array<double, kMaxFunctions2d> ddy{};
};

/// Structured tensor grid of nx * ny cells on a rectangle with a 2D basis:
/// tensor/trunk p-version or a tensor-product clamped B-spline patch.
class GridMesh2d {
 public:
  GridMesh2d(Box<2> rect, int nx, int ny, BasisFamily family, int degree,
             TensorSpace space = TensorSpace::Trunk);

  BasisFamily family() const { return family_; }
  int degree() const { return degree_; }
  TensorSpace space() const { return space_; }
  int cells_x() const { return nx_; }
  int cells_y() const { return ny_; }
  int cell_count() const { return nx_ * ny_; }
  int dof_count() const { return dof_count_; }
  const Box<2>& rect() const { return rect_; }
  Box<2> cell_box(int cell) const;

  void evaluate_cell(int cell, double tx, double ty, LocalBasis2d& out) const;

  /// All dofs whose functions are nonzero on the given embedding face.
  std::vector<int> face_dofs(Face2d face) const;

  double field_value(std::span<const double> coefficients, double x, double y) const;

 private:
  int vertex_dof(int ix, int iy) const;
  int cell_index(int cx, int cy) const { return cy * nx_ + cx; }

  Box<2> rect_;
  int nx_, ny_;
  BasisFamily family_;
  int degree_;
  TensorSpace space_;
  int dof_count_ = 0;
  std::vector<TensorMode> modes_;  // p-version local mode list
  // p-version global layout: vertices, horizontal-edge modes, vertical-edge
  // modes, then per-cell internal modes.
  int h_edge_offset_ = 0;
  int v_edge_offset_ = 0;
  int internal_offset_ = 0;
  int internal_per_cell_ = 0;
  BsplineBasis1d bx_;
  BsplineBasis1d by_;
};

}  // namespace fcm

#endif
