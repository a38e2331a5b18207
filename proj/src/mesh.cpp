#include "fcm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fcm {

RodMesh::RodMesh(double x0, double x1, int cells, BasisFamily family, int degree)
    : x0_(x0),
      x1_(x1),
      width_((x1 - x0) / cells),
      cells_(cells),
      family_(family),
      degree_(degree),
      bspline_(std::max(degree, 1), std::max(cells, 1)) {
  if (!(x0 < x1)) throw std::invalid_argument("RodMesh: empty domain");
  if (cells < 1) throw std::invalid_argument("RodMesh: need at least one cell");
  if (degree < 1) throw std::invalid_argument("RodMesh: degree must be >= 1");
  dof_count_ = family == BasisFamily::PVersion
                   ? (cells + 1) + cells * (degree - 1)
                   : bspline_.function_count();
}

Box<1> RodMesh::cell_box(int cell) const {
  return make_interval(x0_ + cell * width_, x0_ + (cell + 1) * width_);
}

int RodMesh::cell_of(double x) const {
  const int c = static_cast<int>(std::floor((x - x0_) / width_));
  return std::clamp(c, 0, cells_ - 1);
}

void RodMesh::evaluate_cell(int cell, double t, LocalBasis1d& out) const {
  if (family_ == BasisFamily::PVersion) {
    const BasisValues1d b = eval_p_version_1d(degree_, 2.0 * t - 1.0);
    const double dxi_dx = 2.0 / width_;
    out.count = b.count;
    out.global[0] = cell;
    out.global[1] = cell + 1;
    for (int j = 2; j <= degree_; ++j) {
      out.global[j] = (cells_ + 1) + cell * (degree_ - 1) + (j - 2);
    }
    for (int a = 0; a < b.count; ++a) {
      out.value[a] = b.value[a];
      out.ddx[a] = b.deriv[a] * dxi_dx;
    }
  } else {
    const auto sv = bspline_.evaluate(cell + t);
    const double dxi_dx = cells_ / (x1_ - x0_);
    out.count = sv.basis.count;
    for (int a = 0; a < sv.basis.count; ++a) {
      out.global[a] = sv.first_function + a;
      out.value[a] = sv.basis.value[a];
      out.ddx[a] = sv.basis.deriv[a] * dxi_dx;
    }
  }
}

int RodMesh::left_boundary_dof() const { return 0; }

int RodMesh::right_boundary_dof() const {
  return family_ == BasisFamily::PVersion ? cells_ : dof_count_ - 1;
}

double RodMesh::field_value(std::span<const double> coefficients, double x) const {
  const int cell = cell_of(x);
  LocalBasis1d b;
  evaluate_cell(cell, (x - (x0_ + cell * width_)) / width_, b);
  double v = 0.0;
  for (int a = 0; a < b.count; ++a) v += coefficients[b.global[a]] * b.value[a];
  return v;
}

double RodMesh::field_derivative(std::span<const double> coefficients, double x) const {
  const int cell = cell_of(x);
  LocalBasis1d b;
  evaluate_cell(cell, (x - (x0_ + cell * width_)) / width_, b);
  double v = 0.0;
  for (int a = 0; a < b.count; ++a) v += coefficients[b.global[a]] * b.ddx[a];
  return v;
}

GridMesh2d::GridMesh2d(Box<2> rect, int nx, int ny, BasisFamily family, int degree,
                       TensorSpace space)
    : rect_(rect),
      nx_(nx),
      ny_(ny),
      family_(family),
      degree_(degree),
      space_(space),
      bx_(std::max(degree, 1), std::max(nx, 1)),
      by_(std::max(degree, 1), std::max(ny, 1)) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("GridMesh2d: empty grid");
  if (degree < 1) throw std::invalid_argument("GridMesh2d: degree must be >= 1");
  if (family_ == BasisFamily::PVersion) {
    modes_ = tensor_modes_2d(degree, space);
    const int edge_modes = degree - 1;
    h_edge_offset_ = (nx_ + 1) * (ny_ + 1);
    v_edge_offset_ = h_edge_offset_ + nx_ * (ny_ + 1) * edge_modes;
    internal_offset_ = v_edge_offset_ + (nx_ + 1) * ny_ * edge_modes;
    internal_per_cell_ = 0;
    for (const auto& m : modes_) {
      if (m.kind == TensorMode::Kind::Internal) ++internal_per_cell_;
    }
    dof_count_ = internal_offset_ + nx_ * ny_ * internal_per_cell_;
  } else {
    dof_count_ = bx_.function_count() * by_.function_count();
  }
}

Box<2> GridMesh2d::cell_box(int cell) const {
  const int cx = cell % nx_;
  const int cy = cell / nx_;
  const double wx = (rect_.hi[0] - rect_.lo[0]) / nx_;
  const double wy = (rect_.hi[1] - rect_.lo[1]) / ny_;
  return make_rect(rect_.lo[0] + cx * wx, rect_.lo[1] + cy * wy,
                   rect_.lo[0] + (cx + 1) * wx, rect_.lo[1] + (cy + 1) * wy);
}

int GridMesh2d::vertex_dof(int ix, int iy) const { return iy * (nx_ + 1) + ix; }

void GridMesh2d::evaluate_cell(int cell, double tx, double ty, LocalBasis2d& out) const {
  const int cx = cell % nx_;
  const int cy = cell / nx_;
  const double wx = (rect_.hi[0] - rect_.lo[0]) / nx_;
  const double wy = (rect_.hi[1] - rect_.lo[1]) / ny_;

  if (family_ == BasisFamily::PVersion) {
    const BasisValues1d fx = eval_p_version_1d(degree_, 2.0 * tx - 1.0);
    const BasisValues1d fy = eval_p_version_1d(degree_, 2.0 * ty - 1.0);
    const double dxi = 2.0 / wx;
    const double deta = 2.0 / wy;
    const int edge_modes = degree_ - 1;
    out.count = static_cast<int>(modes_.size());
    int internal_seen = 0;
    for (int m = 0; m < out.count; ++m) {
      const TensorMode& mode = modes_[m];
      int g = -1;
      switch (mode.kind) {
        case TensorMode::Kind::Corner:
          g = vertex_dof(cx + mode.i, cy + mode.j);
          break;
        case TensorMode::Kind::EdgeBottom:
        case TensorMode::Kind::EdgeTop: {
          const int row = cy + mode.j;
          g = h_edge_offset_ + (row * nx_ + cx) * edge_modes + (mode.i - 2);
          break;
        }
        case TensorMode::Kind::EdgeLeft:
        case TensorMode::Kind::EdgeRight: {
          const int col = cx + mode.i;
          g = v_edge_offset_ + (cy * (nx_ + 1) + col) * edge_modes + (mode.j - 2);
          break;
        }
        case TensorMode::Kind::Internal:
          g = internal_offset_ + cell * internal_per_cell_ + internal_seen++;
          break;
      }
      out.global[m] = g;
      out.value[m] = fx.value[mode.i] * fy.value[mode.j];
      out.ddx[m] = fx.deriv[mode.i] * dxi * fy.value[mode.j];
      out.ddy[m] = fx.value[mode.i] * fy.deriv[mode.j] * deta;
    }
  } else {
    const auto sx = bx_.evaluate(cx + tx);
    const auto sy = by_.evaluate(cy + ty);
    const double dxi = nx_ / (rect_.hi[0] - rect_.lo[0]);
    const double deta = ny_ / (rect_.hi[1] - rect_.lo[1]);
    const int n1 = sx.basis.count;
    const int n2 = sy.basis.count;
    const int funcs_x = bx_.function_count();
    out.count = n1 * n2;
    int m = 0;
    for (int b = 0; b < n2; ++b) {
      for (int a = 0; a < n1; ++a, ++m) {
        out.global[m] = (sy.first_function + b) * funcs_x + (sx.first_function + a);
        out.value[m] = sx.basis.value[a] * sy.basis.value[b];
        out.ddx[m] = sx.basis.deriv[a] * dxi * sy.basis.value[b];
        out.ddy[m] = sx.basis.value[a] * sy.basis.deriv[b] * deta;
      }
    }
  }
}

std::vector<int> GridMesh2d::face_dofs(Face2d face) const {
  std::vector<int> dofs;
  const int edge_modes = degree_ - 1;
  if (family_ == BasisFamily::PVersion) {
    switch (face) {
      case Face2d::Left:
      case Face2d::Right: {
        const int ix = face == Face2d::Left ? 0 : nx_;
        for (int iy = 0; iy <= ny_; ++iy) dofs.push_back(vertex_dof(ix, iy));
        for (int iy = 0; iy < ny_; ++iy) {
          for (int k = 0; k < edge_modes; ++k) {
            dofs.push_back(v_edge_offset_ + (iy * (nx_ + 1) + ix) * edge_modes + k);
          }
        }
        break;
      }
      case Face2d::Bottom:
      case Face2d::Top: {
        const int iy = face == Face2d::Bottom ? 0 : ny_;
        for (int ix = 0; ix <= nx_; ++ix) dofs.push_back(vertex_dof(ix, iy));
        for (int ix = 0; ix < nx_; ++ix) {
          for (int k = 0; k < edge_modes; ++k) {
            dofs.push_back(h_edge_offset_ + (iy * nx_ + ix) * edge_modes + k);
          }
        }
        break;
      }
    }
  } else {
    const int fx = bx_.function_count();
    const int fy = by_.function_count();
    switch (face) {
      case Face2d::Left:
        for (int j = 0; j < fy; ++j) dofs.push_back(j * fx);
        break;
      case Face2d::Right:
        for (int j = 0; j < fy; ++j) dofs.push_back(j * fx + fx - 1);
        break;
      case Face2d::Bottom:
        for (int i = 0; i < fx; ++i) dofs.push_back(i);
        break;
      case Face2d::Top:
        for (int i = 0; i < fx; ++i) dofs.push_back((fy - 1) * fx + i);
        break;
    }
  }
  return dofs;
}

double GridMesh2d::field_value(std::span<const double> coefficients, double x,
                               double y) const {
  const double wx = (rect_.hi[0] - rect_.lo[0]) / nx_;
  const double wy = (rect_.hi[1] - rect_.lo[1]) / ny_;
  const int cx = std::clamp(static_cast<int>(std::floor((x - rect_.lo[0]) / wx)), 0,
                            nx_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor((y - rect_.lo[1]) / wy)), 0,
                            ny_ - 1);
  static thread_local LocalBasis2d b;
  evaluate_cell(cell_index(cx, cy), (x - (rect_.lo[0] + cx * wx)) / wx,
                (y - (rect_.lo[1] + cy * wy)) / wy, b);
  double v = 0.0;
  for (int a = 0; a < b.count; ++a) v += coefficients[b.global[a]] * b.value[a];
  return v;
}

}  // namespace fcm
