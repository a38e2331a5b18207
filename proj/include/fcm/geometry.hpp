#ifndef FCM_GEOMETRY_HPP
#define FCM_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace fcm {

/// Axis-aligned box, the basic cell/bounds primitive (an interval for Dim=1).
template <int Dim>
struct Box {
  std::array<double, Dim> lo{};
  std::array<double, Dim> hi{};

  bool contains(const std::array<double, Dim>& x, double tol = 0.0) const {
    for (int d = 0; d < Dim; ++d) {
      if (x[d] < lo[d] - tol || x[d] > hi[d] + tol) return false;
    }
    return true;
  }

  std::array<double, Dim> center() const {
    std::array<double, Dim> c{};
    for (int d = 0; d < Dim; ++d) c[d] = 0.5 * (lo[d] + hi[d]);
    return c;
  }

  double measure() const {
    double m = 1.0;
    for (int d = 0; d < Dim; ++d) m *= hi[d] - lo[d];
    return m;
  }

  /// Bisection child, index bit d selects the upper half along axis d.
  Box child(int index) const {
    Box c;
    for (int d = 0; d < Dim; ++d) {
      const double mid = 0.5 * (lo[d] + hi[d]);
      if (index >> d & 1) {
        c.lo[d] = mid;
        c.hi[d] = hi[d];
      } else {
        c.lo[d] = lo[d];
        c.hi[d] = mid;
      }
    }
    return c;
  }
};

inline Box<1> make_interval(double a, double b) { return Box<1>{{a}, {b}}; }
inline Box<2> make_rect(double x0, double y0, double x1, double y1) {
  return Box<2>{{x0, y0}, {x1, y1}};
}

/// Three-valued point classification used by the implicit region tree.
/// Boundary points are resolved to "physical" at the very end, so ties
/// consistently favor the physical domain.
enum class Location { Outside, Boundary, Inside };

template <int Dim>
class Region {
 public:
  virtual ~Region() = default;
  virtual Location locate(const std::array<double, Dim>& x) const = 0;
};

template <int Dim>
using RegionPtr = std::shared_ptr<const Region<Dim>>;

namespace regions {

RegionPtr<1> interval(double a, double b);
RegionPtr<2> circle(double cx, double cy, double r);
RegionPtr<2> rectangle(double x0, double y0, double x1, double y1);
/// Half-plane nx*x + ny*y <= c.
RegionPtr<2> half_plane(double nx, double ny, double c);

template <int Dim>
RegionPtr<Dim> box_region(const Box<Dim>& b);

RegionPtr<1> region_union(std::vector<RegionPtr<1>> parts);
RegionPtr<2> region_union(std::vector<RegionPtr<2>> parts);
RegionPtr<1> region_intersection(std::vector<RegionPtr<1>> parts);
RegionPtr<2> region_intersection(std::vector<RegionPtr<2>> parts);
RegionPtr<1> region_complement(RegionPtr<1> part);
RegionPtr<2> region_complement(RegionPtr<2> part);

/// Pixel-grid region: a point is inside iff the pixel containing it holds 1.
/// Pixels are half-open; points on the upper bounds fall into the last pixel.
/// Row 0 is the bottom row of the grid.
class BitmapRegion final : public Region<2> {
 public:
  BitmapRegion(std::vector<uint8_t> values, int columns, int rows, Box<2> bounds);

  Location locate(const std::array<double, 2>& x) const override;

  int columns() const { return columns_; }
  int rows() const { return rows_; }
  uint8_t pixel(int column, int row) const { return values_[row * columns_ + column]; }
  Box<2> pixel_box(int column, int row) const;
  const Box<2>& bounds() const { return bounds_; }

 private:
  std::vector<uint8_t> values_;
  int columns_ = 0;
  int rows_ = 0;
  Box<2> bounds_;
};

}  // namespace regions

/// Sampling rule for cut detection: the cell corners plus an interior lattice
/// of interior_per_axis points per direction.
struct ProbeRule {
  int interior_per_axis = 4;

  static ProbeRule for_degree(int degree) { return ProbeRule{degree + 2}; }
};

/// Embedding domain split into a physical part and a penalized fictitious
/// rest. Immutable after construction and safe for concurrent queries.
template <int Dim>
class EmbeddedGeometry {
 public:
  EmbeddedGeometry(Box<Dim> embedding_bounds, RegionPtr<Dim> physical_region,
                   int alpha_exponent);

  const Box<Dim>& bounds() const { return bounds_; }
  int alpha_exponent() const { return alpha_exponent_; }
  double fictitious_alpha() const { return fictitious_alpha_; }

  /// True iff the point lies in the physical region (boundary counts as
  /// physical). No bounds check; used by hot loops on known-in-bounds points.
  bool is_physical(const std::array<double, Dim>& x) const {
    return physical_region_->locate(x) != Location::Outside;
  }

  /// Material penalization factor: 1 on the physical region, 10^-q elsewhere.
  /// The point must lie within the embedding bounds.
  double alpha_at(const std::array<double, Dim>& x) const {
    if (!bounds_.contains(x, kBoundsTolerance)) {
      throw std::domain_error("alpha_at: point outside the embedding bounds");
    }
    return is_physical(x) ? 1.0 : fictitious_alpha_;
  }

  /// True iff the probe set of the cell contains both classifications.
  bool is_cut(const Box<Dim>& cell, const ProbeRule& probe = ProbeRule{}) const;

 private:
  static constexpr double kBoundsTolerance = 1e-12;

  Box<Dim> bounds_;
  RegionPtr<Dim> physical_region_;
  int alpha_exponent_;
  double fictitious_alpha_;
};

/// Builds a 2D geometry from a pixel grid mapped onto `bounds`.
/// `grid[row][column]` with row 0 at the bottom; 1 marks physical material.
EmbeddedGeometry<2> geometry_from_bitmap(const std::vector<std::vector<uint8_t>>& grid,
                                         const Box<2>& bounds, int alpha_exponent);

extern template class EmbeddedGeometry<1>;
extern template class EmbeddedGeometry<2>;

}  // namespace fcm

#endif
