#include "fcm/geometry.hpp"

#include <algorithm>

namespace fcm {
namespace regions {
namespace {

// Signed-distance style primitives evaluated with a small tolerance band so
// that points on an interface are reported as Boundary.
constexpr double kBoundaryTol = 1e-13;

Location from_signed(double s) {
  if (s < -kBoundaryTol) return Location::Inside;
  if (s > kBoundaryTol) return Location::Outside;
  return Location::Boundary;
}

class Interval final : public Region<1> {
 public:
  Interval(double a, double b) : a_(a), b_(b) {}
  Location locate(const std::array<double, 1>& x) const override {
    return from_signed(std::max(a_ - x[0], x[0] - b_));
  }

 private:
  double a_, b_;
};

class Circle final : public Region<2> {
 public:
  Circle(double cx, double cy, double r) : cx_(cx), cy_(cy), r_(r) {}
  Location locate(const std::array<double, 2>& x) const override {
    return from_signed(std::hypot(x[0] - cx_, x[1] - cy_) - r_);
  }

 private:
  double cx_, cy_, r_;
};

class Rectangle final : public Region<2> {
 public:
  Rectangle(Box<2> b) : box_(b) {}
  Location locate(const std::array<double, 2>& x) const override {
    double s = box_.lo[0] - x[0];
    s = std::max(s, x[0] - box_.hi[0]);
    s = std::max(s, box_.lo[1] - x[1]);
    s = std::max(s, x[1] - box_.hi[1]);
    return from_signed(s);
  }

 private:
  Box<2> box_;
};

class BoxRegion1 final : public Region<1> {
 public:
  BoxRegion1(Box<1> b) : box_(b) {}
  Location locate(const std::array<double, 1>& x) const override {
    return from_signed(std::max(box_.lo[0] - x[0], x[0] - box_.hi[0]));
  }

 private:
  Box<1> box_;
};

class HalfPlane final : public Region<2> {
 public:
  HalfPlane(double nx, double ny, double c) : nx_(nx), ny_(ny), c_(c) {
    const double len = std::hypot(nx, ny);
    if (len == 0.0) throw std::invalid_argument("half_plane: zero normal");
    nx_ /= len;
    ny_ /= len;
    c_ /= len;
  }
  Location locate(const std::array<double, 2>& x) const override {
    return from_signed(nx_ * x[0] + ny_ * x[1] - c_);
  }

 private:
  double nx_, ny_, c_;
};

template <int Dim>
class UnionRegion final : public Region<Dim> {
 public:
  explicit UnionRegion(std::vector<RegionPtr<Dim>> parts) : parts_(std::move(parts)) {}
  Location locate(const std::array<double, Dim>& x) const override {
    Location result = Location::Outside;
    for (const auto& part : parts_) {
      const Location loc = part->locate(x);
      if (loc == Location::Inside) return Location::Inside;
      if (loc == Location::Boundary) result = Location::Boundary;
    }
    return result;
  }

 private:
  std::vector<RegionPtr<Dim>> parts_;
};

template <int Dim>
class IntersectionRegion final : public Region<Dim> {
 public:
  explicit IntersectionRegion(std::vector<RegionPtr<Dim>> parts)
      : parts_(std::move(parts)) {}
  Location locate(const std::array<double, Dim>& x) const override {
    Location result = Location::Inside;
    for (const auto& part : parts_) {
      const Location loc = part->locate(x);
      if (loc == Location::Outside) return Location::Outside;
      if (loc == Location::Boundary) result = Location::Boundary;
    }
    return result;
  }

 private:
  std::vector<RegionPtr<Dim>> parts_;
};

template <int Dim>
class ComplementRegion final : public Region<Dim> {
 public:
  explicit ComplementRegion(RegionPtr<Dim> part) : part_(std::move(part)) {}
  Location locate(const std::array<double, Dim>& x) const override {
    switch (part_->locate(x)) {
      case Location::Inside:
        return Location::Outside;
      case Location::Outside:
        return Location::Inside;
      default:
        return Location::Boundary;
    }
  }

 private:
  RegionPtr<Dim> part_;
};

}  // namespace

RegionPtr<1> interval(double a, double b) { return std::make_shared<Interval>(a, b); }

RegionPtr<2> circle(double cx, double cy, double r) {
  return std::make_shared<Circle>(cx, cy, r);
}

RegionPtr<2> rectangle(double x0, double y0, double x1, double y1) {
  return std::make_shared<Rectangle>(make_rect(x0, y0, x1, y1));
}

RegionPtr<2> half_plane(double nx, double ny, double c) {
  return std::make_shared<HalfPlane>(nx, ny, c);
}

template <>
RegionPtr<1> box_region<1>(const Box<1>& b) {
  return std::make_shared<BoxRegion1>(b);
}

template <>
RegionPtr<2> box_region<2>(const Box<2>& b) {
  return std::make_shared<Rectangle>(b);
}

RegionPtr<1> region_union(std::vector<RegionPtr<1>> parts) {
  return std::make_shared<UnionRegion<1>>(std::move(parts));
}
RegionPtr<2> region_union(std::vector<RegionPtr<2>> parts) {
  return std::make_shared<UnionRegion<2>>(std::move(parts));
}
RegionPtr<1> region_intersection(std::vector<RegionPtr<1>> parts) {
  return std::make_shared<IntersectionRegion<1>>(std::move(parts));
}
RegionPtr<2> region_intersection(std::vector<RegionPtr<2>> parts) {
  return std::make_shared<IntersectionRegion<2>>(std::move(parts));
}
RegionPtr<1> region_complement(RegionPtr<1> part) {
  return std::make_shared<ComplementRegion<1>>(std::move(part));
}
RegionPtr<2> region_complement(RegionPtr<2> part) {
  return std::make_shared<ComplementRegion<2>>(std::move(part));
}

BitmapRegion::BitmapRegion(std::vector<uint8_t> values, int columns, int rows,
                           Box<2> bounds)
    : values_(std::move(values)), columns_(columns), rows_(rows), bounds_(bounds) {
  if (columns_ <= 0 || rows_ <= 0 ||
      values_.size() != static_cast<size_t>(columns_) * rows_) {
    throw std::invalid_argument("BitmapRegion: empty or non-rectangular grid");
  }
}

Location BitmapRegion::locate(const std::array<double, 2>& x) const {
  const double fx = (x[0] - bounds_.lo[0]) / (bounds_.hi[0] - bounds_.lo[0]) * columns_;
  const double fy = (x[1] - bounds_.lo[1]) / (bounds_.hi[1] - bounds_.lo[1]) * rows_;
  const int cx = std::clamp(static_cast<int>(std::floor(fx)), 0, columns_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(fy)), 0, rows_ - 1);
  return pixel(cx, cy) ? Location::Inside : Location::Outside;
}

Box<2> BitmapRegion::pixel_box(int column, int row) const {
  const double dx = (bounds_.hi[0] - bounds_.lo[0]) / columns_;
  const double dy = (bounds_.hi[1] - bounds_.lo[1]) / rows_;
  return make_rect(bounds_.lo[0] + column * dx, bounds_.lo[1] + row * dy,
                   bounds_.lo[0] + (column + 1) * dx, bounds_.lo[1] + (row + 1) * dy);
}

}  // namespace regions

template <int Dim>
EmbeddedGeometry<Dim>::EmbeddedGeometry(Box<Dim> embedding_bounds,
                                        RegionPtr<Dim> physical_region,
                                        int alpha_exponent)
    : bounds_(embedding_bounds),
      physical_region_(std::move(physical_region)),
      alpha_exponent_(alpha_exponent),
      fictitious_alpha_(std::pow(10.0, -alpha_exponent)) {
  if (!physical_region_) throw std::invalid_argument("EmbeddedGeometry: null region");
  if (alpha_exponent_ <= 0) {
    throw std::invalid_argument("EmbeddedGeometry: alpha exponent must be positive");
  }
  for (int d = 0; d < Dim; ++d) {
    if (!(bounds_.lo[d] < bounds_.hi[d])) {
      throw std::invalid_argument("EmbeddedGeometry: degenerate embedding bounds");
    }
  }
}

template <int Dim>
bool EmbeddedGeometry<Dim>::is_cut(const Box<Dim>& cell, const ProbeRule& probe) const {
  bool seen_physical = false;
  bool seen_fictitious = false;
  const auto visit = [&](const std::array<double, Dim>& x) {
    if (is_physical(x)) {
      seen_physical = true;
    } else {
      seen_fictitious = true;
    }
    return seen_physical && seen_fictitious;
  };

  // Corners first, then the interior lattice.
  for (int corner = 0; corner < (1 << Dim); ++corner) {
    std::array<double, Dim> x{};
    for (int d = 0; d < Dim; ++d) x[d] = (corner >> d & 1) ? cell.hi[d] : cell.lo[d];
    if (visit(x)) return true;
  }
  const int n = std::max(probe.interior_per_axis, 1);
  std::array<int, Dim> idx{};
  idx.fill(1);
  while (true) {
    std::array<double, Dim> x{};
    for (int d = 0; d < Dim; ++d) {
      x[d] = cell.lo[d] + (cell.hi[d] - cell.lo[d]) * idx[d] / (n + 1);
    }
    if (visit(x)) return true;
    int d = 0;
    for (; d < Dim; ++d) {
      if (++idx[d] <= n) break;
      idx[d] = 1;
    }
    if (d == Dim) break;
  }
  return false;
}

EmbeddedGeometry<2> geometry_from_bitmap(const std::vector<std::vector<uint8_t>>& grid,
                                         const Box<2>& bounds, int alpha_exponent) {
  if (grid.empty() || grid.front().empty()) {
    throw std::invalid_argument("geometry_from_bitmap: empty grid");
  }
  const int rows = static_cast<int>(grid.size());
  const int columns = static_cast<int>(grid.front().size());
  std::vector<uint8_t> values;
  values.reserve(static_cast<size_t>(rows) * columns);
  for (const auto& row : grid) {
    if (static_cast<int>(row.size()) != columns) {
      throw std::invalid_argument("geometry_from_bitmap: ragged grid");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  auto region =
      std::make_shared<regions::BitmapRegion>(std::move(values), columns, rows, bounds);
  return EmbeddedGeometry<2>(bounds, std::move(region), alpha_exponent);
}

template class EmbeddedGeometry<1>;
template class EmbeddedGeometry<2>;

}  // namespace fcm
