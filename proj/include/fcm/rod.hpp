#ifndef FCM_ROD_HPP
#define FCM_ROD_HPP

#include <functional>
#include <optional>

#include "fcm/geometry.hpp"

namespace fcm {

/// Constraint payload on an embedding face: either a prescribed solution
/// value or a traction. A face holds at most one condition.
struct FaceCondition {
  enum class Kind { Dirichlet, Traction };
  Kind kind = Kind::Dirichlet;
  double value = 0.0;

  static FaceCondition dirichlet(double value) {
    return {Kind::Dirichlet, value};
  }
  static FaceCondition traction(double value) { return {Kind::Traction, value}; }
};

/// Uni-axial rod embedded in a 1D domain: material data, body force (applied
/// on the physical region only) and the two embedding-face conditions.
struct RodProblem {
  explicit RodProblem(EmbeddedGeometry<1> g) : geometry(std::move(g)) {}

  EmbeddedGeometry<1> geometry;
  double youngs_modulus = 1.0;
  double poisson_ratio = 0.0;
  double area = 1.0;
  std::function<double(double)> body_force;  // may be null (no load)
  std::optional<FaceCondition> left;
  std::optional<FaceCondition> right;
};

/// Benchmark rod on [0,3]: physical segments [0,1] and [7/3,3] with a
/// penalized gap between them. The left rod carries the sine load
/// (1/20) sin(4 pi X), the right end is pulled to 0.02, both ends are
/// constrained strongly.
RodProblem two_rod_problem(int alpha_exponent = 8);

/// Same geometry without the sine load and with a configurable end pull;
/// the right rod then approximates a rigid translation.
RodProblem rigid_pull_problem(int alpha_exponent, double pull);

/// Geometry only (physical segments [0,1] and [7/3,3] in [0,3]).
EmbeddedGeometry<1> two_rod_geometry(int alpha_exponent);

}  // namespace fcm

#endif
