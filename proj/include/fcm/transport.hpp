#ifndef FCM_TRANSPORT_HPP
#define FCM_TRANSPORT_HPP

#include "fcm/elasticity.hpp"
#include "fcm/mesh.hpp"

namespace fcm {

/// Steady scalar transport (convection along x plus isotropic diffusion) on
/// an embedded 2D domain. Inclusions are fictitious; both the velocity and
/// the diffusion coefficient are penalized there by alpha.
struct TransportProblem {
  explicit TransportProblem(EmbeddedGeometry<2> g) : geometry(std::move(g)) {}

  EmbeddedGeometry<2> geometry;
  double velocity_x = 1.0;  // constant Darcy velocity along x
  double diffusion = 1.0;   // effective diffusion coefficient
  std::function<double(double, double)> source;  // may be null
  double left_value = 0.0;   // strong Dirichlet on the left face
  double right_value = 1.0;  // strong Dirichlet on the right face

  /// Convective-to-diffusive ratio over the domain width.
  double peclet() const {
    return std::abs(velocity_x) * (geometry.bounds().hi[0] - geometry.bounds().lo[0]) /
           diffusion;
  }
};

/// Galerkin system int alpha [ q_x dc/dx w + theta_nu grad c . grad w ] dx dy
/// against the source integral over the physical region; nonsymmetric unless
/// the velocity vanishes. Top and bottom faces are natural.
AssembledSystem assemble_transport(const TransportProblem& problem,
                                   const GridMesh2d& mesh,
                                   const QuadratureConfig& quadrature,
                                   Execution execution = Execution::OpenMP);

class ConcentrationField {
 public:
  ConcentrationField(GridMesh2d mesh, Eigen::VectorXd coefficients)
      : mesh_(std::move(mesh)), coefficients_(std::move(coefficients)) {}

  double value(double x, double y) const {
    return mesh_.field_value(
        std::span<const double>(coefficients_.data(), coefficients_.size()), x, y);
  }
  const GridMesh2d& mesh() const { return mesh_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }

 private:
  GridMesh2d mesh_;
  Eigen::VectorXd coefficients_;
};

ConcentrationField solve_transport(const TransportProblem& problem,
                                   const GridMesh2d& mesh,
                                   const QuadratureConfig& quadrature,
                                   Execution execution = Execution::OpenMP);

struct ProfileSample {
  double s = 0.0;  // arc length along the diagonal
  double c = 0.0;
};

/// Concentration along the main diagonal of the embedding rectangle,
/// parameterized by arc length.
std::vector<ProfileSample> diagonal_profile(const ConcentrationField& field,
                                            int samples);

struct CircleSpec {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

/// Unit-square transport fixture with impermeable circular inclusions
/// (fictitious interior). An empty list gives the plain square.
TransportProblem make_transport_problem(const std::vector<CircleSpec>& inclusions,
                                        int alpha_exponent);

/// The canonical two-circle layout used by the benchmark runs.
std::vector<CircleSpec> default_inclusions();

}  // namespace fcm

#endif
