#ifndef FCM_NONLINEAR_HPP
#define FCM_NONLINEAR_HPP

#include <optional>
#include <string>

#include "fcm/elasticity.hpp"

namespace fcm {

/// Loss of invertibility of the deformation map (stretch <= 0 at an
/// integration point). Carries the point location when the solver knows it.
class InvalidDeformation : public std::runtime_error {
 public:
  InvalidDeformation(const std::string& what, double location = 0.0, int increment = -1,
                     int iteration = -1)
      : std::runtime_error(what),
        location_(location),
        increment_(increment),
        iteration_(iteration) {}

  double location() const { return location_; }
  int increment() const { return increment_; }
  int iteration() const { return iteration_; }

 private:
  double location_;
  int increment_;
  int iteration_;
};

/// Energy density, Cauchy stress and spatial tangent of the 1D logarithmic-
/// strain hyperelastic law at stretch lambda:
///   Psi = alpha E/2 (ln lambda)^2,  sigma = alpha E/J ln lambda,
///   c = alpha E/J - 2 sigma,        J = lambda^(1-2 nu).
struct MaterialPoint {
  double energy_density = 0.0;
  double stress = 0.0;
  double tangent = 0.0;
};

MaterialPoint hencky_point(double stretch, double alpha, double youngs_modulus,
                           double poisson_ratio);

enum class NonlinearMode { Standard, Resetting };

/// Per-integration-point deformation record of a solve.
struct DeformationState {
  struct Point {
    double reference_x = 0.0;
    double map_value = 0.0;  // deformed position phi(X)
    double stretch = 1.0;
    double alpha = 1.0;
  };
  std::vector<Point> points;
};

/// Resets the deformation map to the reference configuration inside the
/// fictitious domain: phi(X) := X (stretch 1) wherever X is not physical.
/// Physical points are untouched; idempotent.
DeformationState reset_deformation(DeformationState state,
                                   const EmbeddedGeometry<1>& geometry);

/// Fixed integration fabric (points, weights, alpha, cached basis rows) for
/// repeated residual/tangent evaluations on one mesh.
class IntegrationMesh1d {
 public:
  struct Point {
    double x = 0.0;
    double weight = 0.0;  // Gauss weight times Jacobian
    double alpha = 1.0;
    LocalBasis1d basis;
  };

  IntegrationMesh1d(const EmbeddedGeometry<1>& geometry, const RodMesh& mesh,
                    const QuadratureConfig& quadrature);

  const std::vector<Point>& points() const { return points_; }
  int cell_count() const { return static_cast<int>(cell_begin_.size()) - 1; }
  std::pair<int, int> cell_range(int cell) const {
    return {cell_begin_[cell], cell_begin_[cell + 1]};
  }

 private:
  std::vector<Point> points_;
  std::vector<int> cell_begin_;
};

/// Residual, tangent, energy and state evaluations of the geometrically
/// nonlinear rod on a fixed discretization. In resetting mode, fictitious
/// integration points always evaluate at the reference configuration (zero
/// stress, linear tangent alpha*E).
class RodNonlinearOperator {
 public:
  RodNonlinearOperator(const RodProblem& problem, const RodMesh& mesh,
                       const QuadratureConfig& quadrature);

  int dof_count() const { return mesh_.dof_count(); }
  const RodMesh& mesh() const { return mesh_; }
  const IntegrationMesh1d& integration() const { return integration_; }
  const Eigen::VectorXd& unit_external_load() const { return external_; }

  /// Internal force vector; throws InvalidDeformation if a checked point has
  /// stretch <= 0 (fictitious points are exempt in resetting mode).
  Eigen::VectorXd internal_force(std::span<const double> coefficients,
                                 NonlinearMode mode,
                                 Execution execution = Execution::OpenMP) const;

  Eigen::SparseMatrix<double> tangent_matrix(std::span<const double> coefficients,
                                             NonlinearMode mode,
                                             Execution execution = Execution::OpenMP) const;

  double energy(std::span<const double> coefficients, NonlinearMode mode) const;

  DeformationState state(std::span<const double> coefficients, NonlinearMode mode) const;

 private:
  double stretch_at(const IntegrationMesh1d::Point& point,
                    std::span<const double> coefficients) const;

  const RodProblem& problem_;
  RodMesh mesh_;
  IntegrationMesh1d integration_;
  Eigen::VectorXd external_;
};

struct NewtonOptions {
  int increments = 10;
  double relative_tolerance = 1e-10;
  int max_iterations = 50;
  NonlinearMode mode = NonlinearMode::Standard;
  Execution execution = Execution::OpenMP;
  /// Called after each converged increment with the current coefficients.
  std::function<void(int, const Eigen::VectorXd&)> on_increment;
};

struct IncrementRecord {
  int increment = 0;
  bool converged = false;
  std::vector<double> residual_norms;
};

struct SolveReport {
  bool completed = false;
  std::string failure;  // empty on success
  std::vector<IncrementRecord> increments;
};

struct NonlinearSolution {
  Eigen::VectorXd coefficients;
  DeformationState state;
  SolveReport report;
  double energy = 0.0;  // deformation energy of the final state
};

/// Displacement-driven Newton continuation: the face conditions and body
/// force of `problem` are ramped proportionally over the increments. Throws
/// InvalidDeformation when the deformation map loses invertibility; plain
/// non-convergence is reported, not thrown.
NonlinearSolution newton_solve(const RodProblem& problem, const RodMesh& mesh,
                               const QuadratureConfig& quadrature,
                               const NewtonOptions& options);

struct StressSample {
  double x = 0.0;
  double stress = 0.0;
};

/// Cauchy stress profile of a converged state at the given sample points.
std::vector<StressSample> stress_profile(const RodProblem& problem, const RodMesh& mesh,
                                         std::span<const double> coefficients,
                                         NonlinearMode mode,
                                         std::span<const double> sample_points);

struct NonlinearConvergenceRow {
  BasisFamily family;
  int degree = 0;
  int dofs = 0;
  double energy = 0.0;
  double rel_error = 0.0;
  bool failed = false;
  std::string failure;
};

/// p-sweep of the nonlinear solve; solver failures are recorded per row.
std::vector<NonlinearConvergenceRow> nonlinear_convergence_study(
    const RodProblem& problem, BasisFamily family, int cells, int p_min, int p_max,
    const QuadratureConfig& quadrature, const NewtonOptions& options,
    double reference_energy);

}  // namespace fcm

#endif
