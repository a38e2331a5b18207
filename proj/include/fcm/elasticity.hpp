#ifndef FCM_ELASTICITY_HPP
#define FCM_ELASTICITY_HPP

#include <span>
#include <vector>

#include "fcm/linear_system.hpp"
#include "fcm/mesh.hpp"
#include "fcm/quadrature.hpp"
#include "fcm/rod.hpp"

namespace fcm {

/// Which assembly loop runs: the OpenMP kernel or the plain serial reference.
/// Both produce bitwise-identical systems; the serial loop is kept as the
/// reference implementation for tests and benchmarks.
enum class Execution { Serial, OpenMP };

struct QuadratureConfig {
  int max_depth = 20;       // sub-cell tree depth for cut cells
  int points_override = 0;  // 0: use degree+1 points per direction
  int probe_override = 0;   // 0: use degree+2 interior probe points per axis

  int points_for(int degree) const {
    return points_override > 0 ? points_override : degree + 1;
  }
  ProbeRule probe_for(int degree) const {
    return probe_override > 0 ? ProbeRule{probe_override} : ProbeRule::for_degree(degree);
  }
};

/// Assembles K_ab = int alpha E A N_a' N_b' dx and the load vector
/// f_a = int_phys N_a b dx plus face traction terms. Cut cells are integrated
/// with a composed sub-cell rule, uncut cells with a single Gauss rule.
AssembledSystem assemble_rod(const RodProblem& problem, const RodMesh& mesh,
                             const QuadratureConfig& quadrature,
                             Execution execution = Execution::OpenMP);

struct StrainSample {
  double x = 0.0;
  double strain = 0.0;
};

/// du_h/dx sampled at the given points.
std::vector<StrainSample> strain_field(const RodMesh& mesh,
                                       std::span<const double> coefficients,
                                       std::span<const double> sample_points);

struct ConvergenceRow {
  BasisFamily family;
  int degree = 0;
  int dofs = 0;
  double energy = 0.0;
  double rel_error = 0.0;
};

/// p-sweep of the assembled problem against a fixed reference energy.
std::vector<ConvergenceRow> linear_convergence_study(const RodProblem& problem,
                                                     BasisFamily family, int cells,
                                                     int p_min, int p_max,
                                                     const QuadratureConfig& quadrature,
                                                     double reference_energy);

}  // namespace fcm

#endif
