#ifndef FCM_ORACLES_HPP
#define FCM_ORACLES_HPP

#include <functional>

#include "fcm/nonlinear.hpp"

namespace fcm::oracle {

/// Body-fitted references for the benchmark rod: three exactly fitted
/// segments [0,1], [1,7/3], [7/3,3] with per-segment material factor
/// {1, alpha, 1}, each discretized by a single high-order cell. No cell is
/// cut, so plain Gauss quadrature integrates the physics exactly up to the
/// polynomial approximation of the solution itself. The implementation is a
/// self-contained dense solver sharing only the Gauss rule and the 1D shape
/// functions with the embedded-domain code paths it validates.

struct LinearReference {
  double energy = 0.0;
  std::function<double(double)> displacement;
  std::function<double(double)> strain;
};

/// Penalized linear benchmark (sine load on the left rod, end pull 0.02).
LinearReference rod_linear_reference(double alpha, int p_ref);

struct NonlinearReference {
  double energy = 0.0;
  std::function<double(double)> stress;  // Cauchy stress
  double fictitious_stretch = 1.0;       // stretch at the gap midpoint
  double max_physical_stress = 0.0;      // max |sigma| over the two rods
};

/// Body-fitted nonlinear solve with the logarithmic-strain law. `sine_load`
/// toggles the sine body force on the left rod; the pull is applied at X=3.
/// In resetting mode the middle segment always evaluates at the reference
/// configuration. Standard mode propagates InvalidDeformation when a
/// segment's stretch inverts.
NonlinearReference rod_nonlinear_reference(double alpha, double pull, int increments,
                                           int p_ref, NonlinearMode mode,
                                           bool sine_load);

/// Steady 1D convection-diffusion on [0,1] with c(0)=0, c(1)=1:
/// c = (exp(Pe x) - 1) / (exp(Pe) - 1), linear in the Pe -> 0 limit.
double convection_diffusion_1d_exact(double peclet, double x);

/// Closed forms of the penalized two-rod benchmark (end pull 0.02, sine load
/// (1/20) sin(4 pi X) on [0,1]).
/// Limit energy for alpha -> 0: 3/(25600 pi^2).
double two_rod_limit_energy();
/// Exact energy of the penalized problem at finite alpha (piecewise
/// integration of the equilibrium normal force).
double two_rod_penalized_energy(double alpha);
/// Normal force transmitted through the penalized gap.
double two_rod_interface_force(double alpha);
/// Maximum |strain| of the exact penalized solution over the physical rods.
double two_rod_max_physical_strain(double alpha);
/// Strain of the exact penalized solution inside the gap.
double two_rod_fictitious_strain(double alpha);

/// Energy of the sine-loaded left rod alone under the logarithmic-strain law
/// (free right end), by pointwise stress inversion and composite quadrature.
double left_rod_nonlinear_energy();

}  // namespace fcm::oracle

#endif
