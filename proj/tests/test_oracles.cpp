#include <doctest.h>

#include <cmath>

#include "fcm/oracles.hpp"

using namespace fcm;

// Golden values below are frozen from independent computations: closed-form
// integration of the equilibrium force balance (linear), pointwise inversion
// of ln(stretch)/stretch with high-precision quadrature (nonlinear), and the
// explicit exponential solution (transport).

TEST_CASE("limit energy of the two-rod benchmark") {
  // 3/(25600 pi^2)
  CHECK(oracle::two_rod_limit_energy() ==
        doctest::Approx(1.1873576208086458e-05).epsilon(1e-15));
}

TEST_CASE("body-fitted linear oracle matches the closed-form energy") {
  for (const double alpha : {1.0, 1e-4, 1e-8}) {
    const auto reference = oracle::rod_linear_reference(alpha, 24);
    const double closed = oracle::two_rod_penalized_energy(alpha);
    CHECK(reference.energy == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("homogeneous limit alpha=1") {
  const auto reference = oracle::rod_linear_reference(1.0, 24);
  CHECK(reference.energy == doctest::Approx(7.5901670384067259e-05).epsilon(1e-12));
}

TEST_CASE("penalized energy approaches the limit linearly in alpha") {
  const double limit = oracle::two_rod_limit_energy();
  const double slope8 = (oracle::two_rod_penalized_energy(1e-8) - limit) / 1e-8;
  const double slope6 = (oracle::two_rod_penalized_energy(1e-6) - limit) / 1e-6;
  const double slope10 = (oracle::two_rod_penalized_energy(1e-10) - limit) / 1e-10;
  CHECK(slope8 == doctest::Approx(1.4406321009516665e-04).epsilon(1e-6));
  CHECK(slope6 == doctest::Approx(slope8).epsilon(1e-2));
  CHECK(slope10 == doctest::Approx(slope8).epsilon(1e-2));
  // alpha=1e-8 energy sits within 1e-6 relative of the limit
  CHECK(std::abs(oracle::rod_linear_reference(1e-8, 24).energy - limit) / limit < 1e-6);
}

TEST_CASE("oracle self-convergence in the reference degree") {
  for (const double alpha : {1e-6, 1e-8}) {
    const double coarse = oracle::rod_linear_reference(alpha, 16).energy;
    const double fine = oracle::rod_linear_reference(alpha, 32).energy;
    CHECK(std::abs(fine - coarse) / fine < 1e-10);
  }
}

TEST_CASE("oracle strain evaluators match the force balance") {
  const double alpha = 1e-8;
  const auto reference = oracle::rod_linear_reference(alpha, 24);
  const double n0 = oracle::two_rod_interface_force(alpha);
  // strain = N(X)/alpha(X) with N(X) = N0 + (cos(4 pi X) - 1)/(80 pi) on [0,1]
  const double pi = 3.14159265358979323846;
  for (const double x : {0.1, 0.45, 0.8}) {
    const double expected = n0 + (std::cos(4 * pi * x) - 1.0) / (80 * pi);
    CHECK(reference.strain(x) == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(reference.strain(1.7) == doctest::Approx(n0 / alpha).epsilon(1e-9));
  CHECK(reference.strain(2.8) == doctest::Approx(n0).epsilon(1e-6));
  CHECK(reference.displacement(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(reference.displacement(3.0) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("fictitious strain exceeds the interface strain by 1/alpha") {
  const double alpha = 1e-8;
  CHECK(oracle::two_rod_fictitious_strain(alpha) ==
        doctest::Approx(oracle::two_rod_interface_force(alpha) / alpha).epsilon(1e-14));
  CHECK(oracle::two_rod_fictitious_strain(alpha) ==
        doctest::Approx(1.7984154958171100e-02).epsilon(1e-10));
  CHECK(oracle::two_rod_max_physical_strain(alpha) ==
        doctest::Approx(2.0 / (80 * 3.14159265358979323846)).epsilon(1e-6));
}

TEST_CASE("nonlinear oracle: zero pull gives zero stress") {
  const auto reference =
      oracle::rod_nonlinear_reference(1e-5, 0.0, 1, 16, NonlinearMode::Standard, false);
  CHECK(reference.max_physical_stress <= 1e-14);
  CHECK(std::abs(reference.stress(1.7)) <= 1e-14);
  CHECK(reference.energy <= 1e-20);
}

TEST_CASE("nonlinear oracle: rigid fixture with resetting carries no stress") {
  const auto reference =
      oracle::rod_nonlinear_reference(1e-12, 1.0, 10, 20, NonlinearMode::Resetting,
                                      false);
  CHECK(reference.max_physical_stress <= 1e-10);
}

TEST_CASE("nonlinear oracle: rigid-body kinematics stretch the gap to 1.75") {
  // segment lengths 1, 4/3, 2/3: stretch = 1 + 3/4 * pull up to O(alpha)
  const auto reference =
      oracle::rod_nonlinear_reference(1e-5, 1.0, 10, 20, NonlinearMode::Standard,
                                      false);
  CHECK(reference.fictitious_stretch == doctest::Approx(1.75).epsilon(1e-4));
  CHECK(reference.fictitious_stretch == doctest::Approx(1.7499960027).epsilon(1e-8));
}

TEST_CASE("nonlinear oracle matches pointwise stress inversion") {
  // resetting: the energy reduces to the sine-loaded left rod alone
  const double left_rod = oracle::left_rod_nonlinear_energy();
  CHECK(left_rod == doctest::Approx(1.1718258848257245e-05).epsilon(1e-12));
  const auto resetting =
      oracle::rod_nonlinear_reference(1e-12, 1.0, 10, 24, NonlinearMode::Resetting,
                                      true);
  CHECK(resetting.energy == doctest::Approx(left_rod).epsilon(1e-9));

  // standard mode at alpha=1e-5: frozen from the independent force-balance
  // bisection
  const auto standard =
      oracle::rod_nonlinear_reference(1e-5, 1.0, 10, 24, NonlinearMode::Standard, true);
  CHECK(standard.energy == doctest::Approx(1.3806152271673774e-05).epsilon(1e-9));
  CHECK(standard.fictitious_stretch == doctest::Approx(1.7529537760).epsilon(1e-8));
}

TEST_CASE("exact convection-diffusion profile") {
  CHECK(oracle::convection_diffusion_1d_exact(1.0, 0.0) == 0.0);
  CHECK(oracle::convection_diffusion_1d_exact(1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oracle::convection_diffusion_1d_exact(0.0, 0.5) == 0.5);
  CHECK(oracle::convection_diffusion_1d_exact(1e-14, 0.25) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(oracle::convection_diffusion_1d_exact(1.0, 0.5) ==
        doctest::Approx(0.37754066879814546).epsilon(1e-14));
  CHECK_THROWS_AS(oracle::convection_diffusion_1d_exact(-1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("exact profile agrees with a finite-difference solve") {
  // central differences for c'' = Pe c' on a fine grid
  const double peclet = 1.0;
  const int n = 2000;
  const double h = 1.0 / n;
  // tridiagonal Thomas solve
  std::vector<double> lower(n - 1), diag(n - 1), upper(n - 1), rhs(n - 1, 0.0);
  for (int i = 0; i < n - 1; ++i) {
    lower[i] = 1.0 + peclet * h / 2.0;
    diag[i] = -2.0;
    upper[i] = 1.0 - peclet * h / 2.0;
  }
  rhs[n - 2] = -(1.0 - peclet * h / 2.0) * 1.0;  // c(1) = 1
  for (int i = 1; i < n - 1; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> c(n - 1);
  c[n - 2] = rhs[n - 2] / diag[n - 2];
  for (int i = n - 3; i >= 0; --i) c[i] = (rhs[i] - upper[i] * c[i + 1]) / diag[i];
  for (int i = 200; i < n - 1; i += 200) {
    const double x = (i + 1) * h;
    CHECK(c[i] == doctest::Approx(oracle::convection_diffusion_1d_exact(peclet, x))
                      .epsilon(1e-6));
  }
}
