#include <doctest.h>

#include <cmath>

#include "fcm/oracles.hpp"
#include "fcm/transport.hpp"

using namespace fcm;

TEST_CASE("pure diffusion gives a symmetric system") {
  TransportProblem problem = make_transport_problem(default_inclusions(), 6);
  problem.velocity_x = 0.0;
  GridMesh2d mesh(problem.geometry.bounds(), 4, 4, BasisFamily::PVersion, 3,
                  TensorSpace::Trunk);
  QuadratureConfig quadrature;
  quadrature.max_depth = 4;
  const AssembledSystem system = assemble_transport(problem, mesh, quadrature);
  CHECK(system.symmetric);
  const Eigen::MatrixXd dense = Eigen::MatrixXd(system.matrix);
  const double scale = dense.cwiseAbs().maxCoeff();
  CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale);
}

TEST_CASE("bilinear diffusion cell matrix") {
  TransportProblem problem = make_transport_problem({}, 6);
  problem.velocity_x = 0.0;
  GridMesh2d mesh(problem.geometry.bounds(), 1, 1, BasisFamily::PVersion, 1,
                  TensorSpace::Full);
  const AssembledSystem system = assemble_transport(problem, mesh, QuadratureConfig{});
  const Eigen::MatrixXd k = Eigen::MatrixXd(system.matrix);
  REQUIRE(k.rows() == 4);
  for (int a = 0; a < 4; ++a) {
    CHECK(std::abs(k.row(a).sum()) <= 1e-14);
    CHECK(k(a, a) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  }
  // corners 0,1 share the bottom edge; 0,2 share the left edge; 0,3 is the
  // diagonal pair
  CHECK(k(0, 1) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
  CHECK(k(0, 2) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
  CHECK(k(0, 3) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("fictitious quadrature points scale both coefficients by alpha") {
  // fully fictitious unit cell vs fully physical one
  const Box<2> bounds = make_rect(0.0, 0.0, 1.0, 1.0);
  TransportProblem fict{
      EmbeddedGeometry<2>(bounds, regions::circle(5.0, 5.0, 0.1), 6)};
  TransportProblem phys{EmbeddedGeometry<2>(bounds, regions::box_region<2>(bounds), 6)};
  GridMesh2d mesh(bounds, 1, 1, BasisFamily::PVersion, 3, TensorSpace::Full);
  const Eigen::MatrixXd k_fict =
      Eigen::MatrixXd(assemble_transport(fict, mesh, QuadratureConfig{}).matrix);
  const Eigen::MatrixXd k_phys =
      Eigen::MatrixXd(assemble_transport(phys, mesh, QuadratureConfig{}).matrix);
  const double scale = k_phys.cwiseAbs().maxCoeff();
  CHECK((k_fict - 1e-6 * k_phys).cwiseAbs().maxCoeff() <= 1e-14 * scale);
}

TEST_CASE("no inclusions: the profile matches the 1D exact solution") {
  TransportProblem problem = make_transport_problem({}, 6);
  GridMesh2d mesh(problem.geometry.bounds(), 4, 4, BasisFamily::PVersion, 6,
                  TensorSpace::Trunk);
  const ConcentrationField field = solve_transport(problem, mesh, QuadratureConfig{});
  double max_error = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double x = static_cast<double>(i) / 50.0;
    max_error = std::max(max_error, std::abs(field.value(x, 0.37) -
                                             oracle::convection_diffusion_1d_exact(
                                                 problem.peclet(), x)));
  }
  CHECK(max_error <= 1e-5);
}

TEST_CASE("diffusion-dominated limit is linear in x") {
  TransportProblem problem = make_transport_problem({}, 6);
  problem.diffusion = 1e8;
  GridMesh2d mesh(problem.geometry.bounds(), 4, 4, BasisFamily::PVersion, 4,
                  TensorSpace::Trunk);
  const ConcentrationField field = solve_transport(problem, mesh, QuadratureConfig{});
  for (int i = 0; i <= 20; ++i) {
    const double x = static_cast<double>(i) / 20.0;
    CHECK(std::abs(field.value(x, 0.62) - x) <= 1e-8);
  }
}

TEST_CASE("diagonal profile endpoints and monotonicity without inclusions") {
  TransportProblem problem = make_transport_problem({}, 6);
  GridMesh2d mesh(problem.geometry.bounds(), 4, 4, BasisFamily::PVersion, 6,
                  TensorSpace::Trunk);
  const ConcentrationField field = solve_transport(problem, mesh, QuadratureConfig{});
  const auto profile = diagonal_profile(field, 101);
  REQUIRE(profile.size() == 101);
  CHECK(profile.front().c == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(profile.back().c == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(profile.front().s == 0.0);
  CHECK(profile.back().s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (size_t i = 0; i + 1 < profile.size(); ++i) {
    CHECK(profile[i + 1].c >= profile[i].c - 1e-8);
  }
  CHECK_THROWS_AS(diagonal_profile(field, 1), std::invalid_argument);
}

TEST_CASE("discrete weak-form residual vanishes at the solution") {
  TransportProblem problem = make_transport_problem(default_inclusions(), 6);
  GridMesh2d mesh(problem.geometry.bounds(), 4, 4, BasisFamily::PVersion, 4,
                  TensorSpace::Trunk);
  QuadratureConfig quadrature;
  quadrature.max_depth = 4;
  const AssembledSystem system = assemble_transport(problem, mesh, quadrature);
  const Eigen::VectorXd u = solve_linear(system);
  const Eigen::VectorXd residual = system.matrix * u - system.rhs;
  double free_norm = 0.0;
  for (int i = 0; i < residual.size(); ++i) {
    if (!system.constraints.count(i)) free_norm += residual[i] * residual[i];
  }
  CHECK(std::sqrt(free_norm) <= 1e-10);
}

TEST_CASE("inclusion fixture stays within the physical bounds") {
  TransportProblem problem = make_transport_problem(default_inclusions(), 6);
  GridMesh2d mesh(problem.geometry.bounds(), 6, 6, BasisFamily::PVersion, 5,
                  TensorSpace::Trunk);
  QuadratureConfig quadrature;
  quadrature.max_depth = 4;
  const ConcentrationField field = solve_transport(problem, mesh, quadrature);
  for (int j = 0; j <= 40; ++j) {
    for (int i = 0; i <= 40; ++i) {
      const double x = static_cast<double>(i) / 40.0;
      const double y = static_cast<double>(j) / 40.0;
      if (!problem.geometry.is_physical({x, y})) continue;
      const double c = field.value(x, y);
      CHECK(c >= -1e-2);
      CHECK(c <= 1.0 + 1e-2);
    }
  }
}

TEST_CASE("B-spline transport solve matches the exact profile") {
  TransportProblem problem = make_transport_problem({}, 6);
  GridMesh2d mesh(problem.geometry.bounds(), 6, 6, BasisFamily::Bspline, 5);
  const ConcentrationField field = solve_transport(problem, mesh, QuadratureConfig{});
  for (int i = 0; i <= 20; ++i) {
    const double x = static_cast<double>(i) / 20.0;
    CHECK(field.value(x, 0.5) ==
          doctest::Approx(oracle::convection_diffusion_1d_exact(1.0, x)).epsilon(2e-5));
  }
}

TEST_CASE("openmp transport assembly matches the serial reference bitwise") {
  TransportProblem problem = make_transport_problem(default_inclusions(), 6);
  GridMesh2d mesh(problem.geometry.bounds(), 4, 4, BasisFamily::PVersion, 4,
                  TensorSpace::Trunk);
  QuadratureConfig quadrature;
  quadrature.max_depth = 3;
  const AssembledSystem serial =
      assemble_transport(problem, mesh, quadrature, Execution::Serial);
  const AssembledSystem parallel =
      assemble_transport(problem, mesh, quadrature, Execution::OpenMP);
  for (int i = 0; i < serial.rhs.size(); ++i) CHECK(serial.rhs[i] == parallel.rhs[i]);
  const Eigen::MatrixXd a = Eigen::MatrixXd(serial.matrix);
  const Eigen::MatrixXd b = Eigen::MatrixXd(parallel.matrix);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
