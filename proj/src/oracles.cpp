#include "fcm/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fcm/basis.hpp"
#include "fcm/quadrature.hpp"

namespace fcm::oracle {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Segment layout of the benchmark rod.
constexpr double kBreakLeft = 1.0;
constexpr double kBreakRight = 7.0 / 3.0;
constexpr double kRodEnd = 3.0;

double sine_load(double x) { return 0.05 * std::sin(4.0 * kPi * x); }

/// Dense body-fitted discretization: one p-version cell per segment, nodes
/// shared across segment boundaries, bubbles appended per segment.
struct SegmentGrid {
  std::array<double, 4> breaks{0.0, kBreakLeft, kBreakRight, kRodEnd};
  std::array<double, 3> alpha{1.0, 1.0, 1.0};
  int degree = 20;

  int dof_count() const { return 4 + 3 * (degree - 1); }

  int global(int segment, int local) const {
    if (local == 0) return segment;
    if (local == 1) return segment + 1;
    return 4 + segment * (degree - 1) + (local - 2);
  }

  int segment_of(double x) const {
    if (x < breaks[1]) return 0;
    if (x < breaks[2]) return 1;
    return 2;
  }

  // Basis evaluated at physical x; derivative in physical space.
  BasisValues1d evaluate(int segment, double x) const {
    const double a = breaks[segment];
    const double b = breaks[segment + 1];
    BasisValues1d v = eval_p_version_1d(degree, 2.0 * (x - a) / (b - a) - 1.0);
    for (int i = 0; i < v.count; ++i) v.deriv[i] *= 2.0 / (b - a);
    return v;
  }

  double field(const Eigen::VectorXd& u, double x, bool derivative) const {
    const int s = segment_of(x);
    const BasisValues1d v = evaluate(s, x);
    double sum = 0.0;
    for (int i = 0; i < v.count; ++i) {
      sum += u[global(s, i)] * (derivative ? v.deriv[i] : v.value[i]);
    }
    return sum;
  }
};

Eigen::VectorXd solve_dense_constrained(const Eigen::MatrixXd& matrix,
                                        const Eigen::VectorXd& rhs, int fixed_a,
                                        double value_a, int fixed_b, double value_b) {
  const int n = static_cast<int>(matrix.rows());
  std::vector<int> free_dofs;
  for (int i = 0; i < n; ++i) {
    if (i != fixed_a && i != fixed_b) free_dofs.push_back(i);
  }
  const int m = static_cast<int>(free_dofs.size());
  Eigen::MatrixXd reduced(m, m);
  Eigen::VectorXd rhs_reduced(m);
  for (int i = 0; i < m; ++i) {
    rhs_reduced[i] = rhs[free_dofs[i]] - matrix(free_dofs[i], fixed_a) * value_a -
                     matrix(free_dofs[i], fixed_b) * value_b;
    for (int j = 0; j < m; ++j) reduced(i, j) = matrix(free_dofs[i], free_dofs[j]);
  }
  const Eigen::VectorXd x = reduced.ldlt().solve(rhs_reduced);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
  full[fixed_a] = value_a;
  full[fixed_b] = value_b;
  for (int i = 0; i < m; ++i) full[free_dofs[i]] = x[i];
  return full;
}

}  // namespace

LinearReference rod_linear_reference(double alpha, int p_ref) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("rod_linear_reference: alpha must be in (0,1]");
  }
  auto grid = std::make_shared<SegmentGrid>();
  grid->degree = p_ref;
  grid->alpha = {1.0, alpha, 1.0};

  const int n = grid->dof_count();
  Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(n);
  const GaussRule& rule = gauss_rule(std::min(p_ref + 1, kMaxGaussPoints));

  for (int s = 0; s < 3; ++s) {
    const double a = grid->breaks[s];
    const double b = grid->breaks[s + 1];
    const double jac = 0.5 * (b - a);
    for (int g = 0; g < rule.size; ++g) {
      const double x = 0.5 * (a + b) + jac * rule.point[g];
      const double w = rule.weight[g] * jac;
      const BasisValues1d v = grid->evaluate(s, x);
      for (int i = 0; i < v.count; ++i) {
        for (int j = 0; j < v.count; ++j) {
          stiffness(grid->global(s, i), grid->global(s, j)) +=
              w * grid->alpha[s] * v.deriv[i] * v.deriv[j];
        }
      }
      if (s == 0) {  // sine load acts on the left rod only
        for (int i = 0; i < v.count; ++i) {
          load[grid->global(s, i)] += w * sine_load(x) * v.value[i];
        }
      }
    }
  }

  const Eigen::VectorXd u = solve_dense_constrained(stiffness, load, 0, 0.0, 3, 0.02);

  LinearReference out;
  out.energy = 0.5 * u.dot(stiffness * u);
  out.displacement = [grid, u](double x) { return grid->field(u, x, false); };
  out.strain = [grid, u](double x) { return grid->field(u, x, true); };
  return out;
}

NonlinearReference rod_nonlinear_reference(double alpha, double pull, int increments,
                                           int p_ref, NonlinearMode mode,
                                           bool sine_load_on) {
  auto grid = std::make_shared<SegmentGrid>();
  grid->degree = p_ref;
  grid->alpha = {1.0, alpha, 1.0};
  const int n = grid->dof_count();
  const GaussRule& rule = gauss_rule(std::min(p_ref + 1, kMaxGaussPoints));

  Eigen::VectorXd external = Eigen::VectorXd::Zero(n);
  if (sine_load_on) {
    const double a = grid->breaks[0];
    const double b = grid->breaks[1];
    const double jac = 0.5 * (b - a);
    for (int g = 0; g < rule.size; ++g) {
      const double x = 0.5 * (a + b) + jac * rule.point[g];
      const BasisValues1d v = grid->evaluate(0, x);
      for (int i = 0; i < v.count; ++i) {
        external[grid->global(0, i)] += rule.weight[g] * jac * sine_load(x) * v.value[i];
      }
    }
  }

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  const auto assemble = [&](Eigen::VectorXd& residual, Eigen::MatrixXd& tangent,
                            double factor) {
    residual.setZero();
    tangent.setZero();
    for (int s = 0; s < 3; ++s) {
      const bool reset = mode == NonlinearMode::Resetting && s == 1;
      const double a = grid->breaks[s];
      const double b = grid->breaks[s + 1];
      const double jac = 0.5 * (b - a);
      for (int g = 0; g < rule.size; ++g) {
        const double x = 0.5 * (a + b) + jac * rule.point[g];
        const double w = rule.weight[g] * jac;
        const BasisValues1d v = grid->evaluate(s, x);
        double stretch = 1.0;
        if (!reset) {
          double gradient = 0.0;
          for (int i = 0; i < v.count; ++i) gradient += u[grid->global(s, i)] * v.deriv[i];
          stretch = 1.0 + gradient;
          if (!(stretch > 0.0)) {
            throw InvalidDeformation("oracle: stretch inverted at X=" + std::to_string(x),
                                     x);
          }
        }
        const double log_stretch = std::log(stretch);
        const double piola = grid->alpha[s] * log_stretch / stretch;
        const double dpiola = grid->alpha[s] * (1.0 - log_stretch) / (stretch * stretch);
        for (int i = 0; i < v.count; ++i) {
          residual[grid->global(s, i)] += w * piola * v.deriv[i];
          for (int j = 0; j < v.count; ++j) {
            tangent(grid->global(s, i), grid->global(s, j)) +=
                w * dpiola * v.deriv[i] * v.deriv[j];
          }
        }
      }
    }
    residual -= factor * external;
  };

  Eigen::VectorXd residual(n);
  Eigen::MatrixXd tangent(n, n);
  std::vector<int> free_dofs;
  for (int i = 0; i < n; ++i) {
    if (i != 0 && i != 3) free_dofs.push_back(i);
  }
  const int m = static_cast<int>(free_dofs.size());

  for (int inc = 1; inc <= increments; ++inc) {
    const double factor = static_cast<double>(inc) / increments;
    u[0] = 0.0;
    u[3] = factor * pull;
    double reference_norm = 0.0;
    for (int iter = 0; iter < 60; ++iter) {
      assemble(residual, tangent, factor);
      Eigen::VectorXd r(m);
      for (int i = 0; i < m; ++i) r[i] = residual[free_dofs[i]];
      const double norm = r.norm();
      if (iter == 0) reference_norm = norm;
      if (norm <= 1e-12 * reference_norm || norm == 0.0) break;
      Eigen::MatrixXd k(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) k(i, j) = tangent(free_dofs[i], free_dofs[j]);
      }
      const Eigen::VectorXd step = k.partialPivLu().solve(-r);
      for (int i = 0; i < m; ++i) u[free_dofs[i]] += step[i];
    }
  }

  NonlinearReference out;
  // Final-state energy and stress evaluators.
  double energy = 0.0;
  for (int s = 0; s < 3; ++s) {
    const bool reset = mode == NonlinearMode::Resetting && s == 1;
    const double a = grid->breaks[s];
    const double b = grid->breaks[s + 1];
    const double jac = 0.5 * (b - a);
    for (int g = 0; g < rule.size; ++g) {
      const double x = 0.5 * (a + b) + jac * rule.point[g];
      const double stretch = reset ? 1.0 : 1.0 + grid->field(u, x, true);
      const double log_stretch = std::log(stretch);
      energy += rule.weight[g] * jac * grid->alpha[s] * 0.5 * log_stretch * log_stretch;
    }
  }
  out.energy = energy;

  const NonlinearMode mode_copy = mode;
  out.stress = [grid, u, mode_copy](double x) {
    const int s = grid->segment_of(x);
    if (mode_copy == NonlinearMode::Resetting && s == 1) return 0.0;
    const double stretch = 1.0 + grid->field(u, x, true);
    return grid->alpha[s] * std::log(stretch) / stretch;  // J = stretch for nu = 0
  };
  out.fictitious_stretch = 1.0 + grid->field(u, 0.5 * (kBreakLeft + kBreakRight), true);

  double max_stress = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = kRodEnd * i / 400.0;
    const int s = grid->segment_of(x);
    if (s == 1) continue;
    max_stress = std::max(max_stress, std::abs(out.stress(x)));
  }
  out.max_physical_stress = max_stress;
  return out;
}

double convection_diffusion_1d_exact(double peclet, double x) {
  if (peclet < 0.0) throw std::invalid_argument("peclet must be >= 0");
  if (peclet < 1e-13) return x;
  return std::expm1(peclet * x) / std::expm1(peclet);
}

double two_rod_limit_energy() { return 3.0 / (25600.0 * kPi * kPi); }

double two_rod_interface_force(double alpha) {
  return (0.02 + 1.0 / (80.0 * kPi)) / (5.0 / 3.0 + 4.0 / (3.0 * alpha));
}

double two_rod_penalized_energy(double alpha) {
  // Equilibrium normal force: N(X) = N0 + (cos(4 pi X) - 1)/(80 pi) on [0,1],
  // N0 on [1,3]; strains N/alpha(X); integrate 1/2 alpha(X) strain^2.
  const double n0 = two_rod_interface_force(alpha);
  const double g = 1.0 / (80.0 * kPi);
  return 0.5 * (n0 * n0 - 2.0 * n0 * g + 1.5 * g * g + (4.0 / 3.0) * n0 * n0 / alpha +
                (2.0 / 3.0) * n0 * n0);
}

double two_rod_max_physical_strain(double alpha) {
  // The sine contribution spans [-2/(80 pi), 0]; the right rod carries N0.
  const double n0 = two_rod_interface_force(alpha);
  return std::max(std::abs(n0 - 2.0 / (80.0 * kPi)), n0);
}

double two_rod_fictitious_strain(double alpha) {
  return two_rod_interface_force(alpha) / alpha;
}

double left_rod_nonlinear_energy() {
  // Stress equilibrium P(X) = (cos(4 pi X) - 1)/(80 pi); invert
  // ln(stretch)/stretch = P pointwise on the stretch < e branch.
  const auto stretch_of = [](double p) {
    double lo = p < 0.0 ? 1e-12 : 1.0;
    double hi = p < 0.0 ? 1.0 : std::exp(1.0);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (std::log(mid) / mid < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const GaussRule& rule = gauss_rule(20);
  double energy = 0.0;
  const int pieces = 16;
  for (int k = 0; k < pieces; ++k) {
    const double a = static_cast<double>(k) / pieces;
    const double b = static_cast<double>(k + 1) / pieces;
    const double jac = 0.5 * (b - a);
    for (int g = 0; g < rule.size; ++g) {
      const double x = 0.5 * (a + b) + jac * rule.point[g];
      const double p = (std::cos(4.0 * kPi * x) - 1.0) / (80.0 * kPi);
      const double log_stretch = std::log(stretch_of(p));
      energy += rule.weight[g] * jac * 0.5 * log_stretch * log_stretch;
    }
  }
  return energy;
}

}  // namespace fcm::oracle
