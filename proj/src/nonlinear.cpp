#include "fcm/nonlinear.hpp"

#include <cmath>

namespace fcm {

MaterialPoint hencky_point(double stretch, double alpha, double youngs_modulus,
                           double poisson_ratio) {
  if (!(stretch > 0.0)) {
    throw InvalidDeformation("hencky_point: stretch is not positive");
  }
  const double log_stretch = std::log(stretch);
  const double jacobian = std::pow(stretch, 1.0 - 2.0 * poisson_ratio);
  MaterialPoint out;
  out.energy_density = alpha * 0.5 * youngs_modulus * log_stretch * log_stretch;
  out.stress = alpha * youngs_modulus / jacobian * log_stretch;
  out.tangent = alpha * youngs_modulus / jacobian - 2.0 * out.stress;
  return out;
}

DeformationState reset_deformation(DeformationState state,
                                   const EmbeddedGeometry<1>& geometry) {
  for (auto& point : state.points) {
    if (!geometry.is_physical({point.reference_x})) {
      point.map_value = point.reference_x;
      point.stretch = 1.0;
    }
  }
  return state;
}

IntegrationMesh1d::IntegrationMesh1d(const EmbeddedGeometry<1>& geometry,
                                     const RodMesh& mesh,
                                     const QuadratureConfig& quadrature) {
  const ProbeRule probe = quadrature.probe_for(mesh.degree());
  const GaussRule& rule = gauss_rule(quadrature.points_for(mesh.degree()));
  cell_begin_.push_back(0);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const Box<1> box = mesh.cell_box(c);
    SubCellTree<1> tree;
    if (geometry.is_cut(box, probe)) {
      tree = build_subcell_tree(box, geometry, quadrature.max_depth, probe);
    } else {
      tree.root = box;
      tree.leaves.push_back({box, 0});
    }
    for (const auto& leaf : tree.leaves) {
      const double jac = 0.5 * (leaf.box.hi[0] - leaf.box.lo[0]);
      const double mid = 0.5 * (leaf.box.hi[0] + leaf.box.lo[0]);
      for (int g = 0; g < rule.size; ++g) {
        Point point;
        point.x = mid + jac * rule.point[g];
        point.weight = rule.weight[g] * jac;
        point.alpha =
            geometry.is_physical({point.x}) ? 1.0 : geometry.fictitious_alpha();
        mesh.evaluate_cell(c, (point.x - box.lo[0]) / (box.hi[0] - box.lo[0]),
                           point.basis);
        points_.push_back(std::move(point));
      }
    }
    cell_begin_.push_back(static_cast<int>(points_.size()));
  }
}

RodNonlinearOperator::RodNonlinearOperator(const RodProblem& problem,
                                           const RodMesh& mesh,
                                           const QuadratureConfig& quadrature)
    : problem_(problem), mesh_(mesh), integration_(problem.geometry, mesh, quadrature) {
  external_ = Eigen::VectorXd::Zero(mesh_.dof_count());
  if (problem_.body_force) {
    for (const auto& point : integration_.points()) {
      if (point.alpha < 1.0) continue;  // body load acts on the physical region
      const double load = point.weight * problem_.body_force(point.x) * problem_.area;
      for (int a = 0; a < point.basis.count; ++a) {
        external_[point.basis.global[a]] += load * point.basis.value[a];
      }
    }
  }
  const auto add_traction = [&](const std::optional<FaceCondition>& condition,
                                bool left) {
    if (!condition || condition->kind != FaceCondition::Kind::Traction) return;
    LocalBasis1d basis;
    mesh_.evaluate_cell(left ? 0 : mesh_.cell_count() - 1, left ? 0.0 : 1.0, basis);
    for (int a = 0; a < basis.count; ++a) {
      external_[basis.global[a]] += condition->value * problem_.area * basis.value[a];
    }
  };
  add_traction(problem_.left, true);
  add_traction(problem_.right, false);
}

double RodNonlinearOperator::stretch_at(const IntegrationMesh1d::Point& point,
                                        std::span<const double> coefficients) const {
  double gradient = 0.0;
  for (int a = 0; a < point.basis.count; ++a) {
    gradient += coefficients[point.basis.global[a]] * point.basis.ddx[a];
  }
  return 1.0 + gradient;
}

Eigen::VectorXd RodNonlinearOperator::internal_force(std::span<const double> coefficients,
                                                     NonlinearMode mode,
                                                     Execution execution) const {
  const int cells = integration_.cell_count();
  std::vector<Eigen::VectorXd> local(cells);
  std::exception_ptr error;

  const auto compute_cell = [&](int c) {
    const auto [begin, end] = integration_.cell_range(c);
    Eigen::VectorXd force = Eigen::VectorXd::Zero(mesh_.dof_count());
    for (int i = begin; i < end; ++i) {
      const auto& point = integration_.points()[i];
      const bool reset = mode == NonlinearMode::Resetting && point.alpha < 1.0;
      const double stretch = reset ? 1.0 : stretch_at(point, coefficients);
      if (!(stretch > 0.0)) {
        throw InvalidDeformation("deformation gradient determinant fell to zero at X=" +
                                     std::to_string(point.x),
                                 point.x);
      }
      const MaterialPoint m =
          hencky_point(stretch, point.alpha, problem_.youngs_modulus,
                       problem_.poisson_ratio);
      // First Piola-Kirchhoff traction sigma * J / lambda drives the
      // reference-configuration residual.
      const double jacobian = std::pow(stretch, 1.0 - 2.0 * problem_.poisson_ratio);
      const double piola = m.stress * jacobian / stretch;
      const double scale = point.weight * problem_.area * piola;
      for (int a = 0; a < point.basis.count; ++a) {
        force[point.basis.global[a]] += scale * point.basis.ddx[a];
      }
    }
    return force;
  };

  if (execution == Execution::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cells; ++c) {
      try {
        local[c] = compute_cell(c);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
        local[c] = Eigen::VectorXd::Zero(mesh_.dof_count());
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (int c = 0; c < cells; ++c) local[c] = compute_cell(c);
  }

  Eigen::VectorXd force = Eigen::VectorXd::Zero(mesh_.dof_count());
  for (int c = 0; c < cells; ++c) force += local[c];
  return force;
}

Eigen::SparseMatrix<double> RodNonlinearOperator::tangent_matrix(
    std::span<const double> coefficients, NonlinearMode mode, Execution execution) const {
  const int cells = integration_.cell_count();
  std::vector<std::vector<Eigen::Triplet<double>>> local(cells);
  std::exception_ptr error;

  const auto compute_cell = [&](int c) {
    const auto [begin, end] = integration_.cell_range(c);
    std::vector<Eigen::Triplet<double>> entries;
    for (int i = begin; i < end; ++i) {
      const auto& point = integration_.points()[i];
      const bool reset = mode == NonlinearMode::Resetting && point.alpha < 1.0;
      const double stretch = reset ? 1.0 : stretch_at(point, coefficients);
      if (!(stretch > 0.0)) {
        throw InvalidDeformation("deformation gradient determinant fell to zero at X=" +
                                     std::to_string(point.x),
                                 point.x);
      }
      const MaterialPoint m =
          hencky_point(stretch, point.alpha, problem_.youngs_modulus,
                       problem_.poisson_ratio);
      // Material tangent dP/dlambda = (c + sigma) * J / lambda^2.
      const double jacobian = std::pow(stretch, 1.0 - 2.0 * problem_.poisson_ratio);
      const double dpiola = (m.tangent + m.stress) * jacobian / (stretch * stretch);
      const double scale = point.weight * problem_.area * dpiola;
      for (int a = 0; a < point.basis.count; ++a) {
        for (int b = 0; b < point.basis.count; ++b) {
          entries.emplace_back(point.basis.global[a], point.basis.global[b],
                               scale * point.basis.ddx[a] * point.basis.ddx[b]);
        }
      }
    }
    return entries;
  };

  if (execution == Execution::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cells; ++c) {
      try {
        local[c] = compute_cell(c);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (int c = 0; c < cells; ++c) local[c] = compute_cell(c);
  }

  std::vector<Eigen::Triplet<double>> entries;
  for (int c = 0; c < cells; ++c) {
    entries.insert(entries.end(), local[c].begin(), local[c].end());
  }
  Eigen::SparseMatrix<double> tangent(mesh_.dof_count(), mesh_.dof_count());
  tangent.setFromTriplets(entries.begin(), entries.end());
  return tangent;
}

double RodNonlinearOperator::energy(std::span<const double> coefficients,
                                    NonlinearMode mode) const {
  double total = 0.0;
  for (const auto& point : integration_.points()) {
    const bool reset = mode == NonlinearMode::Resetting && point.alpha < 1.0;
    const double stretch = reset ? 1.0 : stretch_at(point, coefficients);
    const MaterialPoint m = hencky_point(stretch, point.alpha, problem_.youngs_modulus,
                                         problem_.poisson_ratio);
    total += point.weight * problem_.area * m.energy_density;
  }
  return total;
}

DeformationState RodNonlinearOperator::state(std::span<const double> coefficients,
                                             NonlinearMode mode) const {
  DeformationState out;
  out.points.reserve(integration_.points().size());
  for (const auto& point : integration_.points()) {
    DeformationState::Point record;
    record.reference_x = point.x;
    record.alpha = point.alpha;
    const bool reset = mode == NonlinearMode::Resetting && point.alpha < 1.0;
    if (reset) {
      record.map_value = point.x;
      record.stretch = 1.0;
    } else {
      double displacement = 0.0;
      for (int a = 0; a < point.basis.count; ++a) {
        displacement += coefficients[point.basis.global[a]] * point.basis.value[a];
      }
      record.map_value = point.x + displacement;
      record.stretch = stretch_at(point, coefficients);
    }
    out.points.push_back(record);
  }
  return out;
}

NonlinearSolution newton_solve(const RodProblem& problem, const RodMesh& mesh,
                               const QuadratureConfig& quadrature,
                               const NewtonOptions& options) {
  if (options.increments < 1) {
    throw std::invalid_argument("newton_solve: increments must be >= 1");
  }
  RodNonlinearOperator op(problem, mesh, quadrature);

  std::map<int, double> dirichlet;
  if (problem.left && problem.left->kind == FaceCondition::Kind::Dirichlet) {
    dirichlet[mesh.left_boundary_dof()] = problem.left->value;
  }
  if (problem.right && problem.right->kind == FaceCondition::Kind::Dirichlet) {
    dirichlet[mesh.right_boundary_dof()] = problem.right->value;
  }

  const int n = mesh.dof_count();
  std::vector<int> free_dofs;
  for (int i = 0; i < n; ++i) {
    if (!dirichlet.count(i)) free_dofs.push_back(i);
  }
  const int m = static_cast<int>(free_dofs.size());

  NonlinearSolution solution;
  solution.coefficients = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd& u = solution.coefficients;

  for (int inc = 1; inc <= options.increments; ++inc) {
    const double factor = static_cast<double>(inc) / options.increments;

    IncrementRecord record;
    record.increment = inc;
    // Residual scale of the increment, set by the first full residual after
    // the predictor step carried the prescribed-displacement move.
    double reference_norm = 0.0;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
      Eigen::VectorXd residual;
      try {
        residual = op.internal_force(std::span<const double>(u.data(), n), options.mode,
                                     options.execution) -
                   factor * op.unit_external_load();
      } catch (const InvalidDeformation& e) {
        throw InvalidDeformation(e.what(), e.location(), inc, iter);
      }

      Eigen::SparseMatrix<double> tangent;
      try {
        tangent = op.tangent_matrix(std::span<const double>(u.data(), n), options.mode,
                                    options.execution);
      } catch (const InvalidDeformation& e) {
        throw InvalidDeformation(e.what(), e.location(), inc, iter);
      }

      if (iter > 0) {
        // Residual norms are meaningful from iter 1 on. The convergence test
        // pairs the relative criterion with the roundoff floor of the
        // residual assembly, estimated from |K| |u|.
        Eigen::VectorXd reduced(m);
        for (int i = 0; i < m; ++i) reduced[i] = residual[free_dofs[i]];
        const double norm = reduced.norm();
        record.residual_norms.push_back(norm);
        if (iter == 1) reference_norm = norm;
        const double floor =
            64.0 * std::numeric_limits<double>::epsilon() *
            (tangent.cwiseAbs() * u.cwiseAbs()).norm();
        if (norm <= std::max(options.relative_tolerance * reference_norm, floor) ||
            norm == 0.0) {
          record.converged = true;
          break;
        }
      }

      AssembledSystem system;
      system.matrix = std::move(tangent);
      system.rhs = -residual;
      for (const auto& [dof, value] : dirichlet) {
        system.constraints[dof] = iter == 0 ? factor * value - u[dof] : 0.0;
      }
      u += solve_reduced(apply_dirichlet_strong(system));
    }

    const bool converged = record.converged;
    solution.report.increments.push_back(std::move(record));
    if (converged && options.on_increment) options.on_increment(inc, u);
    if (!converged) {
      solution.report.completed = false;
      solution.report.failure = "newton iteration did not converge in increment " +
                                std::to_string(inc);
      solution.state =
          op.state(std::span<const double>(u.data(), n), options.mode);
      return solution;
    }
  }

  solution.report.completed = true;
  solution.state = op.state(std::span<const double>(u.data(), n), options.mode);
  solution.energy = op.energy(std::span<const double>(u.data(), n), options.mode);
  return solution;
}

std::vector<StressSample> stress_profile(const RodProblem& problem, const RodMesh& mesh,
                                         std::span<const double> coefficients,
                                         NonlinearMode mode,
                                         std::span<const double> sample_points) {
  std::vector<StressSample> samples;
  samples.reserve(sample_points.size());
  for (const double x : sample_points) {
    const bool physical = problem.geometry.is_physical({x});
    const double alpha = physical ? 1.0 : problem.geometry.fictitious_alpha();
    double stress = 0.0;
    if (mode == NonlinearMode::Resetting && !physical) {
      stress = 0.0;  // reset points sit at the reference configuration
    } else {
      const double stretch = 1.0 + mesh.field_derivative(coefficients, x);
      stress = hencky_point(stretch, alpha, problem.youngs_modulus,
                            problem.poisson_ratio)
                   .stress;
    }
    samples.push_back({x, stress});
  }
  return samples;
}

std::vector<NonlinearConvergenceRow> nonlinear_convergence_study(
    const RodProblem& problem, BasisFamily family, int cells, int p_min, int p_max,
    const QuadratureConfig& quadrature, const NewtonOptions& options,
    double reference_energy) {
  std::vector<NonlinearConvergenceRow> rows;
  for (int p = p_min; p <= p_max; ++p) {
    RodMesh mesh(problem.geometry.bounds().lo[0], problem.geometry.bounds().hi[0], cells,
                 family, p);
    NonlinearConvergenceRow row;
    row.family = family;
    row.degree = p;
    row.dofs = mesh.dof_count();
    try {
      const NonlinearSolution solution = newton_solve(problem, mesh, quadrature, options);
      if (!solution.report.completed) {
        row.failed = true;
        row.failure = solution.report.failure;
      } else {
        row.energy = solution.energy;
        row.rel_error = std::abs(row.energy - reference_energy) /
                        std::abs(reference_energy);
      }
    } catch (const InvalidDeformation& e) {
      row.failed = true;
      row.failure = e.what();
    } catch (const SolverError& e) {
      row.failed = true;
      row.failure = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fcm
