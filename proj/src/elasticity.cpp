#include "fcm/elasticity.hpp"

#include <cmath>

namespace fcm {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct CellContribution {
  LocalBasis1d basis;  // dof indices of the cell (count + global)
  Eigen::MatrixXd matrix;
  Eigen::VectorXd vector;
};

CellContribution element_rod(const RodProblem& problem, const RodMesh& mesh, int cell,
                             const QuadratureConfig& quadrature) {
  const auto& geometry = problem.geometry;
  const Box<1> box = mesh.cell_box(cell);
  const ProbeRule probe = quadrature.probe_for(mesh.degree());
  const GaussRule& rule = gauss_rule(quadrature.points_for(mesh.degree()));

  CellContribution out;
  mesh.evaluate_cell(cell, 0.5, out.basis);
  const int n = out.basis.count;
  out.matrix = Eigen::MatrixXd::Zero(n, n);
  out.vector = Eigen::VectorXd::Zero(n);

  SubCellTree<1> tree;
  if (geometry.is_cut(box, probe)) {
    tree = build_subcell_tree(box, geometry, quadrature.max_depth, probe);
  } else {
    tree.root = box;
    tree.leaves.push_back({box, 0});
  }

  LocalBasis1d basis;
  const double ea = problem.youngs_modulus * problem.area;
  for (const auto& leaf : tree.leaves) {
    const double jac = 0.5 * (leaf.box.hi[0] - leaf.box.lo[0]);
    const double mid = 0.5 * (leaf.box.hi[0] + leaf.box.lo[0]);
    for (int g = 0; g < rule.size; ++g) {
      const double x = mid + jac * rule.point[g];
      const double w = rule.weight[g] * jac;
      const bool physical = geometry.is_physical({x});
      const double alpha = physical ? 1.0 : geometry.fictitious_alpha();
      mesh.evaluate_cell(cell, (x - box.lo[0]) / (box.hi[0] - box.lo[0]), basis);
      const double scale = w * alpha * ea;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          out.matrix(a, b) += scale * basis.ddx[a] * basis.ddx[b];
        }
      }
      if (physical && problem.body_force) {
        const double load = w * problem.body_force(x) * problem.area;
        for (int a = 0; a < n; ++a) out.vector[a] += load * basis.value[a];
      }
    }
  }
  return out;
}

void scatter(const CellContribution& e, std::vector<Eigen::Triplet<double>>& entries,
             Eigen::VectorXd& rhs) {
  const int n = e.basis.count;
  for (int a = 0; a < n; ++a) {
    rhs[e.basis.global[a]] += e.vector[a];
    for (int b = 0; b < n; ++b) {
      entries.emplace_back(e.basis.global[a], e.basis.global[b], e.matrix(a, b));
    }
  }
}

void apply_face_conditions(const RodProblem& problem, const RodMesh& mesh,
                           AssembledSystem& system) {
  const auto face = [&](const std::optional<FaceCondition>& condition, bool left) {
    if (!condition) return;
    if (condition->kind == FaceCondition::Kind::Dirichlet) {
      const int dof = left ? mesh.left_boundary_dof() : mesh.right_boundary_dof();
      system.constraints[dof] = condition->value;
    } else {
      LocalBasis1d basis;
      mesh.evaluate_cell(left ? 0 : mesh.cell_count() - 1, left ? 0.0 : 1.0, basis);
      const double force = condition->value * problem.area;
      for (int a = 0; a < basis.count; ++a) {
        system.rhs[basis.global[a]] += force * basis.value[a];
      }
    }
  };
  face(problem.left, true);
  face(problem.right, false);
}

}  // namespace

AssembledSystem assemble_rod(const RodProblem& problem, const RodMesh& mesh,
                             const QuadratureConfig& quadrature, Execution execution) {
  const int cells = mesh.cell_count();
  AssembledSystem system;
  system.symmetric = true;
  system.rhs = Eigen::VectorXd::Zero(mesh.dof_count());
  std::vector<Eigen::Triplet<double>> entries;

  if (execution == Execution::OpenMP) {
    std::vector<CellContribution> contributions(cells);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cells; ++c) {
      contributions[c] = element_rod(problem, mesh, c, quadrature);
    }
    // Deterministic single-writer merge in cell order.
    for (int c = 0; c < cells; ++c) scatter(contributions[c], entries, system.rhs);
  } else {
    for (int c = 0; c < cells; ++c) {
      const CellContribution e = element_rod(problem, mesh, c, quadrature);
      scatter(e, entries, system.rhs);
    }
  }

  system.matrix.resize(mesh.dof_count(), mesh.dof_count());
  system.matrix.setFromTriplets(entries.begin(), entries.end());
  apply_face_conditions(problem, mesh, system);
  return system;
}

std::vector<StrainSample> strain_field(const RodMesh& mesh,
                                       std::span<const double> coefficients,
                                       std::span<const double> sample_points) {
  std::vector<StrainSample> samples;
  samples.reserve(sample_points.size());
  for (const double x : sample_points) {
    samples.push_back({x, mesh.field_derivative(coefficients, x)});
  }
  return samples;
}

std::vector<ConvergenceRow> linear_convergence_study(const RodProblem& problem,
                                                     BasisFamily family, int cells,
                                                     int p_min, int p_max,
                                                     const QuadratureConfig& quadrature,
                                                     double reference_energy) {
  std::vector<ConvergenceRow> rows;
  for (int p = p_min; p <= p_max; ++p) {
    RodMesh mesh(problem.geometry.bounds().lo[0], problem.geometry.bounds().hi[0], cells,
                 family, p);
    const AssembledSystem system = assemble_rod(problem, mesh, quadrature);
    const Eigen::VectorXd u = solve_linear(system);
    const double energy = strain_energy(u, system.matrix);
    rows.push_back({family, p, mesh.dof_count(), energy,
                    std::abs(energy - reference_energy) / reference_energy});
  }
  return rows;
}

RodProblem two_rod_problem(int alpha_exponent) {
  RodProblem problem{two_rod_geometry(alpha_exponent)};
  problem.body_force = [](double x) {
    return x <= 1.0 ? 0.05 * std::sin(4.0 * kPi * x) : 0.0;
  };
  problem.left = FaceCondition::dirichlet(0.0);
  problem.right = FaceCondition::dirichlet(0.02);
  return problem;
}

RodProblem rigid_pull_problem(int alpha_exponent, double pull) {
  RodProblem problem{two_rod_geometry(alpha_exponent)};
  problem.left = FaceCondition::dirichlet(0.0);
  problem.right = FaceCondition::dirichlet(pull);
  return problem;
}

EmbeddedGeometry<1> two_rod_geometry(int alpha_exponent) {
  auto physical = regions::region_union(
      {regions::interval(0.0, 1.0), regions::interval(7.0 / 3.0, 3.0)});
  return EmbeddedGeometry<1>(make_interval(0.0, 3.0), std::move(physical),
                             alpha_exponent);
}

}  // namespace fcm
