#include "fcm/transport.hpp"

#include <cmath>

namespace fcm {
namespace {

struct CellContribution2d {
  LocalBasis2d basis;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd vector;
};

CellContribution2d element_transport(const TransportProblem& problem,
                                     const GridMesh2d& mesh, int cell,
                                     const QuadratureConfig& quadrature) {
  const auto& geometry = problem.geometry;
  const Box<2> box = mesh.cell_box(cell);
  const ProbeRule probe = quadrature.probe_for(mesh.degree());
  const GaussRule& rule = gauss_rule(quadrature.points_for(mesh.degree()));

  CellContribution2d out;
  mesh.evaluate_cell(cell, 0.5, 0.5, out.basis);
  const int n = out.basis.count;
  out.matrix = Eigen::MatrixXd::Zero(n, n);
  out.vector = Eigen::VectorXd::Zero(n);

  SubCellTree<2> tree;
  if (geometry.is_cut(box, probe)) {
    tree = build_subcell_tree(box, geometry, quadrature.max_depth, probe);
  } else {
    tree.root = box;
    tree.leaves.push_back({box, 0});
  }

  LocalBasis2d basis;
  for (const auto& leaf : tree.leaves) {
    const double jx = 0.5 * (leaf.box.hi[0] - leaf.box.lo[0]);
    const double jy = 0.5 * (leaf.box.hi[1] - leaf.box.lo[1]);
    const double mx = 0.5 * (leaf.box.hi[0] + leaf.box.lo[0]);
    const double my = 0.5 * (leaf.box.hi[1] + leaf.box.lo[1]);
    for (int gy = 0; gy < rule.size; ++gy) {
      for (int gx = 0; gx < rule.size; ++gx) {
        const double x = mx + jx * rule.point[gx];
        const double y = my + jy * rule.point[gy];
        const double w = rule.weight[gx] * rule.weight[gy] * jx * jy;
        const bool physical = geometry.is_physical({x, y});
        const double alpha = physical ? 1.0 : geometry.fictitious_alpha();
        mesh.evaluate_cell(cell, (x - box.lo[0]) / (box.hi[0] - box.lo[0]),
                           (y - box.lo[1]) / (box.hi[1] - box.lo[1]), basis);
        const double conv = w * alpha * problem.velocity_x;
        const double diff = w * alpha * problem.diffusion;
        for (int a = 0; a < n; ++a) {
          // row a: test function; convection carries the trial derivative.
          const double va = basis.value[a];
          const double dax = basis.ddx[a];
          const double day = basis.ddy[a];
          for (int b = 0; b < n; ++b) {
            out.matrix(a, b) += conv * va * basis.ddx[b] +
                                diff * (dax * basis.ddx[b] + day * basis.ddy[b]);
          }
        }
        if (physical && problem.source) {
          const double load = w * problem.source(x, y);
          for (int a = 0; a < n; ++a) out.vector[a] += load * basis.value[a];
        }
      }
    }
  }
  return out;
}

void scatter2d(const CellContribution2d& e, std::vector<Eigen::Triplet<double>>& entries,
               Eigen::VectorXd& rhs) {
  const int n = e.basis.count;
  for (int a = 0; a < n; ++a) {
    rhs[e.basis.global[a]] += e.vector[a];
    for (int b = 0; b < n; ++b) {
      entries.emplace_back(e.basis.global[a], e.basis.global[b], e.matrix(a, b));
    }
  }
}

void constrain_face_constant(const GridMesh2d& mesh, Face2d face, double value,
                             std::map<int, double>& constraints) {
  const std::vector<int> dofs = mesh.face_dofs(face);
  if (mesh.family() == BasisFamily::PVersion) {
    // Vertex dofs come first in face_dofs; they carry the value, the edge
    // modes vanish for constant boundary data.
    const int vertices =
        (face == Face2d::Left || face == Face2d::Right) ? mesh.cells_y() + 1
                                                        : mesh.cells_x() + 1;
    for (size_t i = 0; i < dofs.size(); ++i) {
      constraints[dofs[i]] = static_cast<int>(i) < vertices ? value : 0.0;
    }
  } else {
    for (const int dof : dofs) constraints[dof] = value;
  }
}

}  // namespace

AssembledSystem assemble_transport(const TransportProblem& problem,
                                   const GridMesh2d& mesh,
                                   const QuadratureConfig& quadrature,
                                   Execution execution) {
  const int cells = mesh.cell_count();
  AssembledSystem system;
  system.symmetric = problem.velocity_x == 0.0;
  system.rhs = Eigen::VectorXd::Zero(mesh.dof_count());
  std::vector<Eigen::Triplet<double>> entries;

  if (execution == Execution::OpenMP) {
    std::vector<CellContribution2d> contributions(cells);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cells; ++c) {
      contributions[c] = element_transport(problem, mesh, c, quadrature);
    }
    for (int c = 0; c < cells; ++c) scatter2d(contributions[c], entries, system.rhs);
  } else {
    for (int c = 0; c < cells; ++c) {
      const CellContribution2d e = element_transport(problem, mesh, c, quadrature);
      scatter2d(e, entries, system.rhs);
    }
  }

  system.matrix.resize(mesh.dof_count(), mesh.dof_count());
  system.matrix.setFromTriplets(entries.begin(), entries.end());

  constrain_face_constant(mesh, Face2d::Left, problem.left_value, system.constraints);
  constrain_face_constant(mesh, Face2d::Right, problem.right_value, system.constraints);
  return system;
}

ConcentrationField solve_transport(const TransportProblem& problem,
                                   const GridMesh2d& mesh,
                                   const QuadratureConfig& quadrature,
                                   Execution execution) {
  const AssembledSystem system = assemble_transport(problem, mesh, quadrature, execution);
  return ConcentrationField(mesh, solve_linear(system));
}

std::vector<ProfileSample> diagonal_profile(const ConcentrationField& field,
                                            int samples) {
  if (samples < 2) throw std::invalid_argument("diagonal_profile: need >= 2 samples");
  const Box<2>& rect = field.mesh().rect();
  const double wx = rect.hi[0] - rect.lo[0];
  const double wy = rect.hi[1] - rect.lo[1];
  const double length = std::hypot(wx, wy);
  std::vector<ProfileSample> profile;
  profile.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    profile.push_back(
        {t * length, field.value(rect.lo[0] + t * wx, rect.lo[1] + t * wy)});
  }
  return profile;
}

TransportProblem make_transport_problem(const std::vector<CircleSpec>& inclusions,
                                        int alpha_exponent) {
  const Box<2> bounds = make_rect(0.0, 0.0, 1.0, 1.0);
  RegionPtr<2> physical;
  if (inclusions.empty()) {
    physical = regions::box_region<2>(bounds);
  } else {
    std::vector<RegionPtr<2>> circles;
    circles.reserve(inclusions.size());
    for (const auto& c : inclusions) {
      circles.push_back(regions::circle(c.cx, c.cy, c.r));
    }
    physical = regions::region_complement(regions::region_union(std::move(circles)));
  }
  TransportProblem problem{EmbeddedGeometry<2>(bounds, std::move(physical),
                                               alpha_exponent)};
  problem.velocity_x = 1.0;
  problem.diffusion = 1.0;
  problem.left_value = 0.0;
  problem.right_value = 1.0;
  return problem;
}

std::vector<CircleSpec> default_inclusions() {
  return {{0.35, 0.55, 0.16}, {0.68, 0.30, 0.13}};
}

}  // namespace fcm
