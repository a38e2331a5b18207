#include "fcm/linear_system.hpp"

#include <Eigen/SparseLU>

namespace fcm {

ReducedSystem apply_dirichlet_strong(const AssembledSystem& system) {
  const int n = system.size();
  for (const auto& [dof, value] : system.constraints) {
    (void)value;
    if (dof < 0 || dof >= n) {
      throw std::out_of_range("apply_dirichlet_strong: constraint on dof " +
                              std::to_string(dof) + " of a system of size " +
                              std::to_string(n));
    }
  }

  std::vector<int> to_free(n, -1);
  ReducedSystem reduced;
  reduced.full_size = n;
  reduced.constraints = system.constraints;
  reduced.symmetric = system.symmetric;
  for (int i = 0; i < n; ++i) {
    if (!system.constraints.count(i)) {
      to_free[i] = static_cast<int>(reduced.free_dofs.size());
      reduced.free_dofs.push_back(i);
    }
  }
  const int m = static_cast<int>(reduced.free_dofs.size());

  reduced.rhs.resize(m);
  for (int i = 0; i < m; ++i) reduced.rhs[i] = system.rhs[reduced.free_dofs[i]];

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(system.matrix.nonZeros());
  for (int col = 0; col < system.matrix.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.matrix, col); it; ++it) {
      const int fr = to_free[it.row()];
      const int fc = to_free[it.col()];
      if (fr >= 0 && fc >= 0) {
        entries.emplace_back(fr, fc, it.value());
      } else if (fr >= 0 && fc < 0) {
        reduced.rhs[fr] -= it.value() * system.constraints.at(it.col());
      }
    }
  }
  reduced.matrix.resize(m, m);
  reduced.matrix.setFromTriplets(entries.begin(), entries.end());
  return reduced;
}

Eigen::VectorXd solve_reduced(const ReducedSystem& reduced) {
  const int m = static_cast<int>(reduced.free_dofs.size());
  Eigen::VectorXd free_solution(m);
  if (m > 0) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(reduced.matrix);
    if (lu.info() != Eigen::Success) {
      throw SolverError("solve_reduced: factorization failed (singular system)", -1.0);
    }
    free_solution = lu.solve(reduced.rhs);
    // One step of iterative refinement keeps badly scaled penalized systems
    // at a small residual.
    Eigen::VectorXd r = reduced.rhs - reduced.matrix * free_solution;
    free_solution += lu.solve(r);
    r = reduced.rhs - reduced.matrix * free_solution;
    const double scale =
        std::max(reduced.rhs.norm(), reduced.matrix.norm() * free_solution.norm());
    const double rel = scale > 0.0 ? r.norm() / scale : r.norm();
    if (!(rel <= 1e-10)) {
      throw SolverError("solve_reduced: relative residual " + std::to_string(rel) +
                            " exceeds 1e-10",
                        rel);
    }
  }

  Eigen::VectorXd full = Eigen::VectorXd::Zero(reduced.full_size);
  for (int i = 0; i < m; ++i) full[reduced.free_dofs[i]] = free_solution[i];
  for (const auto& [dof, value] : reduced.constraints) full[dof] = value;
  return full;
}

Eigen::VectorXd solve_linear(const AssembledSystem& system) {
  return solve_reduced(apply_dirichlet_strong(system));
}

double strain_energy(const Eigen::VectorXd& u, const Eigen::SparseMatrix<double>& K) {
  if (u.size() != K.rows()) {
    throw std::invalid_argument("strain_energy: dimension mismatch");
  }
  return 0.5 * u.dot(K * u);
}

}  // namespace fcm
