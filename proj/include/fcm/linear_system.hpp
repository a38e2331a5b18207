#ifndef FCM_LINEAR_SYSTEM_HPP
#define FCM_LINEAR_SYSTEM_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcm {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// Assembled discrete system: matrix, load vector and the strong constraint
/// bookkeeping (dof -> prescribed value).
struct AssembledSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  std::map<int, double> constraints;
  bool symmetric = true;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// System after strong Dirichlet elimination; keeps the free-dof map so full
/// coefficient vectors can be reconstructed.
struct ReducedSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  std::vector<int> free_dofs;
  int full_size = 0;
  std::map<int, double> constraints;
  bool symmetric = true;
};

/// Eliminates constrained dofs; the right-hand side receives the usual
/// -K_ic * u_c moves. Throws std::out_of_range for constraints on dofs that
/// do not exist.
ReducedSystem apply_dirichlet_strong(const AssembledSystem& system);

/// Sparse LU solve of the reduced system with a residual check (relative
/// residual <= 1e-10 after one step of iterative refinement); returns the
/// full coefficient vector with constrained entries filled in.
Eigen::VectorXd solve_reduced(const ReducedSystem& reduced);

/// Convenience: eliminate + solve.
Eigen::VectorXd solve_linear(const AssembledSystem& system);

/// Quadratic form energy 1/2 u^T K u (the linear-elastic strain energy when K
/// is the assembled stiffness, penalized fictitious contribution included).
double strain_energy(const Eigen::VectorXd& u, const Eigen::SparseMatrix<double>& K);

}  // namespace fcm

#endif
