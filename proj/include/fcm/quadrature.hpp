#ifndef FCM_QUADRATURE_HPP
#define FCM_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "fcm/geometry.hpp"

namespace fcm {

/// Gauss-Legendre rule on [-1,1]: exact for polynomials of degree 2n-1,
/// symmetric abscissae, weights summing to 2.
struct GaussRule {
  int size = 0;
  std::vector<double> point;
  std::vector<double> weight;
};

inline constexpr int kMaxGaussPoints = 64;

/// Cached rule lookup, thread safe. Throws std::invalid_argument outside
/// [1, kMaxGaussPoints].
const GaussRule& gauss_rule(int n);

/// Hierarchical bisection of a cut cell (binary tree in 1D, quadtree in 2D).
/// Cut nodes split until max_depth; leaves are stored in depth-first order so
/// composed integration is deterministic.
template <int Dim>
struct SubCellTree {
  struct Leaf {
    Box<Dim> box;
    int level = 0;
  };
  Box<Dim> root;
  int max_depth = 0;
  std::vector<Leaf> leaves;
};

template <int Dim>
SubCellTree<Dim> build_subcell_tree(const Box<Dim>& cell,
                                    const EmbeddedGeometry<Dim>& geometry,
                                    int max_depth, const ProbeRule& probe = ProbeRule{});

/// Composed Gauss quadrature over the leaves of a sub-cell tree.
double composed_integrate(const std::function<double(double)>& integrand,
                          const SubCellTree<1>& tree, int points_per_direction);
double composed_integrate(const std::function<double(double, double)>& integrand,
                          const SubCellTree<2>& tree, int points_per_direction);

extern template struct SubCellTree<1>;
extern template struct SubCellTree<2>;

}  // namespace fcm

#endif
