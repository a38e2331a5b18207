#include "fcm/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fcm {
namespace {

GaussRule compute_gauss_rule(int n) {
  GaussRule rule;
  rule.size = n;
  rule.point.resize(n);
  rule.weight.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 1; j < n; ++j) {
        const double p2 = ((2 * j + 1) * x * p1 - j * p0) / (j + 1);
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.point[i] = -x;
    rule.point[n - 1 - i] = x;
    rule.weight[i] = w;
    rule.weight[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.point[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  if (n < 1 || n > kMaxGaussPoints) {
    throw std::invalid_argument("gauss_rule: point count out of range");
  }
  static const std::vector<GaussRule> table = [] {
    std::vector<GaussRule> rules(kMaxGaussPoints + 1);
    for (int k = 1; k <= kMaxGaussPoints; ++k) rules[k] = compute_gauss_rule(k);
    return rules;
  }();
  return table[n];
}

template <int Dim>
SubCellTree<Dim> build_subcell_tree(const Box<Dim>& cell,
                                    const EmbeddedGeometry<Dim>& geometry,
                                    int max_depth, const ProbeRule& probe) {
  if (max_depth < 0) throw std::invalid_argument("build_subcell_tree: negative depth");
  SubCellTree<Dim> tree;
  tree.root = cell;
  tree.max_depth = max_depth;

  // Iterative depth-first descent with an explicit stack; children are pushed
  // in reverse so leaves come out in natural child order.
  struct Node {
    Box<Dim> box;
    int level;
  };
  std::vector<Node> stack{{cell, 0}};
  while (!stack.empty()) {
    const Node node = stack.back();
    stack.pop_back();
    if (node.level < max_depth && geometry.is_cut(node.box, probe)) {
      for (int c = (1 << Dim) - 1; c >= 0; --c) {
        stack.push_back({node.box.child(c), node.level + 1});
      }
    } else {
      tree.leaves.push_back({node.box, node.level});
    }
  }
  return tree;
}

double composed_integrate(const std::function<double(double)>& integrand,
                          const SubCellTree<1>& tree, int points_per_direction) {
  const GaussRule& rule = gauss_rule(points_per_direction);
  double sum = 0.0;
  for (const auto& leaf : tree.leaves) {
    const double jac = 0.5 * (leaf.box.hi[0] - leaf.box.lo[0]);
    const double mid = 0.5 * (leaf.box.hi[0] + leaf.box.lo[0]);
    double local = 0.0;
    for (int i = 0; i < rule.size; ++i) {
      local += rule.weight[i] * integrand(mid + jac * rule.point[i]);
    }
    sum += local * jac;
  }
  return sum;
}

double composed_integrate(const std::function<double(double, double)>& integrand,
                          const SubCellTree<2>& tree, int points_per_direction) {
  const GaussRule& rule = gauss_rule(points_per_direction);
  double sum = 0.0;
  for (const auto& leaf : tree.leaves) {
    const double jx = 0.5 * (leaf.box.hi[0] - leaf.box.lo[0]);
    const double jy = 0.5 * (leaf.box.hi[1] - leaf.box.lo[1]);
    const double mx = 0.5 * (leaf.box.hi[0] + leaf.box.lo[0]);
    const double my = 0.5 * (leaf.box.hi[1] + leaf.box.lo[1]);
    double local = 0.0;
    for (int j = 0; j < rule.size; ++j) {
      for (int i = 0; i < rule.size; ++i) {
        local += rule.weight[i] * rule.weight[j] *
                 integrand(mx + jx * rule.point[i], my + jy * rule.point[j]);
      }
    }
    sum += local * jx * jy;
  }
  return sum;
}

template SubCellTree<1> build_subcell_tree<1>(const Box<1>&, const EmbeddedGeometry<1>&,
                                              int, const ProbeRule&);
template SubCellTree<2> build_subcell_tree<2>(const Box<2>&, const EmbeddedGeometry<2>&,
                                              int, const ProbeRule&);
template struct SubCellTree<1>;
template struct SubCellTree<2>;

}  // namespace fcm
