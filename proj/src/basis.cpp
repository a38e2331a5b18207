#include "fcm/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace fcm {
namespace {

// Legendre values P_0..P_p at xi via the Bonnet recurrence.
void legendre_values(int p, double xi, double* values) {
  values[0] = 1.0;
  if (p >= 1) values[1] = xi;
  for (int j = 1; j < p; ++j) {
    values[j + 1] = ((2 * j + 1) * xi * values[j] - j * values[j - 1]) / (j + 1);
  }
}

}  // namespace

BasisValues1d eval_p_version_1d(int degree, double xi) {
  if (degree < 1) throw std::invalid_argument("eval_p_version_1d: degree must be >= 1");
  if (degree + 1 > kMaxFunctions1d) {
    throw std::invalid_argument("eval_p_version_1d: degree too large");
  }
  if (xi < -1.0 - 1e-12 || xi > 1.0 + 1e-12) {
    throw std::domain_error("eval_p_version_1d: xi outside [-1,1]");
  }
  xi = std::clamp(xi, -1.0, 1.0);

  BasisValues1d out;
  out.count = degree + 1;
  out.value[0] = 0.5 * (1.0 - xi);
  out.deriv[0] = -0.5;
  out.value[1] = 0.5 * (1.0 + xi);
  out.deriv[1] = 0.5;

  if (degree >= 2) {
    double legendre[kMaxFunctions1d + 1];
    legendre_values(degree, xi, legendre);
    for (int j = 2; j <= degree; ++j) {
      // phi_j = (P_j - P_{j-2}) / sqrt(2(2j-1)) and phi_j' = sqrt((2j-1)/2) P_{j-1},
      // equivalent forms of the integrated-Legendre definition.
      const double scale = std::sqrt(2.0 * (2.0 * j - 1.0));
      out.value[j] = (legendre[j] - legendre[j - 2]) / scale;
      out.deriv[j] = std::sqrt((2.0 * j - 1.0) / 2.0) * legendre[j - 1];
    }
  }
  return out;
}

BsplineBasis1d::BsplineBasis1d(int degree, int spans) : degree_(degree), spans_(spans) {
  if (degree < 1) throw std::invalid_argument("BsplineBasis1d: degree must be >= 1");
  if (spans < 1) throw std::invalid_argument("BsplineBasis1d: spans must be >= 1");
  if (degree + 1 > kMaxFunctions1d) {
    throw std::invalid_argument("BsplineBasis1d: degree too large");
  }
}

int BsplineBasis1d::span_of(double xi) const {
  const int s = static_cast<int>(std::floor(xi));
  return std::clamp(s, 0, spans_ - 1);
}

double BsplineBasis1d::knot(int i) const {
  return std::clamp(static_cast<double>(i - degree_), 0.0, static_cast<double>(spans_));
}

BsplineBasis1d::SpanValues BsplineBasis1d::evaluate(double xi) const {
  if (xi < -1e-12 || xi > spans_ + 1e-12) {
    throw std::domain_error("BsplineBasis1d: xi outside the patch");
  }
  xi = std::clamp(xi, 0.0, static_cast<double>(spans_));
  const int span = span_of(xi);
  const int p = degree_;
  // Knot index such that knot(k) <= xi < knot(k+1) in the padded numbering.
  const int k = span + p;

  // Triangular Cox-de Boor table; ndu[j][r] follows the usual layout of the
  // basis-functions-with-derivatives algorithm.
  double ndu[kMaxFunctions1d][kMaxFunctions1d];
  double left[kMaxFunctions1d];
  double right[kMaxFunctions1d];
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - knot(k + 1 - j);
    right[j] = knot(k + j) - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double den = right[r + 1] + left[j - r];
      const double temp = den != 0.0 ? ndu[j - 1][r] / den : 0.0;
      ndu[j][r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  SpanValues out;
  out.span = span;
  out.first_function = span;
  out.basis.count = p + 1;
  for (int r = 0; r <= p; ++r) out.basis.value[r] = ndu[p][r];

  // First derivative from the degree p-1 row:
  // N'_{i,p} = p * (N_{i,p-1}/(u_{i+p}-u_i) - N_{i+1,p-1}/(u_{i+p+1}-u_{i+1})).
  for (int r = 0; r <= p; ++r) {
    double d = 0.0;
    if (r > 0) {
      const double den = knot(k - p + r + p) - knot(k - p + r);
      if (den != 0.0) d += ndu[p - 1][r - 1] / den;
    }
    if (r < p) {
      const double den = knot(k - p + r + p + 1) - knot(k - p + r + 1);
      if (den != 0.0) d -= ndu[p - 1][r] / den;
    }
    out.basis.deriv[r] = p * d;
  }
  return out;
}

std::vector<TensorMode> tensor_modes_2d(int degree, TensorSpace space) {
  if (degree < 1) throw std::invalid_argument("tensor_modes_2d: degree must be >= 1");
  using Kind = TensorMode::Kind;
  std::vector<TensorMode> modes;
  modes.push_back({Kind::Corner, 0, 0});
  modes.push_back({Kind::Corner, 1, 0});
  modes.push_back({Kind::Corner, 0, 1});
  modes.push_back({Kind::Corner, 1, 1});
  for (int i = 2; i <= degree; ++i) modes.push_back({Kind::EdgeBottom, i, 0});
  for (int i = 2; i <= degree; ++i) modes.push_back({Kind::EdgeTop, i, 1});
  for (int j = 2; j <= degree; ++j) modes.push_back({Kind::EdgeLeft, 0, j});
  for (int j = 2; j <= degree; ++j) modes.push_back({Kind::EdgeRight, 1, j});
  for (int i = 2; i <= degree; ++i) {
    for (int j = 2; j <= degree; ++j) {
      if (space == TensorSpace::Trunk && i + j > degree) continue;
      modes.push_back({Kind::Internal, i, j});
    }
  }
  return modes;
}

void eval_p_version_2d(int degree, TensorSpace space, double xi, double eta,
                       BasisValues2d& out) {
  const BasisValues1d fx = eval_p_version_1d(degree, xi);
  const BasisValues1d fy = eval_p_version_1d(degree, eta);
  const auto modes = tensor_modes_2d(degree, space);
  out.count = static_cast<int>(modes.size());
  // Mode numbers index straight into the 1D set: 0/1 are the nodal modes,
  // j >= 2 the integrated Legendre modes.
  for (size_t m = 0; m < modes.size(); ++m) {
    const int a = modes[m].i;
    const int b = modes[m].j;
    out.value[m] = fx.value[a] * fy.value[b];
    out.dxi[m] = fx.deriv[a] * fy.value[b];
    out.deta[m] = fx.value[a] * fy.deriv[b];
  }
}

}  // namespace fcm
