#ifndef FCM_BASIS_HPP
#define FCM_BASIS_HPP

#include <array>
#include <vector>

namespace fcm {

inline constexpr int kMaxFunctions1d = 64;

/// Values and parametric derivatives of the nonzero 1D shape functions at one
/// evaluation point.
struct BasisValues1d {
  int count = 0;
  std::array<double, kMaxFunctions1d> value{};
  std::array<double, kMaxFunctions1d> deriv{};
};

/// Hierarchic 1D basis on [-1,1]: the two linear nodal modes followed by the
/// integrated Legendre modes
///
///   phi_j(xi) = sqrt((2j-1)/2) * integral_{-1}^{xi} P_{j-1}(t) dt,  j = 2..p,
///
/// returned in the order [N1, N2, phi_2, ..., phi_p] (p+1 entries). Raising p
/// appends functions without changing the existing ones.
BasisValues1d eval_p_version_1d(int degree, double xi);

/// Clamped B-spline patch on equidistant knots. The parametric domain is
/// [0, spans]; interior knots sit at the integers, the end knots carry
/// multiplicity degree+1. Function i is supported on spans [i-degree, i].
class BsplineBasis1d {
 public:
  BsplineBasis1d(int degree, int spans);

  int degree() const { return degree_; }
  int spans() const { return spans_; }
  int function_count() const { return spans_ + degree_; }

  /// Index of the knot span containing xi (the last span for xi == spans).
  int span_of(double xi) const;

  /// Knot value with clamping: knot(i) = clamp(i - degree, 0, spans).
  double knot(int i) const;

  struct SpanValues {
    int span = 0;
    int first_function = 0;  // global index of the first nonzero function
    BasisValues1d basis;     // degree+1 nonzero functions, left to right
  };

  /// Nonzero functions and derivatives at xi. Throws std::domain_error for
  /// points outside the patch.
  SpanValues evaluate(double xi) const;

 private:
  int degree_;
  int spans_;
};

enum class BasisFamily { PVersion, Bspline };
enum class TensorSpace { Full, Trunk };

/// One member of the 2D tensor-product function set of a p-version cell.
struct TensorMode {
  enum class Kind { Corner, EdgeBottom, EdgeTop, EdgeLeft, EdgeRight, Internal };
  Kind kind;
  int i;  // x-direction mode number (corner: 0/1, edge/internal: 2..p)
  int j;  // y-direction mode number
};

/// Enumerates the cell-local 2D p-version function set in a fixed order:
/// 4 corners, bottom/top/left/right edge modes, then internal modes.
/// The trunk space keeps internal modes with i + j <= degree only.
std::vector<TensorMode> tensor_modes_2d(int degree, TensorSpace space);

inline constexpr int kMaxFunctions2d = 33 * 33;

struct BasisValues2d {
  int count = 0;
  std::array<double, kMaxFunctions2d> value{};
  std::array<double, kMaxFunctions2d> dxi{};
  std::array<double, kMaxFunctions2d> deta{};
};

/// Tensor-product evaluation of the 2D p-version function set on [-1,1]^2,
/// ordered as in tensor_modes_2d.
void eval_p_version_2d(int degree, TensorSpace space, double xi, double eta,
                       BasisValues2d& out);

}  // namespace fcm

#endif
