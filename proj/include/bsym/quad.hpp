#pragma once

#include "bsym/exponent.hpp"
#include "bsym/expr.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace bsym {

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 40;

  /// Throws std::invalid_argument unless tolerances are positive and
  /// max_depth >= 1.
  void validate() const;
};

/// Integral of `a` from 0 to `t`. For t < 0 this is minus the integral over
/// [t, 0]. Adaptive 7/15-point Gauss-Kronrod bisection.
double integral_A(const Expr& a, double t, const QuadConfig& cfg = {});

/// Marches the pair
///
///   A(t) = int_0^t a(s) ds,   W(t) = int_0^t b(s) exp(k A(s)) ds
///
/// outward from t = 0 on Gauss-Kronrod segments. Inside a segment A is known
/// at every node through the exact integral of the 15-node interpolant of a,
/// so no inner quadrature is repeated. Segments shrink by halving until both
/// components meet max(abs_tol, rel_tol * |value|).
class NestedIntegral {
public:
  struct Point {
    double t = 0.0;
    double A = 0.0;
    double W = 0.0;
  };

  NestedIntegral(Expr a, Expr b, double weight_exponent, QuadConfig cfg = {});

  /// Continues from `from` to `to` (either direction).
  Point advance(const Point& from, double to) const;

  /// Values at each of `ts`, returned in input order. Points on each side of
  /// zero are visited in a single outward sweep.
  std::vector<Point> sweep(std::span<const double> ts) const;

  double weight_exponent() const noexcept { return k_; }

private:
  Point march(const Point& from, double to, double& h_hint) const;

  Expr a_;
  Expr b_;
  double k_;
  QuadConfig cfg_;
};

/// int_0^t b(s) exp(k int_0^s a) ds.
double weighted_integral(const Expr& a, const Expr& b, double k, double t, const QuadConfig& cfg = {});

/// int_0^t b(s) exp((n - 1) int_0^s a) ds.
double integral_B(const Expr& a, const Expr& b, const RationalExponent& n, double t, const QuadConfig& cfg = {});

/// Integral identities relating the weighted integral over [-t, 0] to one over
/// [0, t] under parity hypotheses on (a, b):
///
///   Eq4 (a even, b odd):  int_{-t}^0 b e^{-(n-1)A} = - int_0^t b e^{(n-1)A}
///   Eq7 (a odd,  b even): int_{-t}^0 b e^{(n-1)A}  =   int_0^t b e^{(n-1)A}
///   Eq8 (a even, b even): int_{-t}^0 b e^{(n-1)A}  =   int_0^t b e^{-(n-1)A}
///   Eq9 (a even, b even): int_{-t}^0 b e^{-(n-1)A} =   int_0^t b e^{(n-1)A}
enum class Identity { Eq4, Eq7, Eq8, Eq9 };

std::string_view to_string(Identity id);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Throws ParityViolation naming the failed hypothesis, or returns nothing.
void require_identity_parity(Identity id, const Expr& a, const Expr& b);

IdentitySides identity_sides(Identity id, const Expr& a, const Expr& b, const RationalExponent& n, double t,
                             const QuadConfig& cfg = {});

/// |lhs - rhs| of the identity at t. Throws ParityViolation when (a, b) do
/// not satisfy the identity's parity hypotheses.
double check_identity(Identity id, const Expr& a, const Expr& b, const RationalExponent& n, double t,
                      const QuadConfig& cfg = {});

} // namespace bsym
