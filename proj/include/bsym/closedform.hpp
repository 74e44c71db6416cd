#pragma once

#include "bsym/exponent.hpp"
#include "bsym/expr.hpp"
#include "bsym/quad.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace bsym {

/// The initial-value problem y' = a(t) y + b(t) y^n, y(0) = d.
struct ProblemSpec {
  Expr a;
  Expr b;
  RationalExponent n;
  double d = 1.0;
};

/// Builds a ProblemSpec after checking d != 0 and d > 0 for odd/even n.
/// Throws DomainError otherwise.
ProblemSpec make_problem(Expr a, Expr b, RationalExponent n, double d);
void validate(const ProblemSpec& p);

enum class EndKind { Asymptote, RootBoundary, Unbounded, SearchLimit };

std::string_view to_string(EndKind k);

/// Interval around t = 0 on which the closed form is real and finite.
struct Validity {
  double lo = 0.0;
  double hi = 0.0;
  EndKind lo_kind = EndKind::SearchLimit;
  EndKind hi_kind = EndKind::SearchLimit;

  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
  double length() const noexcept { return hi - lo; }
};

struct ClosedFormConfig {
  QuadConfig quad;
  /// The radicand is sampled every search_radius / scan_steps before bisection.
  int scan_steps = 1024;
  double bisection_tol = 1e-9;
};

/// G(t) = d^-(n-1) - (n-1) int_0^t b e^{(n-1)A}. Undefined for n = 1.
double radicand(const ProblemSpec& p, double t, const QuadConfig& cfg = {});

/// Closed-form y(t). Throws OutsideValidity where the formula leaves the
/// solution branch through (0, d).
double eval_solution(const ProblemSpec& p, double t, const QuadConfig& cfg = {});

/// eval_solution at every point of `ts`, sharing one outward sweep per side.
std::vector<double> eval_solution_grid(const ProblemSpec& p, std::span<const double> ts, const QuadConfig& cfg = {});

Validity validity_interval(const ProblemSpec& p, double search_radius, const ClosedFormConfig& cfg = {});

} // namespace bsym
