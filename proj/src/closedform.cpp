#include "bsym/closedform.hpp"

#include "bsym/error.hpp"

#include <cmath>
#include <string>

namespace bsym {

ProblemSpec make_problem(Expr a, Expr b, RationalExponent n, double d) {
  ProblemSpec p{std::move(a), std::move(b), n, d};
  validate(p);
  return p;
}

void validate(const ProblemSpec& p) {
  if (!std::isfinite(p.d) || p.d == 0.0) throw DomainError("initial value d must be a nonzero finite number");
  if (p.n.cls == ExponentClass::OddOverEven && p.d < 0.0)
    throw DomainError("n = " + to_string(p.n) + " has an even denominator and requires d > 0");
}

std::string_view to_string(EndKind k) {
  switch (k) {
  case EndKind::Asymptote: return "Asymptote";
  case EndKind::RootBoundary: return "RootBoundary";
  case EndKind::Unbounded: return "Unbounded";
  case EndKind::SearchLimit: return "SearchLimit";
  }
  return "?";
}

namespace {

/// The closed form written as y = sigma * e^A * G^root with G = g0 - k W.
struct Formula {
  explicit Formula(const ProblemSpec& p) {
    validate(p);
    linear = p.n.cls == ExponentClass::One;
    if (linear) return;
    const Rational n_minus_one = p.n.minus_one();
    k = n_minus_one.to_double();
    g0 = signed_pow(p.d, -n_minus_one);
    root = Rational::make(-p.n.q, p.n.p - p.n.q);
    sigma = p.n.cls == ExponentClass::OddOverOdd && p.d < 0.0 ? -1.0 : 1.0;
    // Only the branch with G > 0 solves the equation when the root has an
    // even denominator (odd/odd n) or when y^n needs y > 0 (odd/even n).
    positive_branch = p.n.cls != ExponentClass::EvenOverOdd;
    passes_zero = p.n.p == 0;
  }

  double radicand(double W) const { return g0 - k * W; }

  /// True once G has left the branch that contains t = 0.
  bool left_branch(double G) const {
    if (passes_zero) return false;
    return G == 0.0 || (G > 0.0) != (g0 > 0.0);
  }

  double y(double A, double W, double t) const {
    const double G = radicand(W);
    if (positive_branch && G <= 0.0)
      throw OutsideValidity("radicand " + std::to_string(G) + " is not positive at t = " + std::to_string(t));
    if (G == 0.0 && root.num < 0) throw OutsideValidity("solution is singular at t = " + std::to_string(t));
    const double v = sigma * std::exp(A) * signed_pow(G, root);
    if (!std::isfinite(v)) throw OutsideValidity("solution overflows at t = " + std::to_string(t));
    return v;
  }

  bool linear = false;
  double k = 0.0;
  double g0 = 0.0;
  Rational root;
  double sigma = 1.0;
  bool positive_branch = false;
  bool passes_zero = false;
};

NestedIntegral integrator_for(const ProblemSpec& p, const Formula& f, const QuadConfig& cfg) {
  // n = 1: y = d exp(int (a + b)), carried in the A component.
  if (f.linear) return NestedIntegral(p.a + p.b, Expr::constant(0.0), 0.0, cfg);
  return NestedIntegral(p.a, p.b, f.k, cfg);
}

double solution_at(const ProblemSpec& p, const Formula& f, const NestedIntegral::Point& pt) {
  if (f.linear) {
    const double v = p.d * std::exp(pt.A);
    if (!std::isfinite(v)) throw OutsideValidity("solution overflows at t = " + std::to_string(pt.t));
    return v;
  }
  return f.y(pt.A, pt.W, pt.t);
}

} // namespace

double radicand(const ProblemSpec& p, double t, const QuadConfig& cfg) {
  const Formula f(p);
  if (f.linear) throw DomainError("the radicand is not defined for n = 1");
  return f.radicand(integrator_for(p, f, cfg).advance({}, t).W);
}

double eval_solution(const ProblemSpec& p, double t, const QuadConfig& cfg) {
  const Formula f(p);
  return solution_at(p, f, integrator_for(p, f, cfg).advance({}, t));
}

std::vector<double> eval_solution_grid(const ProblemSpec& p, std::span<const double> ts, const QuadConfig& cfg) {
  const Formula f(p);
  const auto points = integrator_for(p, f, cfg).sweep(ts);
  std::vector<double> ys;
  ys.reserve(points.size());
  for (const auto& pt : points) ys.push_back(solution_at(p, f, pt));
  return ys;
}

Validity validity_interval(const ProblemSpec& p, double search_radius, const ClosedFormConfig& cfg) {
  if (!(search_radius > 0.0)) throw std::invalid_argument("validity_interval: search_radius must be positive");
  if (cfg.scan_steps < 1) throw std::invalid_argument("validity_interval: scan_steps must be >= 1");
  const Formula f(p);
  if (f.linear) return {-search_radius, search_radius, EndKind::Unbounded, EndKind::Unbounded};

  const NestedIntegral integ = integrator_for(p, f, cfg.quad);
  const EndKind boundary_kind = f.root.num < 0 ? EndKind::Asymptote : EndKind::RootBoundary;
  const double dt = search_radius / cfg.scan_steps;

  auto scan = [&](double dir, double& end, EndKind& kind) {
    NestedIntegral::Point prev;
    for (int i = 1; i <= cfg.scan_steps; ++i) {
      const double t = i == cfg.scan_steps ? dir * search_radius : dir * i * dt;
      const NestedIntegral::Point cur = integ.advance(prev, t);
      if (f.left_branch(f.radicand(cur.W))) {
        double inside = prev.t;
        double outside = t;
        NestedIntegral::Point anchor = prev;
        while (std::abs(outside - inside) > cfg.bisection_tol) {
          const double mid = 0.5 * (inside + outside);
          const NestedIntegral::Point m = integ.advance(anchor, mid);
          if (f.left_branch(f.radicand(m.W))) {
            outside = mid;
          } else {
            inside = mid;
            anchor = m;
          }
        }
        end = 0.5 * (inside + outside);
        kind = boundary_kind;
        return;
      }
      prev = cur;
    }
    end = dir * search_radius;
    kind = EndKind::SearchLimit;
  };

  Validity v;
  scan(+1.0, v.hi, v.hi_kind);
  scan(-1.0, v.lo, v.lo_kind);
  return v;
}

} // namespace bsym
