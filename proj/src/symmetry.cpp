#include "bsym/symmetry.hpp"

#include "bsym/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bsym {

namespace {

using CR = ClassRequirement;
constexpr Parity E = Parity::Even;
constexpr Parity O = Parity::Odd;

const std::array<SymmetryCase, 11> kCatalog = {{
    {CaseId::T2i, CR::EvenOverOdd, ParityRequirement{E, O}, {-1, -1, -1}, Relation::Origin},
    {CaseId::T2ii, CR::EvenOverOdd, ParityRequirement{O, E}, {+1, +1, -1}, Relation::Origin},
    {CaseId::T2iii, CR::EvenOverOdd, ParityRequirement{E, E}, {-1, +1, -1}, Relation::Origin},
    {CaseId::T2iv, CR::EvenOverOdd, std::nullopt, {+1, -1, -1}, Relation::TAxis},
    {CaseId::T3i, CR::AnyRational, ParityRequirement{E, O}, {-1, +1, +1}, Relation::YAxis},
    {CaseId::T3ii, CR::AnyRational, ParityRequirement{O, E}, {+1, -1, +1}, Relation::YAxis},
    {CaseId::T3iii, CR::AnyRational, ParityRequirement{E, E}, {-1, -1, +1}, Relation::YAxis},
    {CaseId::T4i, CR::OddOverOdd, ParityRequirement{O, E}, {+1, -1, -1}, Relation::Origin},
    {CaseId::T4ii, CR::OddOverOdd, std::nullopt, {+1, +1, -1}, Relation::TAxis},
    {CaseId::T4iii, CR::OddOverOdd, ParityRequirement{E, O}, {-1, +1, -1}, Relation::Origin},
    {CaseId::T4iv, CR::OddOverOdd, ParityRequirement{E, E}, {-1, -1, -1}, Relation::Origin},
}};

constexpr std::array<std::string_view, 11> kCaseNames = {"T2i", "T2ii", "T2iii", "T2iv", "T3i", "T3ii",
                                                         "T3iii", "T4i", "T4ii", "T4iii", "T4iv"};

bool class_matches(ClassRequirement req, ExponentClass cls) {
  switch (req) {
  case CR::EvenOverOdd: return cls == ExponentClass::EvenOverOdd;
  case CR::OddOverOdd: return cls == ExponentClass::OddOverOdd || cls == ExponentClass::One;
  case CR::AnyRational: return true;
  }
  return false;
}

std::string_view describe(ClassRequirement req) {
  switch (req) {
  case CR::EvenOverOdd: return "n = p/q with p even and q odd";
  case CR::OddOverOdd: return "n = p/q with p and q odd";
  case CR::AnyRational: return "any rational n";
  }
  return "?";
}

std::string sign_text(int s, const char* name) { return std::string(s < 0 ? "-" : "") + name; }

} // namespace

std::string_view to_string(CaseId id) { return kCaseNames[static_cast<std::size_t>(id)]; }

std::optional<CaseId> parse_case_id(std::string_view text) {
  for (std::size_t i = 0; i < kCaseNames.size(); ++i)
    if (kCaseNames[i] == text) return static_cast<CaseId>(i);
  return std::nullopt;
}

std::string_view to_string(Relation r) {
  switch (r) {
  case Relation::Origin: return "origin";
  case Relation::TAxis: return "t-axis";
  case Relation::YAxis: return "y-axis";
  }
  return "?";
}

std::string_view to_string(Method m) { return m == Method::ClosedForm ? "closed" : "oracle"; }

std::span<const SymmetryCase> catalog() { return kCatalog; }

const SymmetryCase& lookup(CaseId id) { return kCatalog[static_cast<std::size_t>(id)]; }

std::string describe(const Transform& t) {
  return "a2=" + sign_text(t.a_sign, "a1") + ",b2=" + sign_text(t.b_sign, "b1") + ",d2=" + sign_text(t.d_sign, "d1");
}

std::optional<std::string> inapplicability(const ProblemSpec& p, const SymmetryCase& c) {
  const std::string id(to_string(c.id));
  if (!class_matches(c.required_class, p.n.cls))
    return id + " requires " + std::string(describe(c.required_class)) + "; n = " + to_string(p.n) + " is " +
           std::string(to_string(p.n.cls));
  if (c.required_parity) {
    const Parity pa = detect_parity(p.a);
    if (pa != c.required_parity->a)
      return id + " requires a1 " + std::string(to_string(c.required_parity->a)) + ", but a1 is " +
             std::string(to_string(pa));
    const Parity pb = detect_parity(p.b);
    if (pb != c.required_parity->b)
      return id + " requires b1 " + std::string(to_string(c.required_parity->b)) + ", but b1 is " +
             std::string(to_string(pb));
  }
  // With d < 0 the y-axis cases hold only when the formula needs no
  // positive initial value, i.e. p even / q odd or p and q both odd.
  if (c.required_class == CR::AnyRational && p.d < 0.0 && p.n.cls == ExponentClass::OddOverEven)
    return id + " with d < 0 requires n = p/q with q odd";
  return std::nullopt;
}

std::vector<SymmetryCase> applicable_cases(const ProblemSpec& p) {
  std::vector<SymmetryCase> out;
  for (const auto& c : kCatalog)
    if (!inapplicability(p, c)) out.push_back(c);
  return out;
}

ProblemSpec apply_transform(const ProblemSpec& p, const Transform& t) {
  return make_problem(t.a_sign < 0 ? -p.a : p.a, t.b_sign < 0 ? -p.b : p.b, p.n, t.d_sign * p.d);
}

ProblemSpec transform_problem(const ProblemSpec& p, const SymmetryCase& c) {
  if (auto why = inapplicability(p, c)) throw CaseNotApplicable(*why);
  return apply_transform(p, c.transform);
}

namespace {

std::vector<double> oracle_values(const ProblemSpec& p, std::span<const double> ts, const OracleConfig& cfg) {
  double lo = 0.0;
  double hi = 0.0;
  for (double t : ts) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  const Trajectory forward = rk_solve(p, hi, cfg);
  const Trajectory backward = rk_solve(p, lo, cfg);
  std::vector<double> ys;
  ys.reserve(ts.size());
  for (double t : ts) {
    const Trajectory& tr = t >= 0.0 ? forward : backward;
    if (!tr.covers(t))
      throw OutsideValidity("oracle blew up at t = " + std::to_string(tr.t_reached()) + " before reaching " +
                            std::to_string(t));
    ys.push_back(tr(t));
  }
  return ys;
}

std::vector<double> solution_values(const ProblemSpec& p, std::span<const double> ts, const VerifyOptions& o) {
  if (o.method == Method::ClosedForm) return eval_solution_grid(p, ts, o.closed_form.quad);
  return oracle_values(p, ts, o.oracle);
}

} // namespace

VerificationReport verify_pair(const ProblemSpec& p1, const SymmetryCase& c, const VerifyOptions& o) {
  if (o.grid_points < 3) throw std::invalid_argument("verify_pair: grid_points must be >= 3");
  const ProblemSpec p2 = o.force ? apply_transform(p1, c.transform) : transform_problem(p1, c);
  const bool reflect = c.relation != Relation::TAxis;

  const Validity v1 = validity_interval(p1, o.search_radius, o.closed_form);
  Validity v2 = validity_interval(p2, o.search_radius, o.closed_form);
  if (reflect) v2 = {-v2.hi, -v2.lo, v2.hi_kind, v2.lo_kind};

  VerificationReport r{c.id, c.relation, {}, {}, 0.0, 0.0, {}, false};
  Validity& common = r.common_validity;
  common.lo = std::max(v1.lo, v2.lo);
  common.lo_kind = v1.lo >= v2.lo ? v1.lo_kind : v2.lo_kind;
  common.hi = std::min(v1.hi, v2.hi);
  common.hi_kind = v1.hi <= v2.hi ? v1.hi_kind : v2.hi_kind;
  const double margin = o.margin * common.length();
  const double lo = common.lo + margin;
  const double hi = common.hi - margin;
  if (!(lo < hi))
    throw EmptyDomain("common validity interior of " + std::string(to_string(c.id)) + " pair is empty");

  r.grid.resize(static_cast<std::size_t>(o.grid_points));
  for (int i = 0; i < o.grid_points; ++i)
    r.grid[i] = i + 1 == o.grid_points ? hi : lo + (hi - lo) * i / (o.grid_points - 1);
  std::vector<double> partner_grid(r.grid);
  if (reflect)
    for (double& t : partner_grid) t = -t;

  const std::vector<double> y1 = solution_values(p1, r.grid, o);
  const std::vector<double> y2 = solution_values(p2, partner_grid, o);

  r.residuals.resize(r.grid.size());
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    r.residuals[i] = c.relation == Relation::YAxis ? std::abs(y2[i] - y1[i]) : std::abs(y2[i] + y1[i]);
    r.max_residual = std::max(r.max_residual, r.residuals[i]);
    r.max_abs_y1 = std::max(r.max_abs_y1, std::abs(y1[i]));
  }
  r.pass = r.max_residual <= o.tol * (1.0 + r.max_abs_y1);
  return r;
}

VerificationReport verify_pair(const ProblemSpec& p1, const SymmetryCase& c, int grid_points, double tol,
                               Method method) {
  VerifyOptions o;
  o.grid_points = grid_points;
  o.tol = tol;
  o.method = method;
  return verify_pair(p1, c, o);
}

} // namespace bsym
