#pragma once

#include "bsym/closedform.hpp"
#include "bsym/oracle.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bsym {

enum class CaseId { T2i, T2ii, T2iii, T2iv, T3i, T3ii, T3iii, T4i, T4ii, T4iii, T4iv };

std::string_view to_string(CaseId id);
std::optional<CaseId> parse_case_id(std::string_view text);

/// How the partner solution y2 relates to y1.
///   Origin: y2(-t) = -y1(t)    TAxis: y2(t) = -y1(t)    YAxis: y2(-t) = y1(t)
enum class Relation { Origin, TAxis, YAxis };

/// "origin", "t-axis" or "y-axis".
std::string_view to_string(Relation r);

/// Exponent classes a case admits. OddOverOdd also admits n = 1, since both
/// of its terms are odd.
enum class ClassRequirement { EvenOverOdd, AnyRational, OddOverOdd };

struct ParityRequirement {
  Parity a;
  Parity b;
};

struct Transform {
  int a_sign; // a2 = a_sign * a1
  int b_sign;
  int d_sign;
};

struct SymmetryCase {
  CaseId id;
  ClassRequirement required_class;
  std::optional<ParityRequirement> required_parity;
  Transform transform;
  Relation relation;
};

/// The eleven cases in the fixed order T2i ... T4iv.
std::span<const SymmetryCase> catalog();
const SymmetryCase& lookup(CaseId id);

/// "a2=-a1,b2=b1,d2=-d1" style description of a transform.
std::string describe(const Transform& t);

/// Why `c` does not apply to `p`, or nullopt when it does.
std::optional<std::string> inapplicability(const ProblemSpec& p, const SymmetryCase& c);

std::vector<SymmetryCase> applicable_cases(const ProblemSpec& p);

/// Partner problem for case `c`. Throws CaseNotApplicable when the case's
/// hypotheses fail for `p`.
ProblemSpec transform_problem(const ProblemSpec& p, const SymmetryCase& c);

/// Applies the coefficient and initial-value signs without checking any
/// hypothesis. Negation wraps the coefficient tree in a unary minus.
ProblemSpec apply_transform(const ProblemSpec& p, const Transform& t);

enum class Method { ClosedForm, Oracle };

std::string_view to_string(Method m);

struct VerifyOptions {
  int grid_points = 51;
  double tol = 1e-6;
  Method method = Method::ClosedForm;
  double search_radius = 3.0;
  /// Fraction of the common interval trimmed from each end.
  double margin = 0.01;
  /// Skip the hypothesis check; used to show a violated case really fails.
  bool force = false;
  ClosedFormConfig closed_form;
  OracleConfig oracle;
};

struct VerificationReport {
  CaseId id;
  Relation relation;
  std::vector<double> grid;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double max_abs_y1 = 0.0;
  Validity common_validity;
  bool pass = false;
};

/// Builds the partner, intersects the two validity intervals (the partner's
/// reflected through t -> -t for Origin and YAxis), and evaluates the
/// relation residual on a uniform grid over the interior. Passes when
/// max_residual <= tol * (1 + max |y1|).
///
/// Throws CaseNotApplicable (unless forced) and EmptyDomain.
VerificationReport verify_pair(const ProblemSpec& p1, const SymmetryCase& c, const VerifyOptions& options);
VerificationReport verify_pair(const ProblemSpec& p1, const SymmetryCase& c, int grid_points, double tol,
                               Method method);

} // namespace bsym
