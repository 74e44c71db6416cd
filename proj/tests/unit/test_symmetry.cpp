#include "bsym/error.hpp"
#include "bsym/symmetry.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace bsym;

namespace {

ProblemSpec problem(const char* a, const char* b, const char* n, double d) {
  return make_problem(parse_expr(a), parse_expr(b), parse_exponent(n), d);
}

std::vector<std::string> ids(const std::vector<SymmetryCase>& cases) {
  std::vector<std::string> out;
  for (const auto& c : cases) out.emplace_back(to_string(c.id));
  return out;
}

} // namespace

TEST_CASE("catalog rows match the theorem hypotheses") {
  // Each row: exponent class, parities of (a1, b1), signs of (a2, b2, d2), relation.
  struct Row {
    const char* id;
    ClassRequirement cls;
    const char* parity; // "EO" = a even, b odd; "" = no requirement
    const char* signs;
    Relation rel;
  };
  using CR = ClassRequirement;
  const Row rows[] = {
      {"T2i", CR::EvenOverOdd, "EO", "---", Relation::Origin},  {"T2ii", CR::EvenOverOdd, "OE", "++-", Relation::Origin},
      {"T2iii", CR::EvenOverOdd, "EE", "-+-", Relation::Origin}, {"T2iv", CR::EvenOverOdd, "", "+--", Relation::TAxis},
      {"T3i", CR::AnyRational, "EO", "-++", Relation::YAxis},    {"T3ii", CR::AnyRational, "OE", "+-+", Relation::YAxis},
      {"T3iii", CR::AnyRational, "EE", "--+", Relation::YAxis},  {"T4i", CR::OddOverOdd, "OE", "+--", Relation::Origin},
      {"T4ii", CR::OddOverOdd, "", "++-", Relation::TAxis},      {"T4iii", CR::OddOverOdd, "EO", "-+-", Relation::Origin},
      {"T4iv", CR::OddOverOdd, "EE", "---", Relation::Origin},
  };
  const auto cat = catalog();
  REQUIRE(cat.size() == std::size(rows));
  auto parity_of = [](char c) { return c == 'E' ? Parity::Even : Parity::Odd; };
  auto sign_of = [](char c) { return c == '-' ? -1 : 1; };
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const Row& r = rows[i];
    const SymmetryCase& c = cat[i];
    CAPTURE(r.id);
    CHECK(to_string(c.id) == r.id);
    CHECK(parse_case_id(r.id) == c.id);
    CHECK(&lookup(c.id) == &cat[i]);
    CHECK(c.required_class == r.cls);
    if (*r.parity) {
      REQUIRE(c.required_parity.has_value());
      CHECK(c.required_parity->a == parity_of(r.parity[0]));
      CHECK(c.required_parity->b == parity_of(r.parity[1]));
    } else {
      CHECK_FALSE(c.required_parity.has_value());
    }
    CHECK(c.transform.a_sign == sign_of(r.signs[0]));
    CHECK(c.transform.b_sign == sign_of(r.signs[1]));
    CHECK(c.transform.d_sign == sign_of(r.signs[2]));
    CHECK(c.relation == r.rel);
  }
  CHECK_FALSE(parse_case_id("T5i").has_value());
}

TEST_CASE("y-axis rows keep d, the others flip it") {
  for (const auto& c : catalog()) {
    CAPTURE(to_string(c.id));
    CHECK((c.relation == Relation::YAxis) == (c.transform.d_sign > 0));
  }
}

TEST_CASE("applicable_cases examples") {
  CHECK(ids(applicable_cases(problem("cos(t)", "sin(t)", "2", 1.0))) ==
        std::vector<std::string>{"T2i", "T2iv", "T3i"});
  CHECK(ids(applicable_cases(problem("t", "cos(t)", "3", -1.0))) ==
        std::vector<std::string>{"T3ii", "T4i", "T4ii"});
  CHECK(applicable_cases(problem("t+1", "t+1", "1/2", 1.0)).empty());
  CHECK(ids(applicable_cases(problem("t", "1", "3", -2.0))) == std::vector<std::string>{"T3ii", "T4i", "T4ii"});
  // n = 1 is odd over odd.
  CHECK(ids(applicable_cases(problem("cos(t)", "cos(t)", "1", 1.0))) ==
        std::vector<std::string>{"T3iii", "T4ii", "T4iv"});
  CHECK(ids(applicable_cases(problem("cos(t)", "sin(t)", "1/2", 1.0))) == std::vector<std::string>{"T3i"});
}

TEST_CASE("inapplicability names the failed hypothesis") {
  const auto why = inapplicability(problem("cos(t)", "sin(t)", "2", 1.0), lookup(CaseId::T4i));
  REQUIRE(why.has_value());
  CHECK(why->find("p and q odd") != std::string::npos);
  const auto parity = inapplicability(problem("cos(t)", "t + 1", "2", 1.0), lookup(CaseId::T2i));
  REQUIRE(parity.has_value());
  CHECK(parity->find("b1 odd") != std::string::npos);
}

TEST_CASE("transform_problem examples") {
  const ProblemSpec t2iv = transform_problem(problem("cos(t)", "sin(t)", "2", 1.0), lookup(CaseId::T2iv));
  CHECK(print(t2iv.a) == "cos(t)");
  CHECK(print(t2iv.b) == "-(sin(t))");
  CHECK(t2iv.n == classify_exponent(2, 1));
  CHECK(t2iv.d == -1.0);

  const ProblemSpec t3iii = transform_problem(problem("cos(t)", "t^2", "2", 0.5), lookup(CaseId::T3iii));
  CHECK(print(t3iii.a) == "-(cos(t))");
  CHECK(print(t3iii.b) == "-(t^2)");
  CHECK(t3iii.d == 0.5);

  const ProblemSpec t4ii = transform_problem(problem("t", "1", "3", -2.0), lookup(CaseId::T4ii));
  CHECK(print(t4ii.a) == "t");
  CHECK(print(t4ii.b) == "1");
  CHECK(t4ii.d == 2.0);

  CHECK_THROWS_AS(transform_problem(problem("cos(t)", "sin(t)", "2", 1.0), lookup(CaseId::T4i)), CaseNotApplicable);
  CHECK(describe(lookup(CaseId::T2iii).transform) == "a2=-a1,b2=b1,d2=-d1");
}

TEST_CASE("transforms are involutions") {
  testing::ExprGenerator gen(73);
  for (const auto& c : catalog()) {
    const ProblemSpec p = gen.conforming(c);
    const ProblemSpec twice = apply_transform(apply_transform(p, c.transform), c.transform);
    CHECK(twice.n == p.n);
    CHECK(twice.d == p.d);
    for (int k = 0; k < 100; ++k) {
      const double t = -3.0 + 6.0 * k / 99;
      CHECK(twice.a(t) == p.a(t));
      CHECK(twice.b(t) == p.b(t));
    }
  }
}

TEST_CASE("verify_pair examples") {
  const ProblemSpec cs = problem("cos(t)", "sin(t)", "2", 1.0);
  const auto r1 = verify_pair(cs, lookup(CaseId::T2i), 51, 1e-6, Method::Oracle);
  CHECK(r1.pass);
  CHECK(r1.relation == Relation::Origin);
  CHECK(r1.grid.size() == 51);
  CHECK(r1.residuals.size() == 51);

  const auto r2 = verify_pair(problem("t", "1", "3", -2.0), lookup(CaseId::T4ii), 51, 1e-6, Method::ClosedForm);
  CHECK(r2.pass);
  CHECK(r2.relation == Relation::TAxis);

  CHECK_THROWS_AS(verify_pair(cs, lookup(CaseId::T4i), 51, 1e-6, Method::ClosedForm), CaseNotApplicable);

  const auto r3 = verify_pair(problem("0", "1", "2", 1.0), lookup(CaseId::T2iv), 51, 1e-6, Method::ClosedForm);
  CHECK(r3.max_residual <= 1e-8);
  CHECK(std::abs(r3.common_validity.hi - 1.0) <= 1e-9);
}

TEST_CASE("report invariants") {
  const auto r = verify_pair(problem("cos(t)", "sin(t)", "2", 1.0), lookup(CaseId::T3i), 31, 1e-6, Method::ClosedForm);
  double mx = 0.0;
  for (double v : r.residuals) mx = std::max(mx, v);
  CHECK(r.max_residual == mx);
  for (double t : r.grid) {
    CHECK(t > r.common_validity.lo);
    CHECK(t < r.common_validity.hi);
  }
  CHECK_THROWS_AS(verify_pair(problem("cos(t)", "sin(t)", "2", 1.0), lookup(CaseId::T3i), 2, 1e-6, Method::Oracle),
                  std::invalid_argument);
}

TEST_CASE("an empty interior raises EmptyDomain") {
  VerifyOptions o;
  o.margin = 0.5;
  CHECK_THROWS_AS(verify_pair(problem("cos(t)", "sin(t)", "2", 1.0), lookup(CaseId::T2i), o), EmptyDomain);
}

TEST_CASE("relations hold on random conforming problems under the oracle") {
  testing::ExprGenerator gen(79);
  VerifyOptions o;
  o.method = Method::Oracle;
  for (const auto& c : catalog()) {
    for (int i = 0; i < 4; ++i) {
      const ProblemSpec p = gen.conforming(c);
      const auto r = verify_pair(p, c, o);
      CHECK_MESSAGE(r.pass, to_string(c.id), ": ", print(p.a), " | ", print(p.b), " n=", to_string(p.n),
                    " d=", p.d, " max=", r.max_residual);
    }
  }
}

TEST_CASE("closed form and oracle residuals agree") {
  testing::ExprGenerator gen(83);
  VerifyOptions closed;
  VerifyOptions oracle;
  oracle.method = Method::Oracle;
  for (const auto& c : catalog()) {
    const ProblemSpec p = gen.conforming(c);
    const auto rc = verify_pair(p, c, closed);
    const auto ro = verify_pair(p, c, oracle);
    REQUIRE(rc.grid == ro.grid);
    for (std::size_t k = 0; k < rc.grid.size(); ++k) CHECK(std::abs(rc.residuals[k] - ro.residuals[k]) <= 1e-5);
  }
}

TEST_CASE("forcing a violated case produces a visible residual") {
  VerifyOptions o;
  o.force = true;
  const ProblemSpec p = problem("cos(t)", "t + 1", "2", 1.0);
  CHECK(inapplicability(p, lookup(CaseId::T2i)).has_value());
  const auto r = verify_pair(p, lookup(CaseId::T2i), o);
  CHECK_FALSE(r.pass);
  CHECK(r.max_residual > 1e-2);
}
