#include "bsym/cli.hpp"

#include "bsym/closedform.hpp"
#include "bsym/error.hpp"
#include "bsym/oracle.hpp"
#include "bsym/problem_io.hpp"
#include "bsym/quad.hpp"
#include "bsym/symmetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

namespace bsym {

namespace {

constexpr double kIdentityThreshold = 1e-8;

/// Writes to `path`, or to `fallback` when the path is "-".
void write_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + path);
  body(f);
  if (!f) throw InputError("failed writing " + path);
}

Method parse_method(const std::string& s) {
  if (s == "closed") return Method::ClosedForm;
  if (s == "oracle") return Method::Oracle;
  throw InputError("--method must be 'closed' or 'oracle', got '" + s + "'");
}

SymmetryCase parse_case(const std::string& s) {
  const auto id = parse_case_id(s);
  if (!id) throw InputError("unknown case id '" + s + "'");
  return lookup(*id);
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string problem;
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 101;
  std::string method = "closed";
  std::string out = "-";
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const ProblemSpec spec = to_spec(read_problem_file(a.problem));
  const Method method = parse_method(a.method);
  if (!(a.t_min < a.t_max)) throw InputError("--t-min must be less than --t-max");
  if (a.points < 2) throw InputError("--points must be at least 2");

  const ClosedFormConfig cfg;
  const double radius = std::max(std::abs(a.t_min), std::abs(a.t_max));
  const Validity v = validity_interval(spec, radius, cfg);

  // Ends where the solution is singular or leaves its branch are open, with
  // a guard above the bisection tolerance.
  const double guard = 10.0 * cfg.bisection_tol;
  auto open_end = [](EndKind k) { return k == EndKind::Asymptote || k == EndKind::RootBoundary; };
  const double lo = open_end(v.lo_kind) ? v.lo + guard : v.lo;
  const double hi = open_end(v.hi_kind) ? v.hi - guard : v.hi;

  std::vector<double> ts;
  for (int i = 0; i < a.points; ++i) {
    const double t = i + 1 == a.points ? a.t_max : a.t_min + (a.t_max - a.t_min) * i / (a.points - 1);
    if (t >= lo && t <= hi) ts.push_back(t);
  }

  std::vector<double> ys;
  if (method == Method::ClosedForm) {
    ys = eval_solution_grid(spec, ts, cfg.quad);
  } else if (!ts.empty()) {
    const Trajectory forward = rk_solve(spec, std::max(0.0, ts.back()));
    const Trajectory backward = rk_solve(spec, std::min(0.0, ts.front()));
    std::vector<double> kept;
    for (double t : ts) {
      const Trajectory& tr = t >= 0.0 ? forward : backward;
      if (!tr.covers(t)) continue;
      kept.push_back(t);
      ys.push_back(tr(t));
    }
    ts = std::move(kept);
  }

  write_output(a.out, out, [&](std::ostream& os) {
    os << "t,y\n";
    for (std::size_t i = 0; i < ts.size(); ++i) os << format_real(ts[i]) << ',' << format_real(ys[i]) << '\n';
    os << "# validity: [" << format_real(v.lo) << ',' << format_real(v.hi) << "] " << to_string(v.lo_kind) << ','
       << to_string(v.hi_kind) << '\n';
  });
  return kExitOk;
}

int cmd_cases(const std::string& problem, std::ostream& out) {
  const ProblemSpec spec = to_spec(read_problem_file(problem));
  for (const auto& c : applicable_cases(spec))
    out << to_string(c.id) << '\t' << to_string(c.relation) << '\t' << describe(c.transform) << '\n';
  return kExitOk;
}

int cmd_pair(const std::string& problem, const std::string& case_id, const std::string& path, std::ostream& out) {
  const ProblemSpec spec = to_spec(read_problem_file(problem));
  const SymmetryCase c = parse_case(case_id);
  const ProblemSpec partner = transform_problem(spec, c);
  const std::string json = to_json(to_file(partner, std::string(to_string(c.relation))));
  write_output(path, out, [&](std::ostream& os) { os << json << '\n'; });
  return kExitOk;
}

struct VerifyArgs {
  std::string problem;
  std::string case_id = "all";
  int points = 51;
  double tol = 1e-6;
  std::string method = "closed";
  std::string report = "-";
  double search_radius = 3.0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec = to_spec(read_problem_file(a.problem));
  VerifyOptions opts;
  opts.grid_points = a.points;
  opts.tol = a.tol;
  opts.method = parse_method(a.method);
  opts.search_radius = a.search_radius;
  if (a.points < 3) throw InputError("--points must be at least 3");
  if (!(a.tol > 0.0)) throw InputError("--tol must be positive");
  if (!(a.search_radius > 0.0)) throw InputError("--search-radius must be positive");

  std::vector<SymmetryCase> cases;
  if (a.case_id == "all")
    cases = applicable_cases(spec);
  else
    cases.push_back(parse_case(a.case_id));

  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  bool all_pass = true;
  for (const auto& c : cases) {
    const VerificationReport r = verify_pair(spec, c, opts);
    all_pass = all_pass && r.pass;
    nlohmann::ordered_json j;
    j["case"] = std::string(to_string(r.id));
    j["relation"] = std::string(to_string(r.relation));
    j["max_residual"] = r.max_residual;
    j["grid_size"] = r.grid.size();
    j["validity"] = {{"lo", r.common_validity.lo},
                     {"hi", r.common_validity.hi},
                     {"lo_kind", std::string(to_string(r.common_validity.lo_kind))},
                     {"hi_kind", std::string(to_string(r.common_validity.hi_kind))}};
    j["verdict"] = r.pass ? "pass" : "fail";
    reports.push_back(std::move(j));
    if (!r.pass) err << "bsym: " << to_string(r.id) << " failed, max residual " << format_real(r.max_residual) << '\n';
  }
  write_output(a.report, out, [&](std::ostream& os) { os << reports.dump(2) << '\n'; });
  return all_pass ? kExitOk : kExitVerifyFailed;
}

struct IdentityArgs {
  std::string a;
  std::string b;
  std::string n;
  double t_max = 1.0;
  int samples = 8;
};

int cmd_identities(const IdentityArgs& args, std::ostream& out, std::ostream& err) {
  const Expr a = parse_expr(args.a);
  const Expr b = parse_expr(args.b);
  const RationalExponent n = parse_exponent(args.n);
  if (!(args.t_max > 0.0)) throw InputError("--t-max must be positive");
  if (args.samples < 1) throw InputError("--samples must be at least 1");

  bool ok = true;
  out << "identity\tt\tresidual\n";
  for (Identity id : {Identity::Eq4, Identity::Eq7, Identity::Eq8, Identity::Eq9}) {
    try {
      require_identity_parity(id, a, b);
    } catch (const ParityViolation& e) {
      out << to_string(id) << "\tskipped\t" << e.what() << '\n';
      continue;
    }
    for (int i = 1; i <= args.samples; ++i) {
      const double t = args.t_max * i / args.samples;
      const double r = check_identity(id, a, b, n, t);
      if (r > kIdentityThreshold) {
        ok = false;
        err << "bsym: " << to_string(id) << " residual " << format_real(r) << " at t = " << format_real(t)
            << " exceeds " << format_real(kIdentityThreshold) << '\n';
      }
      out << to_string(id) << '\t' << format_real(t) << '\t' << format_real(r) << '\n';
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form solutions and solution symmetries of Bernoulli initial-value problems", "bsym"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Tabulate y(t) as CSV, clipped to the validity interval");
  solve_cmd->add_option("--problem", solve.problem, "Problem JSON file")->required();
  solve_cmd->add_option("--t-min", solve.t_min, "Grid start")->required();
  solve_cmd->add_option("--t-max", solve.t_max, "Grid end")->required();
  solve_cmd->add_option("--points", solve.points, "Grid size")->capture_default_str();
  solve_cmd->add_option("--method", solve.method, "closed or oracle")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "CSV output path, - for stdout")->capture_default_str();

  std::string cases_problem;
  auto* cases_cmd = app.add_subcommand("cases", "List the symmetry cases whose hypotheses hold");
  cases_cmd->add_option("--problem", cases_problem, "Problem JSON file")->required();

  std::string pair_problem, pair_case, pair_out = "-";
  auto* pair_cmd = app.add_subcommand("pair", "Write the partner problem for one case");
  pair_cmd->add_option("--problem", pair_problem, "Problem JSON file")->required();
  pair_cmd->add_option("--case", pair_case, "Case id, e.g. T2iv")->required();
  pair_cmd->add_option("--out", pair_out, "Output path, - for stdout")->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check predicted symmetry relations numerically");
  verify_cmd->add_option("--problem", verify.problem, "Problem JSON file")->required();
  verify_cmd->add_option("--case", verify.case_id, "Case id or 'all'")->capture_default_str();
  verify_cmd->add_option("--points", verify.points, "Grid size")->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "Relative tolerance")->capture_default_str();
  verify_cmd->add_option("--method", verify.method, "closed or oracle")->capture_default_str();
  verify_cmd->add_option("--report", verify.report, "JSON report path, - for stdout")->capture_default_str();
  verify_cmd->add_option("--search-radius", verify.search_radius, "Validity search radius")->capture_default_str();

  IdentityArgs ident;
  auto* ident_cmd = app.add_subcommand("identities", "Check the weighted-integral identities");
  ident_cmd->add_option("--a", ident.a, "Coefficient a(t)")->required();
  ident_cmd->add_option("--b", ident.b, "Coefficient b(t)")->required();
  ident_cmd->add_option("--n", ident.n, "Exponent p/q")->required();
  ident_cmd->add_option("--t-max", ident.t_max, "Largest t sampled")->required();
  ident_cmd->add_option("--samples", ident.samples, "Number of t values")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bsym: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*cases_cmd) return cmd_cases(cases_problem, out);
    if (*pair_cmd) return cmd_pair(pair_problem, pair_case, pair_out, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*ident_cmd) return cmd_identities(ident, out, err);
  } catch (const SyntaxError& e) {
    err << "bsym: syntax error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InputError& e) {
    err << "bsym: " << e.what() << '\n';
    return kExitParse;
  } catch (const ZeroDenominator& e) {
    err << "bsym: " << e.what() << '\n';
    return kExitParse;
  } catch (const CaseNotApplicable& e) {
    err << "bsym: case not applicable: " << e.what() << '\n';
    return kExitNotApplicable;
  } catch (const EmptyDomain& e) {
    err << "bsym: empty domain: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "bsym: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitParse;
}

} // namespace bsym
