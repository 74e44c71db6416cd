#pragma once

// The command-line contract: invocations of the bsym binary with their exit
// codes and, where the output is deterministic, golden files.
//
// Arguments may start with @G/ (golden directory) or @S/ (scratch directory).
// Setting BSYM_UPDATE_GOLDEN=1 rewrites the golden files from the current
// binary instead of comparing.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bsym::testing {

struct CliCase {
  std::string name;
  std::vector<std::string> args;
  int exit_code;
  /// Golden file for stdout, relative to the golden directory.
  std::string golden_stdout;
  /// A file the command writes (scratch-relative) and its golden twin.
  std::string written_file;
  std::string golden_written;
  /// Required substring of stderr.
  std::string stderr_contains;
  /// Required first line of stdout.
  std::string first_line;
};

inline const std::vector<CliCase>& cli_contract() {
  static const std::vector<CliCase> cases = {
      // solve
      {"solve_riccati", {"solve", "--problem", "@G/problems/riccati.json", "--t-min", "0", "--t-max", "0.5", "--points", "3"},
       0, "solve_riccati.csv", "", "", "", "t,y"},
      {"solve_riccati_clipped", {"solve", "--problem", "@G/problems/riccati.json", "--t-min", "0", "--t-max", "2", "--points", "9"},
       0, "solve_riccati_clipped.csv", "", "", "", "t,y"},
      {"solve_to_file", {"solve", "--problem", "@G/problems/cos_sin.json", "--t-min", "-1", "--t-max", "1", "--points", "5", "--out", "@S/solve_cos_sin.csv"},
       0, "", "solve_cos_sin.csv", "solve_cos_sin.csv", "", ""},
      {"solve_oracle", {"solve", "--problem", "@G/problems/riccati.json", "--t-min", "0", "--t-max", "0.9", "--points", "4", "--method", "oracle"},
       0, "", "", "", "", "t,y"},
      {"solve_syntax_error", {"solve", "--problem", "@G/problems/bad_syntax.json", "--t-min", "0", "--t-max", "1"},
       1, "", "", "", "syntax error", ""},
      {"solve_reversed_range", {"solve", "--problem", "@G/problems/riccati.json", "--t-min", "1", "--t-max", "0"},
       1, "", "", "", "--t-min", ""},
      {"solve_missing_option", {"solve", "--problem", "@G/problems/riccati.json", "--t-min", "0"}, 1, "", "", "", "--t-max", ""},
      {"solve_bad_method", {"solve", "--problem", "@G/problems/riccati.json", "--t-min", "0", "--t-max", "1", "--method", "euler"},
       1, "", "", "", "--method", ""},
      {"solve_zero_initial_value", {"solve", "--problem", "@G/problems/zero_d.json", "--t-min", "0", "--t-max", "1"},
       2, "", "", "", "nonzero", ""},
      // cases
      {"cases_cos_sin", {"cases", "--problem", "@G/problems/cos_sin.json"}, 0, "cases_cos_sin.txt", "", "", "", ""},
      {"cases_odd_cubic", {"cases", "--problem", "@G/problems/odd_cubic.json"}, 0, "cases_odd_cubic.txt", "", "", "", ""},
      {"cases_none", {"cases", "--problem", "@G/problems/neither_half.json"}, 0, "empty.txt", "", "", "", ""},
      {"cases_unknown_key", {"cases", "--problem", "@G/problems/bad_key.json"}, 1, "", "", "", "unknown problem key", ""},
      {"cases_missing_file", {"cases", "--problem", "@G/problems/absent.json"}, 1, "", "", "", "cannot open", ""},
      // pair
      {"pair_t2iv", {"pair", "--problem", "@G/problems/cos_sin.json", "--case", "T2iv"}, 0, "pair_cos_sin_T2iv.json", "", "", "", ""},
      {"pair_t4ii", {"pair", "--problem", "@G/problems/odd_cubic.json", "--case", "T4ii", "--out", "@S/pair_odd_cubic.json"},
       0, "empty.txt", "pair_odd_cubic.json", "pair_odd_cubic_T4ii.json", "", ""},
      {"pair_not_applicable", {"pair", "--problem", "@G/problems/cos_sin.json", "--case", "T4i"}, 3, "", "", "", "p and q odd", ""},
      {"pair_unknown_case", {"pair", "--problem", "@G/problems/cos_sin.json", "--case", "T9"}, 1, "", "", "", "unknown case", ""},
      // verify
      {"verify_all_oracle", {"verify", "--problem", "@G/problems/cos_sin.json", "--case", "all", "--method", "oracle"},
       0, "verify_cos_sin_oracle.json", "", "", "", ""},
      {"verify_riccati_t2iv", {"verify", "--problem", "@G/problems/riccati.json", "--case", "T2iv", "--report", "@S/verify_riccati.json"},
       0, "empty.txt", "verify_riccati.json", "verify_riccati_T2iv.json", "", ""},
      {"verify_not_applicable", {"verify", "--problem", "@G/problems/neither.json", "--case", "T3i"}, 3, "", "", "", "a1 even", ""},
      {"verify_quadrature_failure", {"verify", "--problem", "@G/problems/singular.json"}, 2, "", "", "", "", ""},
      {"verify_failing_verdict", {"verify", "--problem", "@G/problems/near_even.json", "--case", "T3i", "--tol", "1e-15"},
       4, "", "", "", "T3i failed", ""},
      {"verify_bad_points", {"verify", "--problem", "@G/problems/cos_sin.json", "--points", "2"}, 1, "", "", "", "--points", ""},
      // identities
      {"identities_eq4", {"identities", "--a", "cos(t)", "--b", "sin(t)", "--n", "3", "--t-max", "2.0", "--samples", "8"},
       0, "identities_cos_sin.txt", "", "", "", "identity\tt\tresidual"},
      {"identities_eq7", {"identities", "--a", "t", "--b", "cos(t)", "--n", "2", "--t-max", "2.0", "--samples", "8"},
       0, "identities_t_cos.txt", "", "", "", "identity\tt\tresidual"},
      {"identities_eq8_eq9", {"identities", "--a", "cos(t)", "--b", "cos(t)", "--n", "2", "--t-max", "2.0", "--samples", "8"},
       0, "identities_cos_cos.txt", "", "", "", "identity\tt\tresidual"},
      {"identities_syntax_error", {"identities", "--a", "cos(t", "--b", "1", "--n", "2", "--t-max", "1"}, 1, "", "", "", "syntax error", ""},
      {"identities_zero_denominator", {"identities", "--a", "t", "--b", "1", "--n", "2/0", "--t-max", "1"}, 1, "", "", "", "", ""},
      {"identities_quadrature_failure", {"identities", "--a", "1/t", "--b", "1", "--n", "2", "--t-max", "1", "--samples", "2"},
       2, "", "", "", "", ""},
      {"identities_threshold_exceeded", {"identities", "--a", "cos(t) + 0.000000000001*t", "--b", "1000000*sin(t)", "--n", "3", "--t-max", "2", "--samples", "2"},
       4, "", "", "", "", "identity\tt\tresidual"},
      // dispatch
      {"no_subcommand", {}, 1, "", "", "", "", ""},
      {"unknown_subcommand", {"plot"}, 1, "", "", "", "", ""},
      {"help", {"--help"}, 0, "", "", "", "", ""},
  };
  return cases;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline std::string expand(const std::string& arg, const std::string& golden, const std::string& scratch) {
  if (arg.rfind("@G/", 0) == 0) return golden + "/" + arg.substr(3);
  if (arg.rfind("@S/", 0) == 0) return scratch + "/" + arg.substr(3);
  return arg;
}

inline CliRun run_bsym(const std::string& exe, const std::vector<std::string>& args, const std::string& golden,
                       const std::string& scratch, const std::string& tag) {
  std::filesystem::create_directories(scratch);
  const std::string out = scratch + "/" + tag + ".stdout";
  const std::string err = scratch + "/" + tag + ".stderr";
  std::string cmd = shell_quote(exe);
  for (const auto& a : args) cmd += " " + shell_quote(expand(a, golden, scratch));
  cmd += " > " + shell_quote(out) + " 2> " + shell_quote(err);
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

/// Runs one contract entry; returns a description of the first mismatch.
inline std::optional<std::string> check_cli_case(const CliCase& c, const std::string& exe, const std::string& golden,
                                                 const std::string& scratch) {
  const bool update = std::getenv("BSYM_UPDATE_GOLDEN") != nullptr;
  if (!c.written_file.empty()) std::filesystem::remove(scratch + "/" + c.written_file);
  const CliRun r = run_bsym(exe, c.args, golden, scratch, c.name);
  if (r.exit_code != c.exit_code)
    return "exit " + std::to_string(r.exit_code) + ", expected " + std::to_string(c.exit_code) + "; stderr: " + r.err;
  if (c.exit_code != 0 && r.err.empty()) return std::string("no diagnostic on stderr");
  if (!c.stderr_contains.empty() && r.err.find(c.stderr_contains) == std::string::npos)
    return "stderr lacks '" + c.stderr_contains + "': " + r.err;
  if (!c.first_line.empty() && r.out.substr(0, r.out.find('\n')) != c.first_line)
    return "first line differs: " + r.out.substr(0, r.out.find('\n'));
  auto compare = [&](const std::string& actual, const std::string& rel) -> std::optional<std::string> {
    const auto path = std::filesystem::path(golden) / rel;
    if (update) {
      std::ofstream(path, std::ios::binary) << actual;
      return std::nullopt;
    }
    if (!std::filesystem::exists(path)) return "missing golden file " + rel;
    if (slurp(path) != actual) return "output differs from " + rel + ":\n" + actual;
    return std::nullopt;
  };
  if (!c.golden_stdout.empty())
    if (auto m = compare(r.out, c.golden_stdout)) return m;
  if (!c.written_file.empty()) {
    const auto written = std::filesystem::path(scratch) / c.written_file;
    if (!std::filesystem::exists(written)) return "command did not write " + c.written_file;
    if (auto m = compare(slurp(written), c.golden_written)) return m;
  }
  return std::nullopt;
}

} // namespace bsym::testing
