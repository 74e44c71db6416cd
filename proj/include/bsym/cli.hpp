#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsym {

/// Process exit codes of the `bsym` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitDomain = 2,
  kExitNotApplicable = 3,
  kExitVerifyFailed = 4,
};

/// Runs `bsym <subcommand> ...`; `args` excludes the program name. Output
/// files named "-" go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bsym
