#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pptkit {

inline constexpr const char* kReportSchema = "pptkit-report/1";

enum ExitCode : int { kExitOk = 0, kExitDomainError = 1, kExitParseError = 2 };

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or to --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pptkit
