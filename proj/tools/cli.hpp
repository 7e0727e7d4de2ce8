#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace packcert::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

/// Runs one command line (without the program name). Reports go to --out
/// when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace packcert::cli
