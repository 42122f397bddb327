#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lazyfox::cli {

enum ExitCode : int {
    ok = 0,
    missing_input = 2,
    usage = 64,
    data_mismatch = 65,
    io_failure = 74,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lazyfox::cli
