#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geoindex {

/// Exit statuses of the command-line tool.
enum ExitStatus : int {
    exit_pass = 0,
    exit_failure = 1,    // a check ran and failed, or a bounded search found nothing
    exit_input = 2,      // malformed or invariant-violating input
    exit_precision = 3,  // interval data too coarse to decide a floor/ceiling
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`. The worker count for jump-search comes from the
/// GEOINDEX_WORKERS environment variable (default 1).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoindex
