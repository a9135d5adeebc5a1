#pragma once

#include <iosfwd>

namespace sasaki::cli {

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a numerical or assertion failure, 2 on a usage error. Errors are
/// written to `err` as a single JSON line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sasaki::cli
