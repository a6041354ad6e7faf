#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fibers::cli {

enum Exit : int { ok = 0, error = 1, empty = 2, failed = 3 };

// Entry point of the `fibers` tool. Writes results to `out` and diagnostics
// to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibers::cli
