#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tps {

/// Runs the `tps` command line. `args` excludes the program name. Returns
/// the process exit code: 0 on success (or matches found), 1 when a query
/// finds nothing or a check fails, 2 on usage, parse, or I/O errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tps
