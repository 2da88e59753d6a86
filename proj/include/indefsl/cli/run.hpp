#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace indefsl::cli {

/// Runs one command line (args[0] is the program name). Output goes to `out`
/// unless --out is given; diagnostics go to `err`. Returns the exit status:
/// 0 success, 2 parse or configuration error, 3 numerical failure,
/// 4 invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace indefsl::cli
