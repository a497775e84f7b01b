#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asa::cli {

// Runs one invocation; returns the process exit code.
//   0 success, 1 reproduce-suite failure, 2 parse error,
//   3 invariant violation, 4 undecided verdict under --strict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asa::cli
