#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fa::cli {

/// Runs the `fa` command line; args excludes the program name. Returns the
/// exit code: 0 pass, 1 check failure or counterexample, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fa::cli
