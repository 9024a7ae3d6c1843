#pragma once

// Command-line front end. Exit codes:
//
//   check   0 ok, 1 type error, 2 parse error, 3 fuel exhausted
//   reduce  0 ok, 1 type error in a context file, 2 parse error, 3 fuel exhausted
//   oracle  0 holds, 1 fails (witness printed), 2 unparsable or out of domain
//   cp      0 all pairs joinable, 1 some pair is not, 2 parse error, 3 fuel exhausted
//   any     4 usage error or missing input file

#include <ostream>
#include <string>
#include <vector>

namespace morgandk {

enum ExitCode : int { kOk = 0, kFailed = 1, kParseError = 2, kFuelExhausted = 3, kUsage = 4 };

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morgandk
