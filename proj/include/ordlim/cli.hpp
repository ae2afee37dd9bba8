#pragma once

// The ordlim command line. Exit codes: 0 pass or decided, 2 fail or
// counterexample, 3 inconclusive or not found, 1 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace ordlim::cli {

/// args excludes the program name. JSON goes to out (or --json-out), messages to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordlim::cli
