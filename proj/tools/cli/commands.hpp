#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcrkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,     // bad arguments, unreadable or invalid spec, point outside the domain
  kExitSingular = 3,  // no usable point on the grid, or a singular eval point
};

/// Entry point shared by the executable and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcrkit::cli
