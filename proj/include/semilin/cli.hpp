#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semilin {

enum ExitCode { kExitOk = 0, kExitFailedCheck = 1, kExitConfigError = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace semilin
