#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace socpart {

// Exit codes of the command-line front end.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// argv[0] is the program name. Reports go to `out`, diagnostics to `err`.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socpart
