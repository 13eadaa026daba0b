// Command-line front end. Exit codes: 0 certified result, 1 no certified
// result, 2 invalid input.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knaster {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSolution = 1;
inline constexpr int kExitInvalidInput = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace knaster
