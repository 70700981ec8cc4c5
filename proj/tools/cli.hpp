// Command-line front end.  main() only forwards to run(); tests call run()
// directly with captured streams.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuspk3::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // an assertion or internal cross-check failed
inline constexpr int kBadInput = 2;     // usage, parse or domain error

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspk3::cli
