#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace balltrace {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;     ///< failed verification or internal error
inline constexpr int exit_validation = 2;  ///< bad flags, malformed symbols, precondition violations
inline constexpr int exit_unstable = 3;    ///< fit flagged unstable; the report is still written

/// Entry point of the `balltrace` executable. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace balltrace
