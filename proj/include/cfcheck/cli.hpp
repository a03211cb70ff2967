#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfcheck
{

// Exit statuses of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_expectation_failed = 1;
inline constexpr int exit_input_error = 2;

// Runs one command. `args` excludes the program name. A scenario argument of
// "builtin:her" selects the bundled scenario.
int run_cli( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace cfcheck
