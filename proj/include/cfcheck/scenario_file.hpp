#pragma once

#include "cfcheck/scenario.hpp"

#include <filesystem>
#include <string_view>

namespace cfcheck
{

// Line-oriented, sectioned scenario format (see docs/scenario-format.md):
//
//   [scenario]            name = ID, spacelike = true|false
//   [region NAME]         SETTING = LABEL, LABEL, ...
//   [constraints]         [LABEL:] forbid PATTERN
//                         [LABEL:] if PATTERN then SETTINGLABEL
//   [possibilities]       [LABEL:] PATTERN
//
// '#' starts a comment line. Unknown sections and keys are errors. Errors
// are parse_error with the line and column of the offending text.
[[nodiscard]] RawScenario parse_scenario_file( std::string_view text );

// parse_scenario_file followed by validate_scenario.
[[nodiscard]] Scenario read_scenario( std::string_view text );

// Throws std::runtime_error when the file cannot be read.
[[nodiscard]] Scenario load_scenario( const std::filesystem::path& path );

// Writes the scenario back in the same format; read_scenario() of the result
// gives an equal Scenario.
[[nodiscard]] std::string write_scenario( const Scenario& scenario );

} // namespace cfcheck
