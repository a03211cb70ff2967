#pragma once

#include "cfcheck/analysis.hpp"

#include <string>

namespace cfcheck
{

enum class Format
{
    text,
    machine, // JSON, keys in fixed order, two-space indent, trailing newline
};

[[nodiscard]] std::string render_worlds( const WorldSet& candidates, Format format );
[[nodiscard]] std::string render_eval( const Formula& formula, const World& world, const Verdict& verdict,
                                       const WorldSet& possible, Format format );
[[nodiscard]] std::string render_property( const PropertyReport& report, const WorldSet& possible, Format format );
[[nodiscard]] std::string render_strict( const Formula& antecedent, const Formula& consequent, const Verdict& verdict,
                                         const WorldSet& possible, Format format );
[[nodiscard]] std::string render_locality( const LocalityReport& report, const WorldSet& possible, Format format );
[[nodiscard]] std::string render_report( const Report& report, Format format );

} // namespace cfcheck
