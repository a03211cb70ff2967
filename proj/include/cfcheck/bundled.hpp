#pragma once

#include "cfcheck/scenario.hpp"

#include <memory>
#include <string_view>
#include <vector>

namespace cfcheck
{

// Contents of assets/, compiled in.
[[nodiscard]] std::string_view bundled_her_scenario();
[[nodiscard]] std::string_view bundled_sr_formula(); // without trailing newline
[[nodiscard]] std::string_view bundled_formula_corpus();

// Non-empty, non-comment lines of the corpus.
[[nodiscard]] std::vector< std::string > corpus_formulas();

[[nodiscard]] std::shared_ptr< const Scenario > her_scenario();

} // namespace cfcheck
