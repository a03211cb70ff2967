#pragma once

#include "cfcheck/evaluator.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cfcheck
{

// "The setting chosen in one region strictly implies the formula", together
// with the truth value the check expects the strict implication to have.
struct PropertyDefinition
{
    std::string id;
    std::string setting;
    bool expected = true;
};

// Property I: performing L2 strictly implies SR.
[[nodiscard]] PropertyDefinition property_one();
// Property II: performing L1 does not strictly imply SR.
[[nodiscard]] PropertyDefinition property_two();

struct TraceEntry
{
    World world;
    bool value = false;
    std::optional< bool > antecedent; // set when the formula is a material implication
    std::vector< World > accessible;  // worlds consulted by counterfactuals
    std::vector< World > violations;
    bool vacuous = false;
};

struct Counterexample
{
    World world;
    std::vector< World > violations; // accessible worlds where a counterfactual consequent fails
};

struct PropertyReport
{
    PropertyDefinition definition;
    Formula antecedent; // performed(<setting>)
    Formula formula;
    Verdict implication;
    std::vector< TraceEntry > trace; // exactly the possible worlds selected by the antecedent
    std::vector< Counterexample > counterexamples;

    [[nodiscard]] bool expectation_met() const { return implication.value == definition.expected; }
};

// Throws validation_error when the designated setting is not declared.
[[nodiscard]] PropertyReport check_property( const WorldSet& possible, const PropertyDefinition& definition,
                                             const Formula& formula );

struct LocalityWitness
{
    World first;
    bool first_value = false;
    World second;
    bool second_value = false;
};

struct LocalityReport
{
    Formula formula;
    std::size_t region = 0;
    std::string region_name;
    bool local = true;
    std::optional< LocalityWitness > witness; // first differing pair in world order
    std::size_t pairs_checked = 0;
};

// Extensional locality: the formula is local to `region` iff its value is the
// same at any two possible worlds with the same choice in that region.
// Throws validation_error for an unknown region.
[[nodiscard]] LocalityReport locality_analysis( const Formula& formula, std::string_view region,
                                                const WorldSet& possible );

// Regions a counterfactual do(setting) holds fixed.
[[nodiscard]] std::vector< std::size_t > agreement_regions( const Scenario& scenario, const Action& action );

struct DependenceWitness
{
    World true_world;  // first setting performed, formula true
    World false_world; // second setting performed, formula false
};

struct ReportConfig
{
    std::string formula;
    PropertyDefinition first = property_one();
    PropertyDefinition second = property_two();
    std::size_t max_worlds = default_max_worlds;
};

// Full pipeline over one scenario. Sections that cannot bind to the scenario
// (e.g. the formula names settings it lacks) are left empty and explained in
// `notes`.
struct Report
{
    std::shared_ptr< const Scenario > scenario;
    std::size_t candidate_count = 0;
    std::vector< Elimination > eliminated;
    WorldSet possible;
    PossibilityReport possibilities;

    std::optional< Formula > formula;
    std::optional< PropertyReport > first;
    std::optional< PropertyReport > second;
    std::vector< LocalityReport > locality;
    std::optional< DependenceWitness > dependence;
    std::vector< std::pair< Action, std::vector< std::size_t > > > agreement;

    std::vector< std::string > notes;
    std::vector< std::string > summary;

    [[nodiscard]] bool expectations_met() const;
};

[[nodiscard]] ReportConfig default_report_config();

[[nodiscard]] Report her_report( std::shared_ptr< const Scenario > scenario,
                                 const ReportConfig& config = default_report_config() );

} // namespace cfcheck
