#include "cfcheck/analysis.hpp"

#include "cfcheck/bundled.hpp"
#include "cfcheck/error.hpp"

#include <algorithm>

namespace cfcheck
{

PropertyDefinition property_one() { return { "I", "L2", true }; }
PropertyDefinition property_two() { return { "II", "L1", false }; }

ReportConfig default_report_config()
{
    ReportConfig config;
    config.formula = std::string{ bundled_sr_formula() };
    return config;
}

PropertyReport check_property( const WorldSet& possible, const PropertyDefinition& definition, const Formula& formula )
{
    const auto& scenario = possible.scenario();
    if ( !scenario.find_setting( definition.setting ) )
        throw validation_error( "property " + definition.id + ": unknown setting '" + definition.setting + "'" );

    auto antecedent = performed( scenario, definition.setting );
    PropertyReport report{ definition, antecedent, formula, strict_implies( antecedent, formula, possible ), {}, {} };

    const auto* material = std::get_if< Implies >( &formula.node().value );
    for ( const auto& world : possible )
    {
        if ( !holds( antecedent, world, possible ) )
            continue;
        auto verdict = eval_at( formula, world, possible );
        TraceEntry entry{ world, verdict.value, std::nullopt, verdict.worlds_with( WitnessRole::accessible ),
                          verdict.worlds_with( WitnessRole::violation ), verdict.vacuous_counterfactual };
        if ( material )
            entry.antecedent = holds( material->antecedent, world, possible );
        if ( !verdict.value )
            report.counterexamples.push_back( { world, entry.violations } );
        report.trace.push_back( std::move( entry ) );
    }
    return report;
}

LocalityReport locality_analysis( const Formula& formula, std::string_view region, const WorldSet& possible )
{
    const auto& scenario = possible.scenario();
    auto index = scenario.find_region( region );
    if ( !index )
        throw validation_error( "unknown region '" + std::string{ region } + "'" );

    LocalityReport report{ formula, *index, std::string{ region }, true, std::nullopt, 0 };

    std::vector< bool > values;
    values.reserve( possible.size() );
    for ( const auto& world : possible )
        values.push_back( holds( formula, world, possible ) );

    for ( std::size_t i = 0; i < possible.size(); ++i )
    {
        for ( std::size_t j = i + 1; j < possible.size(); ++j )
        {
            if ( possible[ i ][ *index ] != possible[ j ][ *index ] )
                continue;
            ++report.pairs_checked;
            if ( values[ i ] != values[ j ] && !report.witness )
            {
                report.local = false;
                report.witness = LocalityWitness{ possible[ i ], values[ i ], possible[ j ], values[ j ] };
            }
        }
    }
    return report;
}

std::vector< std::size_t > agreement_regions( const Scenario& scenario, const Action& action )
{
    std::vector< std::size_t > regions;
    for ( std::size_t r = 0; r < scenario.region_count(); ++r )
    {
        if ( r != action.ref.region )
            regions.push_back( r );
    }
    return regions;
}

namespace
{

void collect_actions( const Formula& formula, std::vector< Action >& actions )
{
    std::visit(
        [ &actions ]( const auto& node ) {
            using T = std::decay_t< decltype( node ) >;
            if constexpr ( std::is_same_v< T, Not > || std::is_same_v< T, Box > || std::is_same_v< T, Dia > )
                collect_actions( node.operand, actions );
            else if constexpr ( std::is_same_v< T, And > || std::is_same_v< T, Or > )
            {
                collect_actions( node.left, actions );
                collect_actions( node.right, actions );
            }
            else if constexpr ( std::is_same_v< T, Implies > || std::is_same_v< T, StrictlyImplies > )
            {
                collect_actions( node.antecedent, actions );
                collect_actions( node.consequent, actions );
            }
            else if constexpr ( std::is_same_v< T, Counterfactual > )
            {
                if ( std::find( actions.begin(), actions.end(), node.action ) == actions.end() )
                    actions.push_back( node.action );
                collect_actions( node.consequent, actions );
            }
        },
        formula.node().value );
}

std::string region_list( const Scenario& scenario, const std::vector< std::size_t >& regions )
{
    std::string text;
    for ( auto r : regions )
    {
        if ( !text.empty() )
            text += ", ";
        text += scenario.regions()[ r ].name;
    }
    return text.empty() ? "(none)" : text;
}

// World literal in parentheses, as in the text output.
std::string shown( const Scenario& scenario, const World& world )
{
    return "(" + scenario.format_world( world ) + ")";
}

std::string describe_property( const Scenario& scenario, const PropertyReport& property )
{
    std::string text = "Property " + property.definition.id + ": performed(" + property.definition.setting +
                       ") => formula is " + ( property.implication.value ? "true" : "false" ) + " over " +
                       std::to_string( property.trace.size() ) + " world(s)";
    if ( !property.counterexamples.empty() )
    {
        text += "; counterexamples:";
        for ( const auto& counterexample : property.counterexamples )
        {
            text += ( &counterexample == &property.counterexamples.front() ? " " : ", " ) +
                    shown( scenario, counterexample.world );
            if ( !counterexample.violations.empty() )
            {
                text += " violated at";
                for ( const auto& world : counterexample.violations )
                    text += " " + shown( scenario, world );
            }
        }
    }
    text += property.expectation_met() ? "; as expected" : "; expected " + std::string{ property.definition.expected ? "true" : "false" };
    return text;
}

} // namespace

bool Report::expectations_met() const
{
    return ( !first || first->expectation_met() ) && ( !second || second->expectation_met() );
}

Report her_report( std::shared_ptr< const Scenario > scenario, const ReportConfig& config )
{
    auto candidates = enumerate_candidates( scenario, config.max_worlds );
    auto possible = filter_possible( candidates );
    Report report{ scenario, candidates.size(), eliminations( candidates ), possible, check_possibilities( possible ),
                   std::nullopt, std::nullopt, std::nullopt, {}, std::nullopt, {}, {}, {} };
    const auto& s = *scenario;

    report.summary.push_back( std::to_string( report.candidate_count ) + " candidate worlds, " +
                              std::to_string( report.eliminated.size() ) + " eliminated, " +
                              std::to_string( possible.size() ) + " possible." );

    const auto& results = report.possibilities.results;
    if ( results.empty() )
        report.summary.push_back( "No possibility assertions declared." );
    for ( const auto& result : results )
    {
        report.summary.push_back( "Possibility " + result.label + " (" + s.format_pattern( result.pattern ) + "): " +
                                  ( result.witness ? "satisfied by " + shown( s, *result.witness )
                                                   : std::string{ "NOT satisfied" } ) +
                                  "." );
    }

    try
    {
        report.formula = parse_formula( config.formula, s );
    }
    catch ( const parse_error& e )
    {
        report.notes.push_back( "formula does not bind to this scenario (" + std::string{ e.what() } +
                                "); no counterfactual content to analyse" );
        report.summary.push_back( "No counterfactual content: the formula does not bind to this scenario." );
        return report;
    }
    const auto& formula = *report.formula;

    std::vector< Action > actions;
    collect_actions( formula, actions );
    for ( const auto& action : actions )
        report.agreement.emplace_back( action, agreement_regions( s, action ) );

    for ( auto* slot : { &report.first, &report.second } )
    {
        const auto& definition = slot == &report.first ? config.first : config.second;
        if ( !s.find_setting( definition.setting ) )
        {
            report.notes.push_back( "property " + definition.id + " skipped: setting '" + definition.setting +
                                    "' is not declared" );
            continue;
        }
        *slot = check_property( possible, definition, formula );
        report.summary.push_back( describe_property( s, **slot ) + "." );
    }

    for ( std::size_t r = 0; r < s.region_count(); ++r )
    {
        auto locality = locality_analysis( formula, s.regions()[ r ].name, possible );
        std::string line = "Formula is " + std::string{ locality.local ? "local" : "NON-LOCAL" } +
                           " with respect to region " + locality.region_name;
        if ( locality.witness )
        {
            const auto& w = *locality.witness;
            line += ": " + shown( s, w.first ) + " and " + shown( s, w.second ) + " agree on " +
                    locality.region_name + " but the formula is " + ( w.first_value ? "true" : "false" ) +
                    " at the first and " + ( w.second_value ? "true" : "false" ) + " at the second";
        }
        report.summary.push_back( line + "." );
        report.locality.push_back( std::move( locality ) );
    }

    for ( const auto& [ action, regions ] : report.agreement )
    {
        report.summary.push_back( "do(" + action.setting + ") holds region(s) " + region_list( s, regions ) +
                                  " fixed, so the formula's truth condition refers to " + region_list( s, regions ) +
                                  " as well as " + s.regions()[ action.ref.region ].name + "." );
    }

    if ( report.first && report.second )
    {
        const PropertyReport& first = *report.first;
        const PropertyReport& second = *report.second;
        auto true_it = std::find_if( first.trace.begin(), first.trace.end(), []( const auto& e ) { return e.value; } );
        auto false_it = std::find_if( second.trace.begin(), second.trace.end(), []( const auto& e ) { return !e.value; } );
        if ( true_it != first.trace.end() && false_it != second.trace.end() )
        {
            report.dependence = DependenceWitness{ true_it->world, false_it->world };
            report.summary.push_back( "The formula is true at " + shown( s, true_it->world ) + " (" +
                                      first.definition.setting + " performed) and false at " +
                                      shown( s, false_it->world ) + " (" + second.definition.setting +
                                      " performed): its truth value depends on the setting chosen in region " +
                                      s.regions()[ std::get< Performed >( first.antecedent.node().value ).ref.region ].name +
                                      "." );
        }
    }

    bool any_vacuous = false;
    for ( const auto* property : { &report.first, &report.second } )
    {
        if ( !*property )
            continue;
        for ( const auto& entry : ( *property )->trace )
            any_vacuous = any_vacuous || entry.vacuous;
    }
    if ( any_vacuous )
        report.notes.push_back( "some counterfactual had no accessible world and was vacuously true" );

    return report;
}

} // namespace cfcheck
