#include "cfcheck/output.hpp"

#include <json.hpp>

#include <sstream>

namespace cfcheck
{

namespace
{

using json = nlohmann::ordered_json;

std::string dump( const json& document )
{
    return document.dump( 2 ) + "\n";
}

json world_list( const Scenario& scenario, const std::vector< World >& worlds )
{
    auto list = json::array();
    for ( const auto& world : worlds )
        list.push_back( scenario.format_world( world ) );
    return list;
}

std::string joined( const Scenario& scenario, const std::vector< World >& worlds )
{
    std::string text;
    for ( const auto& world : worlds )
    {
        if ( !text.empty() )
            text += "  ";
        text += "(" + scenario.format_world( world ) + ")";
    }
    return text.empty() ? "-" : text;
}

const char* truth( bool value ) { return value ? "true" : "false"; }

json worlds_json( const WorldSet& candidates, const WorldSet& possible, const std::vector< Elimination >& eliminated )
{
    const auto& scenario = candidates.scenario();
    json eliminated_json = json::array();
    for ( const auto& elimination : eliminated )
    {
        json labels = json::array();
        for ( auto c : elimination.constraints )
            labels.push_back( scenario.constraints()[ c ].label );
        eliminated_json.push_back( { { "world", scenario.format_world( elimination.world ) }, { "constraints", labels } } );
    }
    return { { "counts",
               { { "candidates", candidates.size() }, { "eliminated", eliminated.size() }, { "possible", possible.size() } } },
             { "candidates", world_list( scenario, candidates.worlds() ) },
             { "eliminated", eliminated_json },
             { "possible", world_list( scenario, possible.worlds() ) } };
}

json witnesses_json( const Scenario& scenario, const Verdict& verdict )
{
    json list = json::array();
    for ( const auto& witness : verdict.witnesses )
        list.push_back( { { "world", scenario.format_world( witness.world ) }, { "role", std::string{ to_string( witness.role ) } } } );
    return list;
}

json property_json( const PropertyReport& report, const Scenario& scenario )
{
    json trace = json::array();
    for ( const auto& entry : report.trace )
    {
        json item = { { "world", scenario.format_world( entry.world ) }, { "value", entry.value } };
        item[ "antecedent" ] = entry.antecedent ? json( *entry.antecedent ) : json( nullptr );
        item[ "accessible" ] = world_list( scenario, entry.accessible );
        item[ "violations" ] = world_list( scenario, entry.violations );
        item[ "vacuous" ] = entry.vacuous;
        trace.push_back( std::move( item ) );
    }
    json counterexamples = json::array();
    for ( const auto& counterexample : report.counterexamples )
    {
        counterexamples.push_back( { { "world", scenario.format_world( counterexample.world ) },
                                     { "violations", world_list( scenario, counterexample.violations ) } } );
    }
    return { { "property", report.definition.id },
             { "antecedent", print( report.antecedent ) },
             { "formula", print( report.formula ) },
             { "strict_implication", print( strictly_implies( report.antecedent, report.formula ) ) },
             { "expected", report.definition.expected },
             { "value", report.implication.value },
             { "expectation_met", report.expectation_met() },
             { "trace", trace },
             { "counterexamples", counterexamples } };
}

json locality_json( const LocalityReport& report, const Scenario& scenario )
{
    json document = { { "formula", print( report.formula ) },
                      { "region", report.region_name },
                      { "local", report.local },
                      { "pairs_checked", report.pairs_checked } };
    if ( report.witness )
    {
        const auto& w = *report.witness;
        document[ "witness" ] = { { "first", { { "world", scenario.format_world( w.first ) }, { "value", w.first_value } } },
                                  { "second", { { "world", scenario.format_world( w.second ) }, { "value", w.second_value } } } };
    }
    else
    {
        document[ "witness" ] = nullptr;
    }
    return document;
}

void property_text( std::ostream& out, const PropertyReport& report, const Scenario& scenario )
{
    out << "Property " << report.definition.id << ": " << print( strictly_implies( report.antecedent, report.formula ) )
        << "\n";
    out << "  worlds selected by " << print( report.antecedent ) << ": " << report.trace.size() << "\n";
    for ( const auto& entry : report.trace )
    {
        out << "    (" << scenario.format_world( entry.world ) << ")  " << truth( entry.value );
        if ( entry.antecedent && !*entry.antecedent )
            out << "  [antecedent false]";
        if ( !entry.accessible.empty() || ( entry.antecedent && *entry.antecedent ) )
            out << "  accessible: " << joined( scenario, entry.accessible );
        if ( !entry.violations.empty() )
            out << "  violated at: " << joined( scenario, entry.violations );
        if ( entry.vacuous )
            out << "  [vacuous counterfactual]";
        out << "\n";
    }
    out << "  strict implication: " << truth( report.implication.value ) << " (expected "
        << truth( report.definition.expected ) << ") -> " << ( report.expectation_met() ? "PASS" : "FAIL" ) << "\n";
    for ( const auto& counterexample : report.counterexamples )
    {
        out << "  counterexample: (" << scenario.format_world( counterexample.world ) << ")";
        if ( !counterexample.violations.empty() )
            out << " violated at " << joined( scenario, counterexample.violations );
        out << "\n";
    }
}

void locality_text( std::ostream& out, const LocalityReport& report, const Scenario& scenario )
{
    out << "Locality of " << print( report.formula ) << " w.r.t. region " << report.region_name << ": "
        << ( report.local ? "LOCAL" : "NON-LOCAL" ) << " (" << report.pairs_checked << " agreeing pairs checked)\n";
    if ( report.witness )
    {
        const auto& w = *report.witness;
        out << "  witness: (" << scenario.format_world( w.first ) << ") " << truth( w.first_value ) << "  vs  ("
            << scenario.format_world( w.second ) << ") " << truth( w.second_value ) << "\n";
    }
}

} // namespace

std::string render_worlds( const WorldSet& candidates, Format format )
{
    const auto& scenario = candidates.scenario();
    auto possible = filter_possible( candidates );
    auto eliminated = eliminations( candidates );

    if ( format == Format::machine )
    {
        json document = { { "command", "worlds" }, { "scenario", scenario.name() } };
        document.update( worlds_json( candidates, possible, eliminated ) );
        return dump( document );
    }

    std::ostringstream out;
    out << "Scenario " << scenario.name() << "\n";
    out << "Candidate worlds (" << candidates.size() << "):\n";
    for ( const auto& world : candidates )
        out << "  (" << scenario.format_world( world ) << ")\n";
    out << "Eliminated worlds (" << eliminated.size() << "):\n";
    for ( const auto& elimination : eliminated )
    {
        out << "  (" << scenario.format_world( elimination.world ) << ")  by";
        for ( auto c : elimination.constraints )
        {
            const auto& constraint = scenario.constraints()[ c ];
            out << " " << constraint.label << " [" << scenario.format_constraint( constraint ) << "]";
        }
        out << "\n";
    }
    out << "Possible worlds (" << possible.size() << "):\n";
    for ( const auto& world : possible )
        out << "  (" << scenario.format_world( world ) << ")\n";
    return out.str();
}

std::string render_eval( const Formula& formula, const World& world, const Verdict& verdict, const WorldSet& possible,
                         Format format )
{
    const auto& scenario = possible.scenario();
    if ( format == Format::machine )
    {
        return dump( { { "command", "eval" },
                       { "scenario", scenario.name() },
                       { "world", scenario.format_world( world ) },
                       { "formula", print( formula ) },
                       { "value", verdict.value },
                       { "vacuous_counterfactual", verdict.vacuous_counterfactual },
                       { "witnesses", witnesses_json( scenario, verdict ) } } );
    }

    std::ostringstream out;
    out << print( formula ) << " at (" << scenario.format_world( world ) << "): " << truth( verdict.value ) << "\n";
    for ( const auto& witness : verdict.witnesses )
        out << "  " << to_string( witness.role ) << ": (" << scenario.format_world( witness.world ) << ")\n";
    if ( verdict.vacuous_counterfactual )
        out << "  note: a counterfactual had no accessible world (vacuously true)\n";
    return out.str();
}

std::string render_property( const PropertyReport& report, const WorldSet& possible, Format format )
{
    const auto& scenario = possible.scenario();
    if ( format == Format::machine )
    {
        json document = { { "command", "check" }, { "kind", "property" }, { "scenario", scenario.name() } };
        document.update( property_json( report, scenario ) );
        return dump( document );
    }
    std::ostringstream out;
    property_text( out, report, scenario );
    return out.str();
}

std::string render_strict( const Formula& antecedent, const Formula& consequent, const Verdict& verdict,
                           const WorldSet& possible, Format format )
{
    const auto& scenario = possible.scenario();
    const auto formula = strictly_implies( antecedent, consequent );
    if ( format == Format::machine )
    {
        return dump( { { "command", "check" },
                       { "kind", "strict" },
                       { "scenario", scenario.name() },
                       { "formula", print( formula ) },
                       { "value", verdict.value },
                       { "antecedent_worlds", world_list( scenario, verdict.worlds_with( WitnessRole::antecedent ) ) },
                       { "counterexamples", world_list( scenario, verdict.worlds_with( WitnessRole::counterexample ) ) } } );
    }

    std::ostringstream out;
    out << print( formula ) << ": " << truth( verdict.value ) << "\n";
    if ( verdict.value )
        out << "  antecedent holds at: " << joined( scenario, verdict.worlds_with( WitnessRole::antecedent ) ) << "\n";
    else
        out << "  counterexamples: " << joined( scenario, verdict.worlds_with( WitnessRole::counterexample ) ) << "\n";
    return out.str();
}

std::string render_locality( const LocalityReport& report, const WorldSet& possible, Format format )
{
    const auto& scenario = possible.scenario();
    if ( format == Format::machine )
    {
        json document = { { "command", "locality" }, { "scenario", scenario.name() } };
        document.update( locality_json( report, scenario ) );
        return dump( document );
    }
    std::ostringstream out;
    locality_text( out, report, scenario );
    return out.str();
}

std::string render_report( const Report& report, Format format )
{
    const auto& scenario = *report.scenario;

    if ( format == Format::machine )
    {
        json eliminated = json::array();
        for ( const auto& elimination : report.eliminated )
        {
            json labels = json::array();
            for ( auto c : elimination.constraints )
                labels.push_back( scenario.constraints()[ c ].label );
            eliminated.push_back( { { "world", scenario.format_world( elimination.world ) }, { "constraints", labels } } );
        }
        json possibilities = json::array();
        for ( const auto& result : report.possibilities.results )
        {
            possibilities.push_back( { { "label", result.label },
                                       { "pattern", scenario.format_pattern( result.pattern ) },
                                       { "satisfied", result.witness.has_value() },
                                       { "witness", result.witness ? json( scenario.format_world( *result.witness ) )
                                                                   : json( nullptr ) } } );
        }

        json document = { { "command", "report" },
                          { "scenario", scenario.name() },
                          { "counts",
                            { { "candidates", report.candidate_count },
                              { "eliminated", report.eliminated.size() },
                              { "possible", report.possible.size() } } },
                          { "eliminated", eliminated },
                          { "possible", world_list( scenario, report.possible.worlds() ) },
                          { "possibilities", { { "satisfied", report.possibilities.satisfied() }, { "results", possibilities } } },
                          { "formula", report.formula ? json( print( *report.formula ) ) : json( nullptr ) } };

        document[ "properties" ] = json::array();
        for ( const auto* property : { &report.first, &report.second } )
        {
            if ( *property )
                document[ "properties" ].push_back( property_json( **property, scenario ) );
        }
        document[ "locality" ] = json::array();
        for ( const auto& locality : report.locality )
            document[ "locality" ].push_back( locality_json( locality, scenario ) );
        document[ "agreement" ] = json::array();
        for ( const auto& [ action, regions ] : report.agreement )
        {
            json names = json::array();
            for ( auto r : regions )
                names.push_back( scenario.regions()[ r ].name );
            document[ "agreement" ].push_back( { { "action", "do(" + action.setting + ")" }, { "regions", names } } );
        }
        document[ "dependence" ] = report.dependence
                                       ? json{ { "true_at", scenario.format_world( report.dependence->true_world ) },
                                               { "false_at", scenario.format_world( report.dependence->false_world ) } }
                                       : json( nullptr );
        document[ "expectations_met" ] = report.expectations_met();
        document[ "notes" ] = report.notes;
        document[ "summary" ] = report.summary;
        return dump( document );
    }

    std::ostringstream out;
    out << "== Scenario " << scenario.name() << "\n";
    out << "Candidates: " << report.candidate_count << "  eliminated: " << report.eliminated.size()
        << "  possible: " << report.possible.size() << "\n";
    for ( const auto& elimination : report.eliminated )
    {
        out << "  eliminated (" << scenario.format_world( elimination.world ) << ") by";
        for ( auto c : elimination.constraints )
            out << " " << scenario.constraints()[ c ].label;
        out << "\n";
    }
    out << "Possible: " << joined( scenario, report.possible.worlds() ) << "\n";

    out << "\n== Possibility assertions: " << ( report.possibilities.satisfied() ? "all satisfied" : "NOT all satisfied" )
        << "\n";
    for ( const auto& result : report.possibilities.results )
    {
        out << "  " << result.label << " " << scenario.format_pattern( result.pattern ) << ": "
            << ( result.witness ? "(" + scenario.format_world( *result.witness ) + ")" : std::string{ "none" } ) << "\n";
    }

    if ( report.formula )
        out << "\n== Formula: " << print( *report.formula ) << "\n";
    for ( const auto* property : { &report.first, &report.second } )
    {
        if ( !*property )
            continue;
        out << "\n";
        property_text( out, **property, scenario );
    }
    if ( !report.locality.empty() )
        out << "\n== Locality\n";
    for ( const auto& locality : report.locality )
        locality_text( out, locality, scenario );

    if ( !report.notes.empty() )
    {
        out << "\n== Notes\n";
        for ( const auto& note : report.notes )
            out << "  " << note << "\n";
    }
    out << "\n== Summary\n";
    for ( const auto& line : report.summary )
        out << "  " << line << "\n";
    return out.str();
}

} // namespace cfcheck
