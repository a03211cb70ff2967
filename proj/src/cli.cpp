#include "cfcheck/cli.hpp"

#include "cfcheck/bundled.hpp"
#include "cfcheck/error.hpp"
#include "cfcheck/output.hpp"
#include "cfcheck/scenario_file.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <ostream>

namespace cfcheck
{

namespace
{

constexpr std::string_view builtin_prefix = "builtin:";

// Scenario file problems, already carrying the file name.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::shared_ptr< const Scenario > open_scenario( const std::string& source )
{
    if ( source.starts_with( builtin_prefix ) )
    {
        if ( source.substr( builtin_prefix.size() ) != "her" )
            throw std::runtime_error( "unknown bundled scenario '" + source + "' (available: builtin:her)" );
        return her_scenario();
    }
    try
    {
        return std::make_shared< const Scenario >( load_scenario( source ) );
    }
    catch ( const parse_error& e )
    {
        throw input_error( "parse error: " + source + ":" + e.what() );
    }
    catch ( const validation_error& e )
    {
        throw input_error( "invalid scenario: " + source + ": " + e.what() );
    }
}

struct Options
{
    std::string file;
    std::string world;
    std::string formula;
    std::string property;
    std::string strict;
    std::string region;
    Format format = Format::text;
    std::size_t max_worlds = default_max_worlds;
};

void add_common( CLI::App& command, Options& options, bool file_required )
{
    auto* file = command.add_option( "file", options.file, "Scenario file, or builtin:her" );
    if ( file_required )
        file->required();
    else
        file->default_str( "builtin:her" );

    static const std::map< std::string, Format > formats{ { "text", Format::text }, { "machine", Format::machine } };
    command.add_option( "--format", options.format, "Output format" )
        ->transform( CLI::CheckedTransformer( formats, CLI::ignore_case ) );
    command.add_option( "--max-worlds", options.max_worlds, "Ceiling on the number of candidate worlds" )
        ->check( CLI::PositiveNumber );
}

WorldSet possible_worlds( const Options& options )
{
    auto scenario = open_scenario( options.file );
    return filter_possible( enumerate_candidates( scenario, options.max_worlds ) );
}

int cmd_worlds( const Options& options, std::ostream& out )
{
    auto scenario = open_scenario( options.file );
    out << render_worlds( enumerate_candidates( scenario, options.max_worlds ), options.format );
    return exit_ok;
}

int cmd_eval( const Options& options, std::ostream& out, std::ostream& err )
{
    auto possible = possible_worlds( options );
    const auto& scenario = possible.scenario();
    auto world = parse_world( scenario, options.world );
    if ( !possible.contains( world ) )
    {
        err << "error: (" << scenario.format_world( world ) << ") is not a possible world\n";
        return exit_input_error;
    }
    auto formula = parse_formula( options.formula, scenario );
    out << render_eval( formula, world, eval_at( formula, world, possible ), possible, options.format );
    return exit_ok;
}

int cmd_check( const Options& options, std::ostream& out, std::ostream& err )
{
    if ( options.property.empty() == options.strict.empty() )
    {
        err << "error: check needs exactly one of --property or --strict\n";
        return exit_input_error;
    }

    auto possible = possible_worlds( options );
    const auto& scenario = possible.scenario();

    if ( !options.property.empty() )
    {
        auto definition = options.property == "I" ? property_one() : property_two();
        auto formula = parse_formula( options.formula.empty() ? std::string{ bundled_sr_formula() } : options.formula,
                                      scenario );
        auto report = check_property( possible, definition, formula );
        out << render_property( report, possible, options.format );
        return report.expectation_met() ? exit_ok : exit_expectation_failed;
    }

    auto formula = parse_formula( options.strict, scenario );
    const auto* strict = std::get_if< StrictlyImplies >( &formula.node().value );
    if ( !strict )
    {
        err << "error: --strict expects a formula of the form 'A => B'\n";
        return exit_input_error;
    }
    auto verdict = strict_implies( strict->antecedent, strict->consequent, possible );
    out << render_strict( strict->antecedent, strict->consequent, verdict, possible, options.format );
    return verdict.value ? exit_ok : exit_expectation_failed;
}

int cmd_locality( const Options& options, std::ostream& out )
{
    auto possible = possible_worlds( options );
    auto formula = parse_formula( options.formula.empty() ? std::string{ bundled_sr_formula() } : options.formula,
                                  possible.scenario() );
    out << render_locality( locality_analysis( formula, options.region, possible ), possible, options.format );
    return exit_ok;
}

int cmd_report( const Options& options, std::ostream& out )
{
    auto config = default_report_config();
    config.max_worlds = options.max_worlds;
    if ( !options.formula.empty() )
        config.formula = options.formula;
    auto report = her_report( open_scenario( options.file ), config );
    out << render_report( report, options.format );
    return report.expectations_met() ? exit_ok : exit_expectation_failed;
}

} // namespace

int run_cli( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Counterfactual model checker for spacelike-separated measurement scenarios", "cfcheck" };
    app.require_subcommand( 1 );

    Options options;
    const std::string sr_note = " (default: the bundled SR formula)";

    auto* worlds = app.add_subcommand( "worlds", "List candidate, eliminated and possible worlds" );
    add_common( *worlds, options, true );

    auto* eval = app.add_subcommand( "eval", "Evaluate a formula at a possible world" );
    add_common( *eval, options, true );
    eval->add_option( "--world", options.world, "World literal, e.g. L2+,R2+" )->required();
    eval->add_option( "--formula", options.formula, "Formula to evaluate" )->required();

    auto* check = app.add_subcommand( "check", "Check Property I/II or an arbitrary strict implication" );
    add_common( *check, options, true );
    check->add_option( "--property", options.property, "Property to check" )->check( CLI::IsMember( { "I", "II" } ) );
    check->add_option( "--strict", options.strict, "Strict implication 'A => B'" );
    check->add_option( "--formula", options.formula, "Consequent formula for --property" + sr_note );

    auto* locality = app.add_subcommand( "locality", "Extensional locality of a formula w.r.t. one region" );
    add_common( *locality, options, true );
    locality->add_option( "--formula", options.formula, "Formula to analyse" + sr_note );
    locality->add_option( "--region", options.region, "Region name" )->required();

    auto* report = app.add_subcommand( "report", "Full pipeline report" );
    add_common( *report, options, false );
    report->add_option( "--formula", options.formula, "Formula under analysis" + sr_note );

    std::vector< std::string > reversed( args.rbegin(), args.rend() );
    try
    {
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        int code = app.exit( e, out, err );
        return code == 0 ? exit_ok : exit_input_error;
    }

    if ( options.file.empty() )
        options.file = "builtin:her";

    try
    {
        if ( *worlds )
            return cmd_worlds( options, out );
        if ( *eval )
            return cmd_eval( options, out, err );
        if ( *check )
            return cmd_check( options, out, err );
        if ( *locality )
            return cmd_locality( options, out );
        return cmd_report( options, out );
    }
    catch ( const input_error& e )
    {
        err << e.what() << "\n";
    }
    catch ( const parse_error& e )
    {
        err << "parse error: " << e.what() << "\n";
    }
    catch ( const validation_error& e )
    {
        err << "invalid scenario: " << e.what() << "\n";
    }
    catch ( const size_guard_error& e )
    {
        err << "too many worlds: " << e.what() << "\n";
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << "\n";
    }
    return exit_input_error;
}

} // namespace cfcheck
