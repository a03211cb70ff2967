#include "cfcheck/scenario_file.hpp"

#include "cfcheck/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace cfcheck
{

namespace
{

struct Line
{
    std::size_t number;
    std::string_view text;
};

std::size_t leading_space( std::string_view text )
{
    std::size_t n = 0;
    while ( n < text.size() && std::isspace( static_cast< unsigned char >( text[ n ] ) ) )
        ++n;
    return n;
}

std::string_view strip( std::string_view text )
{
    text.remove_prefix( leading_space( text ) );
    while ( !text.empty() && std::isspace( static_cast< unsigned char >( text.back() ) ) )
        text.remove_suffix( 1 );
    return text;
}

bool is_label( std::string_view text )
{
    return !text.empty() && std::all_of( text.begin(), text.end(), []( char c ) {
        return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '-' || c == '.';
    } );
}

// A labelled entry of the [constraints] or [possibilities] section, kept until
// every region is known.
struct Deferred
{
    std::size_t line;
    std::size_t column; // 1-based column where `body` starts
    std::string label;
    std::string_view body;
};

enum class Section
{
    none,
    scenario,
    region,
    constraints,
    possibilities,
};

class Reader
{
    RawScenario _raw;
    Section _section = Section::none;
    bool _seen_scenario = false;
    bool _seen_constraints = false;
    bool _seen_possibilities = false;
    std::set< std::string > _scenario_keys;
    std::set< std::string > _settings;
    std::set< std::string > _labels;
    std::vector< Deferred > _constraints;
    std::vector< Deferred > _possibilities;

public:
    RawScenario read( std::string_view text )
    {
        std::size_t number = 0;
        while ( !text.empty() || number == 0 )
        {
            ++number;
            auto end = text.find( '\n' );
            auto line = text.substr( 0, end );
            text = end == std::string_view::npos ? std::string_view{} : text.substr( end + 1 );
            if ( !line.empty() && line.back() == '\r' )
                line.remove_suffix( 1 );
            handle( { number, line } );
            if ( text.empty() )
                break;
        }

        if ( !_seen_scenario )
            throw parse_error( { 1, 0 }, "missing [scenario] section" );
        if ( !_scenario_keys.contains( "name" ) )
            throw parse_error( { 1, 0 }, "[scenario] section has no 'name'" );
        if ( _raw.regions.empty() )
            throw parse_error( { 1, 0 }, "no [region ...] sections" );

        for ( const auto& entry : _constraints )
            _raw.constraints.push_back( constraint( entry ) );
        for ( const auto& entry : _possibilities )
            _raw.possibilities.push_back( { entry.label, pattern( entry, entry.body, entry.column ) } );
        return _raw;
    }

private:
    void handle( const Line& line )
    {
        auto body = strip( line.text );
        if ( body.empty() || body.front() == '#' )
            return;
        const auto indent = leading_space( line.text );

        if ( body.front() == '[' )
        {
            header( line, body, indent );
            return;
        }

        switch ( _section )
        {
        case Section::none:
            throw parse_error( { line.number, indent + 1 }, "content before the first section header" );
        case Section::scenario: scenario_key( line, body, indent ); break;
        case Section::region: setting( line, body, indent ); break;
        case Section::constraints: _constraints.push_back( labelled( line, body, indent, "c", _constraints.size() ) ); break;
        case Section::possibilities:
            _possibilities.push_back( labelled( line, body, indent, "p", _possibilities.size() ) );
            break;
        }
    }

    void header( const Line& line, std::string_view body, std::size_t indent )
    {
        if ( body.back() != ']' )
            throw parse_error( { line.number, indent + 1 }, "unterminated section header" );
        auto inner = strip( body.substr( 1, body.size() - 2 ) );

        auto once = [ & ]( bool& seen, const char* name ) {
            if ( seen )
                throw parse_error( { line.number, indent + 1 }, std::string{ "duplicate [" } + name + "] section" );
            seen = true;
        };

        if ( inner == "scenario" )
        {
            once( _seen_scenario, "scenario" );
            _section = Section::scenario;
        }
        else if ( inner == "constraints" )
        {
            once( _seen_constraints, "constraints" );
            _section = Section::constraints;
        }
        else if ( inner == "possibilities" )
        {
            once( _seen_possibilities, "possibilities" );
            _section = Section::possibilities;
        }
        else if ( inner.starts_with( "region" ) && inner.size() > 6 && std::isspace( static_cast< unsigned char >( inner[ 6 ] ) ) )
        {
            auto name = strip( inner.substr( 6 ) );
            if ( !is_identifier( name ) )
                throw parse_error( { line.number, indent + 1 }, "invalid region name '" + std::string{ name } + "'" );
            for ( const auto& region : _raw.regions )
            {
                if ( region.name == name )
                    throw parse_error( { line.number, indent + 1 }, "duplicate region '" + std::string{ name } + "'" );
            }
            _raw.regions.push_back( { std::string{ name }, {} } );
            _section = Section::region;
        }
        else
        {
            throw parse_error( { line.number, indent + 1 }, "unknown section '[" + std::string{ inner } + "]'" );
        }
    }

    static std::pair< std::string_view, std::string_view > split_assignment( const Line& line, std::string_view body,
                                                                             std::size_t indent )
    {
        auto eq = body.find( '=' );
        if ( eq == std::string_view::npos )
            throw parse_error( { line.number, indent + 1 }, "expected 'key = value'" );
        return { strip( body.substr( 0, eq ) ), strip( body.substr( eq + 1 ) ) };
    }

    void scenario_key( const Line& line, std::string_view body, std::size_t indent )
    {
        auto [ key, value ] = split_assignment( line, body, indent );
        if ( key != "name" && key != "spacelike" )
            throw parse_error( { line.number, indent + 1 }, "unknown key '" + std::string{ key } + "' in [scenario]" );
        if ( !_scenario_keys.insert( std::string{ key } ).second )
            throw parse_error( { line.number, indent + 1 }, "duplicate key '" + std::string{ key } + "'" );

        const auto value_column = line.text.find( value, indent + key.size() ) + 1;
        if ( key == "name" )
        {
            if ( !is_label( value ) )
                throw parse_error( { line.number, value_column }, "invalid scenario name '" + std::string{ value } + "'" );
            _raw.name = value;
        }
        else if ( value == "true" || value == "false" )
        {
            _raw.spacelike = value == "true";
        }
        else
        {
            throw parse_error( { line.number, value_column }, "spacelike must be 'true' or 'false'" );
        }
    }

    void setting( const Line& line, std::string_view body, std::size_t indent )
    {
        auto [ name, value ] = split_assignment( line, body, indent );
        if ( !is_identifier( name ) )
            throw parse_error( { line.number, indent + 1 }, "invalid setting name '" + std::string{ name } + "'" );
        if ( !_settings.insert( std::string{ name } ).second )
            throw parse_error( { line.number, indent + 1 }, "duplicate setting '" + std::string{ name } + "'" );

        Setting setting{ std::string{ name }, {} };
        std::size_t start = 0;
        while ( true )
        {
            auto comma = value.find( ',', start );
            auto segment = value.substr( start, comma == std::string_view::npos ? std::string_view::npos : comma - start );
            auto label = strip( segment );
            const auto column =
                static_cast< std::size_t >( value.data() - line.text.data() ) + start + leading_space( segment ) + 1;
            if ( !is_outcome_label( label ) )
                throw parse_error( { line.number, column }, "invalid outcome label '" + std::string{ label } + "'" );
            if ( std::find( setting.outcomes.begin(), setting.outcomes.end(), label ) != setting.outcomes.end() )
                throw parse_error( { line.number, column }, "duplicate outcome '" + std::string{ label } + "'" );
            setting.outcomes.emplace_back( label );
            if ( comma == std::string_view::npos )
                break;
            start = comma + 1;
        }
        _raw.regions.back().settings.push_back( std::move( setting ) );
    }

    Deferred labelled( const Line& line, std::string_view body, std::size_t indent, const char* prefix,
                       std::size_t index )
    {
        Deferred entry{ line.number, indent + 1, std::string{ prefix } + std::to_string( index + 1 ), body };
        auto colon = body.find( ':' );
        if ( colon != std::string_view::npos )
        {
            auto label = strip( body.substr( 0, colon ) );
            if ( !is_label( label ) )
                throw parse_error( { line.number, indent + 1 }, "invalid label '" + std::string{ label } + "'" );
            entry.label = label;
            auto rest = body.substr( colon + 1 );
            auto skipped = leading_space( rest );
            entry.body = strip( rest );
            entry.column = indent + colon + 2 + skipped;
        }
        if ( !_labels.insert( entry.label ).second )
            throw parse_error( { line.number, indent + 1 }, "duplicate label '" + entry.label + "'" );
        if ( entry.body.empty() )
            throw parse_error( { line.number, entry.column }, "empty entry" );
        return entry;
    }

    RawPattern pattern( const Deferred& entry, std::string_view text, std::size_t column ) const
    {
        try
        {
            return parse_raw_pattern( _raw.regions, text );
        }
        catch ( const parse_error& e )
        {
            auto relative = e.position().column;
            throw parse_error( { entry.line, relative == 0 ? column : column + relative - 1 },
                               std::string{ strip_position( e.what() ) } );
        }
    }

    // parse_error::what() is "line:column: message".
    static std::string_view strip_position( std::string_view what )
    {
        auto first = what.find( ": " );
        return first == std::string_view::npos ? what : what.substr( first + 2 );
    }

    RawConstraint constraint( const Deferred& entry ) const
    {
        auto body = entry.body;
        auto keyword_end = std::min( body.find_first_of( " \t" ), body.size() );
        auto keyword = body.substr( 0, keyword_end );
        auto rest_offset = keyword_end + leading_space( body.substr( keyword_end ) );
        auto rest = body.substr( rest_offset );

        if ( keyword == "forbid" )
            return { entry.label, RawForbid{ pattern( entry, rest, entry.column + rest_offset ) } };

        if ( keyword != "if" )
            throw parse_error( { entry.line, entry.column }, "expected 'forbid' or 'if'" );

        auto then = rest.find( " then " );
        if ( then == std::string_view::npos )
            throw parse_error( { entry.line, entry.column }, "conditional constraint needs 'then'" );
        auto condition = pattern( entry, rest.substr( 0, then ), entry.column + rest_offset );

        const auto consequence_offset = rest_offset + then + 6;
        auto consequence_text = rest.substr( then + 6 );
        auto consequence = pattern( entry, consequence_text, entry.column + consequence_offset );
        if ( consequence.size() != 1 || !consequence.front().outcome )
            throw parse_error( { entry.line, entry.column + consequence_offset },
                               "consequence must be a single setting with an outcome" );

        auto& item = consequence.front();
        return { entry.label, RawConditional{ std::move( condition ), item.region, item.setting, *item.outcome } };
    }
};

std::string format_raw_pattern( const RawPattern& pattern )
{
    if ( pattern.empty() )
        return "*";
    std::string text;
    for ( const auto& entry : pattern )
    {
        if ( !text.empty() )
            text += ", ";
        text += entry.setting;
        if ( entry.outcome )
            text += *entry.outcome;
    }
    return text;
}

} // namespace

RawScenario parse_scenario_file( std::string_view text )
{
    return Reader{}.read( text );
}

Scenario read_scenario( std::string_view text )
{
    return validate_scenario( parse_scenario_file( text ) );
}

Scenario load_scenario( const std::filesystem::path& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw std::runtime_error( "cannot read '" + path.string() + "'" );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_scenario( buffer.str() );
}

std::string write_scenario( const Scenario& scenario )
{
    const auto raw = to_raw( scenario );
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name = " << raw.name << "\n";
    out << "spacelike = " << ( raw.spacelike ? "true" : "false" ) << "\n";

    for ( const auto& region : raw.regions )
    {
        out << "\n[region " << region.name << "]\n";
        for ( const auto& setting : region.settings )
        {
            out << setting.name << " =";
            for ( std::size_t o = 0; o < setting.outcomes.size(); ++o )
                out << ( o == 0 ? " " : ", " ) << setting.outcomes[ o ];
            out << "\n";
        }
    }

    if ( !raw.constraints.empty() )
    {
        out << "\n[constraints]\n";
        for ( const auto& constraint : raw.constraints )
        {
            out << constraint.label << ": ";
            if ( const auto* forbid = std::get_if< RawForbid >( &constraint.body ) )
            {
                out << "forbid " << format_raw_pattern( forbid->pattern ) << "\n";
            }
            else
            {
                const auto& conditional = std::get< RawConditional >( constraint.body );
                out << "if " << format_raw_pattern( conditional.condition ) << " then " << conditional.setting
                    << conditional.outcome << "\n";
            }
        }
    }

    if ( !raw.possibilities.empty() )
    {
        out << "\n[possibilities]\n";
        for ( const auto& possibility : raw.possibilities )
            out << possibility.label << ": " << format_raw_pattern( possibility.pattern ) << "\n";
    }
    return out.str();
}

} // namespace cfcheck
