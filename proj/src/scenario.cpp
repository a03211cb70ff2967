#include "cfcheck/scenario.hpp"

#include "cfcheck/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cfcheck
{

namespace
{

bool is_label_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '+' || c == '-';
}

std::string_view trim( std::string_view text, std::size_t& offset )
{
    while ( !text.empty() && std::isspace( static_cast< unsigned char >( text.front() ) ) )
    {
        text.remove_prefix( 1 );
        ++offset;
    }
    while ( !text.empty() && std::isspace( static_cast< unsigned char >( text.back() ) ) )
        text.remove_suffix( 1 );
    return text;
}

struct ParsedItem
{
    RawPatternEntry entry;
    std::size_t column; // 1-based column of the item
};

// Longest setting-name prefix whose remainder is empty or one of its outcomes.
std::optional< RawPatternEntry > resolve_item( const std::vector< Region >& regions, std::string_view item,
                                               std::string& failure )
{
    std::optional< RawPatternEntry > best;
    std::size_t best_length = 0;
    bool prefix_seen = false;

    for ( const auto& region : regions )
    {
        for ( const auto& setting : region.settings )
        {
            if ( !item.starts_with( setting.name ) || setting.name.size() < best_length )
                continue;
            prefix_seen = true;

            std::size_t skipped = 0;
            auto rest = trim( item.substr( setting.name.size() ), skipped );
            if ( rest.empty() )
            {
                best = RawPatternEntry{ region.name, setting.name, std::nullopt };
                best_length = setting.name.size();
                continue;
            }
            if ( std::find( setting.outcomes.begin(), setting.outcomes.end(), rest ) != setting.outcomes.end() )
            {
                best = RawPatternEntry{ region.name, setting.name, std::string{ rest } };
                best_length = setting.name.size();
            }
            else if ( !best )
            {
                failure = "setting '" + setting.name + "' has no outcome '" + std::string{ rest } + "'";
            }
        }
    }

    if ( !best && !prefix_seen )
        failure = "unknown setting in '" + std::string{ item } + "'";
    return best;
}

std::vector< ParsedItem > parse_items( const std::vector< Region >& regions, std::string_view text )
{
    std::vector< ParsedItem > items;
    std::size_t offset = 0;
    auto body = trim( text, offset );
    if ( body == "*" )
        return items;
    if ( body.empty() )
        throw parse_error( { 1, offset + 1 }, "empty pattern (use '*' for the pattern matching every world)" );

    std::size_t start = 0;
    while ( true )
    {
        auto comma = body.find( ',', start );
        auto piece = body.substr( start, comma == std::string_view::npos ? std::string_view::npos : comma - start );
        std::size_t item_offset = offset + start;
        auto item = trim( piece, item_offset );
        if ( item.empty() )
            throw parse_error( { 1, item_offset + 1 }, "empty item in pattern" );

        std::string failure;
        auto entry = resolve_item( regions, item, failure );
        if ( !entry )
            throw parse_error( { 1, item_offset + 1 }, failure );
        for ( const auto& previous : items )
        {
            if ( previous.entry.region == entry->region )
                throw parse_error( { 1, item_offset + 1 }, "region '" + entry->region + "' constrained twice" );
        }
        items.push_back( { std::move( *entry ), item_offset + 1 } );

        if ( comma == std::string_view::npos )
            break;
        start = comma + 1;
    }
    return items;
}

class Resolver
{
    const Scenario& _scenario;
    std::string _context;

public:
    Resolver( const Scenario& scenario, std::string context )
        : _scenario{ scenario }, _context{ std::move( context ) } {}

    [[noreturn]] void fail( const std::string& message ) const
    {
        throw validation_error( _context + ": " + message );
    }

    SettingRef setting( const std::string& region_name, const std::string& setting_name ) const
    {
        auto ref = _scenario.find_setting( setting_name );
        if ( !ref )
            fail( "unknown setting '" + setting_name + "'" );
        if ( !region_name.empty() )
        {
            auto region = _scenario.find_region( region_name );
            if ( !region )
                fail( "unknown region '" + region_name + "'" );
            if ( *region != ref->region )
                fail( "setting '" + setting_name + "' does not belong to region '" + region_name + "'" );
        }
        return *ref;
    }

    std::size_t outcome( SettingRef ref, const std::string& label ) const
    {
        auto index = _scenario.find_outcome( ref, label );
        if ( !index )
            fail( "setting '" + _scenario.setting( ref ).name + "' has no outcome '" + label + "'" );
        return *index;
    }

    WorldPattern pattern( const RawPattern& raw ) const
    {
        WorldPattern result( _scenario.region_count() );
        for ( const auto& entry : raw )
        {
            auto ref = setting( entry.region, entry.setting );
            if ( result.at( ref.region ) )
                fail( "region '" + _scenario.regions()[ ref.region ].name + "' constrained twice in one pattern" );
            PatternEntry resolved{ ref.setting, std::nullopt };
            if ( entry.outcome )
                resolved.outcome = outcome( ref, *entry.outcome );
            result.set( ref.region, resolved );
        }
        return result;
    }
};

RawPattern pattern_to_raw( const Scenario& scenario, const WorldPattern& pattern )
{
    RawPattern raw;
    for ( std::size_t r = 0; r < pattern.region_count(); ++r )
    {
        const auto& entry = pattern.at( r );
        if ( !entry )
            continue;
        const auto& setting = scenario.setting( r, entry->setting );
        std::optional< std::string > outcome;
        if ( entry->outcome )
            outcome = setting.outcomes[ *entry->outcome ];
        raw.push_back( { scenario.regions()[ r ].name, setting.name, outcome } );
    }
    return raw;
}

} // namespace

bool is_identifier( std::string_view text )
{
    if ( text.empty() || !( std::isalpha( static_cast< unsigned char >( text.front() ) ) || text.front() == '_' ) )
        return false;
    return std::all_of( text.begin(), text.end(),
                        []( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_'; } );
}

bool is_outcome_label( std::string_view text )
{
    return !text.empty() && std::all_of( text.begin(), text.end(), is_label_char );
}

bool WorldPattern::is_universal() const
{
    return std::none_of( _entries.begin(), _entries.end(), []( const auto& entry ) { return entry.has_value(); } );
}

bool WorldPattern::matches( const World& world ) const
{
    for ( std::size_t r = 0; r < _entries.size(); ++r )
    {
        const auto& entry = _entries[ r ];
        if ( !entry )
            continue;
        if ( world[ r ].setting != entry->setting )
            return false;
        if ( entry->outcome && world[ r ].outcome != *entry->outcome )
            return false;
    }
    return true;
}

WorldPattern WorldPattern::of_world( const World& world )
{
    WorldPattern pattern( world.size() );
    for ( std::size_t r = 0; r < world.size(); ++r )
        pattern.set( r, { world[ r ].setting, world[ r ].outcome } );
    return pattern;
}

std::optional< std::size_t > Scenario::find_region( std::string_view name ) const
{
    for ( std::size_t r = 0; r < _regions.size(); ++r )
    {
        if ( _regions[ r ].name == name )
            return r;
    }
    return std::nullopt;
}

std::optional< SettingRef > Scenario::find_setting( std::string_view name ) const
{
    for ( std::size_t r = 0; r < _regions.size(); ++r )
    {
        const auto& settings = _regions[ r ].settings;
        for ( std::size_t s = 0; s < settings.size(); ++s )
        {
            if ( settings[ s ].name == name )
                return SettingRef{ r, s };
        }
    }
    return std::nullopt;
}

std::optional< std::size_t > Scenario::find_outcome( SettingRef ref, std::string_view label ) const
{
    const auto& outcomes = setting( ref ).outcomes;
    for ( std::size_t o = 0; o < outcomes.size(); ++o )
    {
        if ( outcomes[ o ] == label )
            return o;
    }
    return std::nullopt;
}

bool Scenario::admits( const World& world ) const
{
    if ( world.size() != _regions.size() )
        return false;
    for ( std::size_t r = 0; r < world.size(); ++r )
    {
        const auto& settings = _regions[ r ].settings;
        if ( world[ r ].setting >= settings.size() || world[ r ].outcome >= settings[ world[ r ].setting ].outcomes.size() )
            return false;
    }
    return true;
}

std::string Scenario::format_world( const World& world ) const
{
    std::string text;
    for ( std::size_t r = 0; r < world.size(); ++r )
    {
        if ( r > 0 )
            text += ',';
        const auto& setting = this->setting( r, world[ r ].setting );
        text += setting.name;
        text += setting.outcomes[ world[ r ].outcome ];
    }
    return text;
}

std::string Scenario::format_pattern( const WorldPattern& pattern ) const
{
    std::string text;
    for ( std::size_t r = 0; r < pattern.region_count(); ++r )
    {
        const auto& entry = pattern.at( r );
        if ( !entry )
            continue;
        if ( !text.empty() )
            text += ',';
        const auto& setting = this->setting( r, entry->setting );
        text += setting.name;
        if ( entry->outcome )
            text += setting.outcomes[ *entry->outcome ];
    }
    return text.empty() ? "*" : text;
}

std::string Scenario::format_constraint( const Constraint& constraint ) const
{
    if ( const auto* forbid = std::get_if< Forbid >( &constraint.body ) )
        return "forbid " + format_pattern( forbid->pattern );

    const auto& conditional = std::get< Conditional >( constraint.body );
    const auto& consequence = conditional.consequence;
    const auto& setting = this->setting( consequence.region, consequence.setting );
    return "if " + format_pattern( conditional.condition ) + " then " + setting.name +
           setting.outcomes[ consequence.outcome ];
}

Scenario validate_scenario( const RawScenario& raw )
{
    Scenario scenario;

    if ( raw.name.empty() )
        throw validation_error( "scenario name is empty" );
    if ( raw.regions.empty() )
        throw validation_error( "scenario declares no regions" );
    if ( raw.regions.size() > 1 && !raw.spacelike )
        throw validation_error( "regions must be attested pairwise spacelike-separated" );

    std::set< std::string > region_names;
    std::set< std::string > setting_names;
    for ( const auto& region : raw.regions )
    {
        if ( !is_identifier( region.name ) )
            throw validation_error( "invalid region name '" + region.name + "'" );
        if ( !region_names.insert( region.name ).second )
            throw validation_error( "duplicate region name '" + region.name + "'" );
        if ( region.settings.empty() )
            throw validation_error( "region '" + region.name + "' declares no settings" );

        for ( const auto& setting : region.settings )
        {
            if ( !is_identifier( setting.name ) )
                throw validation_error( "invalid setting name '" + setting.name + "'" );
            if ( !setting_names.insert( setting.name ).second )
                throw validation_error( "duplicate setting name '" + setting.name + "'" );
            if ( setting.outcomes.empty() )
                throw validation_error( "setting '" + setting.name + "' declares no outcomes" );

            std::set< std::string > labels;
            for ( const auto& label : setting.outcomes )
            {
                if ( !is_outcome_label( label ) )
                    throw validation_error( "invalid outcome label '" + label + "' in setting '" + setting.name + "'" );
                if ( !labels.insert( label ).second )
                    throw validation_error( "duplicate outcome '" + label + "' in setting '" + setting.name + "'" );
            }
        }
    }

    scenario._name = raw.name;
    scenario._spacelike = raw.spacelike;
    scenario._regions = raw.regions;

    for ( std::size_t i = 0; i < raw.constraints.size(); ++i )
    {
        const auto& source = raw.constraints[ i ];
        Resolver resolve{ scenario, "constraint '" + source.label + "'" };
        Constraint constraint{ source.label, Forbid{} };

        if ( const auto* forbid = std::get_if< RawForbid >( &source.body ) )
        {
            constraint.body = Forbid{ resolve.pattern( forbid->pattern ) };
        }
        else
        {
            const auto& conditional = std::get< RawConditional >( source.body );
            auto ref = resolve.setting( conditional.region, conditional.setting );
            auto outcome = resolve.outcome( ref, conditional.outcome );
            constraint.body = Conditional{ resolve.pattern( conditional.condition ), { ref.region, ref.setting, outcome } };
        }
        scenario._constraints.push_back( std::move( constraint ) );
    }

    for ( const auto& source : raw.possibilities )
    {
        Resolver resolve{ scenario, "possibility '" + source.label + "'" };
        scenario._possibilities.push_back( { source.label, resolve.pattern( source.pattern ) } );
    }

    return scenario;
}

RawScenario to_raw( const Scenario& scenario )
{
    RawScenario raw;
    raw.name = scenario.name();
    raw.spacelike = scenario.spacelike();
    raw.regions = scenario.regions();

    for ( const auto& constraint : scenario.constraints() )
    {
        RawConstraint out{ constraint.label, RawForbid{} };
        if ( const auto* forbid = std::get_if< Forbid >( &constraint.body ) )
        {
            out.body = RawForbid{ pattern_to_raw( scenario, forbid->pattern ) };
        }
        else
        {
            const auto& conditional = std::get< Conditional >( constraint.body );
            const auto& consequence = conditional.consequence;
            const auto& setting = scenario.setting( consequence.region, consequence.setting );
            out.body = RawConditional{ pattern_to_raw( scenario, conditional.condition ),
                                       scenario.regions()[ consequence.region ].name, setting.name,
                                       setting.outcomes[ consequence.outcome ] };
        }
        raw.constraints.push_back( std::move( out ) );
    }

    for ( const auto& possibility : scenario.possibilities() )
        raw.possibilities.push_back( { possibility.label, pattern_to_raw( scenario, possibility.pattern ) } );

    return raw;
}

std::vector< WorldPattern > normalize_constraint( const Scenario& scenario, const Constraint& constraint )
{
    if ( const auto* forbid = std::get_if< Forbid >( &constraint.body ) )
        return { forbid->pattern };

    const auto& conditional = std::get< Conditional >( constraint.body );
    const auto& consequence = conditional.consequence;
    const auto& existing = conditional.condition.at( consequence.region );
    const auto outcome_count = scenario.setting( consequence.region, consequence.setting ).outcomes.size();

    std::vector< WorldPattern > patterns;
    for ( std::size_t o = 0; o < outcome_count; ++o )
    {
        if ( o == consequence.outcome )
            continue;
        // The condition already pins this region to something incompatible.
        if ( existing && ( existing->setting != consequence.setting || ( existing->outcome && *existing->outcome != o ) ) )
            continue;

        auto pattern = conditional.condition;
        pattern.set( consequence.region, { consequence.setting, o } );
        if ( std::find( patterns.begin(), patterns.end(), pattern ) == patterns.end() )
            patterns.push_back( std::move( pattern ) );
    }
    return patterns;
}

std::vector< WorldPattern > normalize_constraints( const Scenario& scenario )
{
    std::vector< WorldPattern > patterns;
    for ( const auto& constraint : scenario.constraints() )
    {
        auto expanded = normalize_constraint( scenario, constraint );
        patterns.insert( patterns.end(), expanded.begin(), expanded.end() );
    }
    return patterns;
}

RawPattern parse_raw_pattern( const std::vector< Region >& regions, std::string_view text )
{
    RawPattern pattern;
    for ( auto& item : parse_items( regions, text ) )
        pattern.push_back( std::move( item.entry ) );
    return pattern;
}

WorldPattern parse_pattern( const Scenario& scenario, std::string_view text )
{
    WorldPattern pattern( scenario.region_count() );
    for ( const auto& item : parse_items( scenario.regions(), text ) )
    {
        auto ref = *scenario.find_setting( item.entry.setting );
        PatternEntry entry{ ref.setting, std::nullopt };
        if ( item.entry.outcome )
            entry.outcome = scenario.find_outcome( ref, *item.entry.outcome );
        pattern.set( ref.region, entry );
    }
    return pattern;
}

World parse_world( const Scenario& scenario, std::string_view text )
{
    auto items = parse_items( scenario.regions(), text );
    std::vector< Choice > choices( scenario.region_count() );
    std::vector< bool > seen( scenario.region_count(), false );

    for ( const auto& item : items )
    {
        if ( !item.entry.outcome )
            throw parse_error( { 1, item.column }, "world item '" + item.entry.setting + "' needs an outcome" );
        auto ref = *scenario.find_setting( item.entry.setting );
        choices[ ref.region ] = { ref.setting, *scenario.find_outcome( ref, *item.entry.outcome ) };
        seen[ ref.region ] = true;
    }
    for ( std::size_t r = 0; r < seen.size(); ++r )
    {
        if ( !seen[ r ] )
            throw parse_error( { 1, 0 }, "world does not assign region '" + scenario.regions()[ r ].name + "'" );
    }
    return World{ std::move( choices ) };
}

} // namespace cfcheck
