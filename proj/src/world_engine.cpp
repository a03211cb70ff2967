#include "cfcheck/world_engine.hpp"

#include "cfcheck/error.hpp"

#include <algorithm>
#include <limits>

namespace cfcheck
{

WorldSet::WorldSet( std::shared_ptr< const Scenario > scenario, std::vector< World > worlds, WorldSetTag tag )
    : _scenario{ std::move( scenario ) }, _worlds{ std::move( worlds ) }, _tag{ tag }
{
    std::sort( _worlds.begin(), _worlds.end() );
    _worlds.erase( std::unique( _worlds.begin(), _worlds.end() ), _worlds.end() );
}

bool WorldSet::contains( const World& world ) const
{
    return std::binary_search( _worlds.begin(), _worlds.end(), world );
}

std::optional< std::size_t > WorldSet::index_of( const World& world ) const
{
    auto it = std::lower_bound( _worlds.begin(), _worlds.end(), world );
    if ( it == _worlds.end() || *it != world )
        return std::nullopt;
    return static_cast< std::size_t >( it - _worlds.begin() );
}

std::optional< std::size_t > candidate_count( const Scenario& scenario )
{
    std::size_t total = 1;
    for ( const auto& region : scenario.regions() )
    {
        std::size_t choices = 0;
        for ( const auto& setting : region.settings )
            choices += setting.outcomes.size();
        if ( choices != 0 && total > std::numeric_limits< std::size_t >::max() / choices )
            return std::nullopt;
        total *= choices;
    }
    return total;
}

WorldSet enumerate_candidates( std::shared_ptr< const Scenario > scenario, std::size_t max_worlds )
{
    auto count = candidate_count( *scenario );
    if ( !count || *count > max_worlds )
        throw size_guard_error( "scenario '" + scenario->name() + "' has more than " + std::to_string( max_worlds ) +
                                " candidate worlds" );

    // Per-region choice lists in declaration order.
    std::vector< std::vector< Choice > > axes;
    for ( const auto& region : scenario->regions() )
    {
        auto& axis = axes.emplace_back();
        for ( std::size_t s = 0; s < region.settings.size(); ++s )
        {
            for ( std::size_t o = 0; o < region.settings[ s ].outcomes.size(); ++o )
                axis.push_back( { s, o } );
        }
    }

    std::vector< World > worlds;
    worlds.reserve( *count );
    std::vector< std::size_t > odometer( axes.size(), 0 );
    while ( true )
    {
        std::vector< Choice > choices;
        choices.reserve( axes.size() );
        for ( std::size_t r = 0; r < axes.size(); ++r )
            choices.push_back( axes[ r ][ odometer[ r ] ] );
        worlds.emplace_back( std::move( choices ) );

        // The last region varies fastest.
        std::size_t r = axes.size();
        while ( r > 0 )
        {
            --r;
            if ( ++odometer[ r ] < axes[ r ].size() )
                break;
            odometer[ r ] = 0;
            if ( r == 0 )
                return WorldSet{ std::move( scenario ), std::move( worlds ), WorldSetTag::candidate };
        }
    }
}

WorldSet filter_possible( const WorldSet& candidates )
{
    return filter_possible( candidates, candidates.scenario() );
}

WorldSet filter_possible( const WorldSet& candidates, const Scenario& scenario )
{
    const auto forbidden = normalize_constraints( scenario );
    std::vector< World > kept;
    for ( const auto& world : candidates )
    {
        bool excluded = std::any_of( forbidden.begin(), forbidden.end(),
                                     [ & ]( const WorldPattern& pattern ) { return pattern.matches( world ); } );
        if ( !excluded )
            kept.push_back( world );
    }
    return WorldSet{ candidates.scenario_ptr(), std::move( kept ), WorldSetTag::possible };
}

std::vector< Elimination > eliminations( const WorldSet& candidates )
{
    const auto& scenario = candidates.scenario();
    std::vector< std::vector< WorldPattern > > expanded;
    for ( const auto& constraint : scenario.constraints() )
        expanded.push_back( normalize_constraint( scenario, constraint ) );

    std::vector< Elimination > result;
    for ( const auto& world : candidates )
    {
        Elimination elimination{ world, {} };
        for ( std::size_t c = 0; c < expanded.size(); ++c )
        {
            if ( std::any_of( expanded[ c ].begin(), expanded[ c ].end(),
                              [ & ]( const WorldPattern& pattern ) { return pattern.matches( world ); } ) )
                elimination.constraints.push_back( c );
        }
        if ( !elimination.constraints.empty() )
            result.push_back( std::move( elimination ) );
    }
    return result;
}

bool PossibilityReport::satisfied() const
{
    return std::all_of( results.begin(), results.end(), []( const auto& result ) { return result.witness.has_value(); } );
}

PossibilityReport check_possibilities( const WorldSet& possible )
{
    PossibilityReport report;
    for ( const auto& possibility : possible.scenario().possibilities() )
    {
        PossibilityResult result{ possibility.label, possibility.pattern, std::nullopt };
        auto it = std::find_if( possible.begin(), possible.end(),
                                [ & ]( const World& world ) { return possibility.pattern.matches( world ); } );
        if ( it != possible.end() )
            result.witness = *it;
        report.results.push_back( std::move( result ) );
    }
    return report;
}

} // namespace cfcheck
