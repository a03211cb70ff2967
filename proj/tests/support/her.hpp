#pragma once

#include "cfcheck/bundled.hpp"
#include "cfcheck/evaluator.hpp"
#include "cfcheck/world_engine.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace fixture
{

inline const cfcheck::WorldSet& her_possible()
{
    static const auto possible = cfcheck::filter_possible( cfcheck::enumerate_candidates( cfcheck::her_scenario() ) );
    return possible;
}

inline cfcheck::World world( const cfcheck::Scenario& scenario, const std::string& text )
{
    return cfcheck::parse_world( scenario, text );
}

inline cfcheck::World her_world( const std::string& text ) { return world( *cfcheck::her_scenario(), text ); }

inline std::vector< cfcheck::World > her_worlds( std::initializer_list< const char* > texts )
{
    std::vector< cfcheck::World > out;
    for ( const auto* text : texts )
        out.push_back( her_world( text ) );
    return out;
}

inline cfcheck::Formula her_formula( const std::string& text )
{
    return cfcheck::parse_formula( text, *cfcheck::her_scenario() );
}

inline cfcheck::Formula sr() { return her_formula( std::string{ cfcheck::bundled_sr_formula() } ); }

inline std::vector< std::string > formatted( const cfcheck::Scenario& scenario, const std::vector< cfcheck::World >& worlds )
{
    std::vector< std::string > out;
    for ( const auto& w : worlds )
        out.push_back( scenario.format_world( w ) );
    return out;
}

} // namespace fixture
