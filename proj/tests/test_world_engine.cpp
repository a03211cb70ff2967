#include <doctest.h>

#include "cfcheck/bundled.hpp"
#include "cfcheck/error.hpp"
#include "cfcheck/world_engine.hpp"
#include "support/her.hpp"
#include "support/oracle.hpp"

#include <algorithm>
#include <random>

using namespace cfcheck;

namespace
{

std::shared_ptr< const Scenario > make( RawScenario raw )
{
    return std::make_shared< const Scenario >( validate_scenario( raw ) );
}

RawScenario her_without_constraints()
{
    auto raw = to_raw( *her_scenario() );
    raw.constraints.clear();
    return raw;
}

} // namespace

TEST_CASE( "HER: sixteen candidates in declaration order" )
{
    auto candidates = enumerate_candidates( her_scenario() );
    CHECK( candidates.tag() == WorldSetTag::candidate );
    const std::vector< std::string > expected{ "L1+,R1+", "L1+,R1-", "L1+,R2+", "L1+,R2-", "L1-,R1+", "L1-,R1-",
                                               "L1-,R2+", "L1-,R2-", "L2+,R1+", "L2+,R1-", "L2+,R2+", "L2+,R2-",
                                               "L2-,R1+", "L2-,R1-", "L2-,R2+", "L2-,R2-" };
    CHECK( fixture::formatted( candidates.scenario(), candidates.worlds() ) == expected );
}

TEST_CASE( "candidate counts" )
{
    auto one = make( { "one", true, { { "A", { { "A1", { "x", "y" } } } } }, {}, {} } );
    CHECK( enumerate_candidates( one ).size() == 2 );

    // Three regions, two settings of two outcomes each: (2*2)^3.
    RawScenario three{ "three", true, {}, {}, {} };
    for ( std::string r : { "A", "B", "C" } )
        three.regions.push_back( { r, { { r + "1", { "+", "-" } }, { r + "2", { "+", "-" } } } } );
    auto s = make( three );
    auto expected = oracle::candidates( *s ).size();
    CHECK( expected == 64 );
    CHECK( enumerate_candidates( s ).size() == expected );
    CHECK( candidate_count( *s ) == 64u );
}

TEST_CASE( "enumeration matches the recursive oracle on random scenarios" )
{
    std::mt19937 rng{ 5 };
    for ( int i = 0; i < 100; ++i )
    {
        auto s = make( oracle::random_scenario( rng ) );
        CHECK( enumerate_candidates( s ).worlds() == oracle::candidates( *s ) );
    }
}

TEST_CASE( "size guard" )
{
    RawScenario big{ "big", true, {}, {}, {} };
    for ( int r = 0; r < 10; ++r )
    {
        std::string name = "G" + std::to_string( r );
        big.regions.push_back( { name, { { name + "a", { "0", "1", "2", "3" } }, { name + "b", { "0", "1", "2", "3" } } } } );
    }
    auto s = make( big ); // 8^10 candidates
    CHECK_THROWS_AS( (void)enumerate_candidates( s ), size_guard_error );
    CHECK_THROWS_AS( (void)enumerate_candidates( her_scenario(), 15 ), size_guard_error );
    CHECK( enumerate_candidates( her_scenario(), 16 ).size() == 16 );
}

TEST_CASE( "HER: filtering leaves thirteen worlds" )
{
    auto candidates = enumerate_candidates( her_scenario() );
    auto possible = filter_possible( candidates );
    CHECK( possible.tag() == WorldSetTag::possible );
    CHECK( possible.size() == 13 );

    std::vector< std::string > removed;
    for ( const auto& w : candidates )
    {
        if ( !possible.contains( w ) )
            removed.push_back( candidates.scenario().format_world( w ) );
    }
    CHECK( removed == std::vector< std::string >{ "L1-,R2-", "L2+,R1+", "L2-,R2+" } );

    auto attributed = eliminations( candidates );
    REQUIRE( attributed.size() == 3 );
    const auto& constraints = her_scenario()->constraints();
    CHECK( constraints[ attributed[ 0 ].constraints.at( 0 ) ].label == "prediction-3" );
    CHECK( constraints[ attributed[ 1 ].constraints.at( 0 ) ].label == "prediction-2" );
    CHECK( constraints[ attributed[ 2 ].constraints.at( 0 ) ].label == "prediction-1" );
}

TEST_CASE( "empty constraint list keeps every candidate" )
{
    auto s = make( her_without_constraints() );
    auto candidates = enumerate_candidates( s );
    auto possible = filter_possible( candidates );
    CHECK( possible.size() == 16 );
    CHECK( possible.worlds() == candidates.worlds() );
    CHECK( eliminations( candidates ).empty() );
}

TEST_CASE( "universal forbid pattern empties the possible set" )
{
    auto raw = her_without_constraints();
    raw.constraints.push_back( { "all", RawForbid{} } );
    auto possible = filter_possible( enumerate_candidates( make( raw ) ) );
    CHECK( possible.empty() );
}

TEST_CASE( "possibility assertions" )
{
    const auto& possible = fixture::her_possible();
    auto report = check_possibilities( possible );
    REQUIRE( report.results.size() == 2 );
    CHECK( report.satisfied() );
    CHECK( possible.scenario().format_world( *report.results[ 0 ].witness ) == "L1-,R1+" );
    CHECK( possible.scenario().format_world( *report.results[ 1 ].witness ) == "L1-,R1-" );

    auto raw = to_raw( *her_scenario() );
    raw.possibilities = { { "gone", { { "", "L2", std::string{ "+" } }, { "", "R1", std::string{ "+" } } } } };
    auto unsatisfied = check_possibilities( filter_possible( enumerate_candidates( make( raw ) ) ) );
    CHECK_FALSE( unsatisfied.satisfied() );
    CHECK_FALSE( unsatisfied.results[ 0 ].witness );

    raw.possibilities.clear();
    CHECK( check_possibilities( filter_possible( enumerate_candidates( make( raw ) ) ) ).satisfied() );
}

TEST_CASE( "property: filtering is a subset, order-preserving and idempotent" )
{
    std::mt19937 rng{ 99 };
    for ( int i = 0; i < 100; ++i )
    {
        auto s = make( oracle::random_scenario( rng ) );
        auto candidates = enumerate_candidates( s );
        auto possible = filter_possible( candidates );
        CHECK( std::includes( candidates.begin(), candidates.end(), possible.begin(), possible.end() ) );
        CHECK( std::is_sorted( possible.begin(), possible.end() ) );
        CHECK( filter_possible( possible ).worlds() == possible.worlds() );
    }
}

TEST_CASE( "property: filtering agrees with the direct constraint oracle" )
{
    std::mt19937 rng{ 31337 };
    for ( int i = 0; i < 150; ++i )
    {
        auto s = make( oracle::random_scenario( rng ) );
        CHECK( filter_possible( enumerate_candidates( s ) ).worlds() == oracle::possible( *s ) );
    }
}

TEST_CASE( "property: filtering is independent of constraint order" )
{
    std::mt19937 rng{ 4242 };
    for ( int i = 0; i < 100; ++i )
    {
        auto raw = oracle::random_scenario( rng );
        auto reference = filter_possible( enumerate_candidates( make( raw ) ) ).worlds();
        for ( int k = 0; k < 3; ++k )
        {
            std::shuffle( raw.constraints.begin(), raw.constraints.end(), rng );
            CHECK( filter_possible( enumerate_candidates( make( raw ) ) ).worlds() == reference );
        }
    }
}

TEST_CASE( "WorldSet lookups" )
{
    const auto& possible = fixture::her_possible();
    CHECK( possible.contains( fixture::her_world( "L2+,R2+" ) ) );
    CHECK_FALSE( possible.contains( fixture::her_world( "L2-,R2+" ) ) );
    CHECK( possible.index_of( fixture::her_world( "L1+,R1+" ) ) == 0u );
    CHECK( possible.index_of( fixture::her_world( "L2-,R2-" ) ) == 12u );
    CHECK_FALSE( possible.index_of( fixture::her_world( "L1-,R2-" ) ) );
}
