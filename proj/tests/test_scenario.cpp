#include <doctest.h>

#include "cfcheck/bundled.hpp"
#include "cfcheck/error.hpp"
#include "cfcheck/scenario.hpp"
#include "support/her.hpp"
#include "support/oracle.hpp"

#include <random>

using namespace cfcheck;

namespace
{

RawScenario two_by_two()
{
    RawScenario raw;
    raw.name = "t";
    raw.regions = { { "L", { { "L1", { "+", "-" } }, { "L2", { "+", "-" } } } },
                    { "R", { { "R1", { "+", "-" } }, { "R2", { "+", "-" } } } } };
    return raw;
}

Constraint conditional_of( const Scenario& s, const std::string& label )
{
    for ( const auto& c : s.constraints() )
    {
        if ( c.label == label )
            return c;
    }
    FAIL( "no constraint " << label );
    return {};
}

} // namespace

TEST_CASE( "HER scenario validates with the expected shape" )
{
    const auto& s = *her_scenario();
    CHECK( s.name() == "her" );
    REQUIRE( s.region_count() == 2 );
    CHECK( s.regions()[ 0 ].name == "L" );
    CHECK( s.regions()[ 1 ].name == "R" );
    CHECK( s.constraints().size() == 3 );
    CHECK( s.possibilities().size() == 2 );
    for ( const auto& region : s.regions() )
    {
        CHECK( region.settings.size() == 2 );
        for ( const auto& setting : region.settings )
            CHECK( setting.outcomes == std::vector< std::string >{ "+", "-" } );
    }
}

TEST_CASE( "validation rejects dangling references" )
{
    auto raw = two_by_two();
    raw.constraints.push_back( { "bad", RawForbid{ { { "", "R3", std::string{ "+" } } } } } );
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "unknown setting 'R3'" ), validation_error );

    raw = two_by_two();
    raw.possibilities.push_back( { "p", { { "L", "R1", std::nullopt } } } );
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "does not belong to region 'L'" ),
                          validation_error );

    raw = two_by_two();
    raw.constraints.push_back( { "c", RawConditional{ {}, "", "L1", "x" } } );
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "no outcome 'x'" ), validation_error );

    raw = two_by_two();
    raw.possibilities.push_back( { "p", { { "Q", "R1", std::nullopt } } } );
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "unknown region 'Q'" ), validation_error );
}

TEST_CASE( "validation rejects duplicates and empty lists" )
{
    auto raw = two_by_two();
    raw.regions[ 1 ].name = "L";
    CHECK_THROWS_AS( (void)validate_scenario( raw ), validation_error );

    raw = two_by_two();
    raw.regions[ 1 ].settings[ 0 ].name = "L1";
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "duplicate setting" ), validation_error );

    raw = two_by_two();
    raw.regions[ 0 ].settings[ 0 ].outcomes = { "+", "+" };
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "duplicate outcome" ), validation_error );

    raw = two_by_two();
    raw.regions[ 0 ].settings.clear();
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "no settings" ), validation_error );

    raw = two_by_two();
    raw.regions[ 0 ].settings[ 1 ].outcomes.clear();
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "no outcomes" ), validation_error );

    raw = two_by_two();
    raw.regions.clear();
    CHECK_THROWS_AS( (void)validate_scenario( raw ), validation_error );

    raw = two_by_two();
    raw.constraints.push_back( { "c", RawForbid{ { { "", "L1", std::nullopt }, { "", "L2", std::nullopt } } } } );
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "constrained twice" ), validation_error );
}

TEST_CASE( "spacelike attestation is required for more than one region" )
{
    auto raw = two_by_two();
    raw.spacelike = false;
    CHECK_THROWS_WITH_AS( (void)validate_scenario( raw ), doctest::Contains( "spacelike" ), validation_error );

    RawScenario single{ "one", false, { { "A", { { "A1", { "x" } } } } }, {}, {} };
    CHECK_NOTHROW( (void)validate_scenario( single ) );
}

TEST_CASE( "minimal scenario: one region, one setting, one outcome" )
{
    RawScenario raw{ "min", true, { { "A", { { "A1", { "x" } } } } }, {}, {} };
    auto s = validate_scenario( raw );
    CHECK( s.region_count() == 1 );
    CHECK( normalize_constraints( s ).empty() );
}

TEST_CASE( "validate_scenario is idempotent" )
{
    const auto& her = *her_scenario();
    CHECK( validate_scenario( to_raw( her ) ) == her );

    std::mt19937 rng{ 11 };
    for ( int i = 0; i < 50; ++i )
    {
        auto once = validate_scenario( oracle::random_scenario( rng ) );
        CHECK( validate_scenario( to_raw( once ) ) == once );
    }
}

TEST_CASE( "normalize_constraints expands the HER predictions" )
{
    const auto& s = *her_scenario();

    auto one = normalize_constraint( s, conditional_of( s, "prediction-1" ) );
    REQUIRE( one.size() == 1 );
    CHECK( s.format_pattern( one[ 0 ] ) == "L2-,R2+" );

    auto two = normalize_constraint( s, conditional_of( s, "prediction-2" ) );
    REQUIRE( two.size() == 1 );
    CHECK( s.format_pattern( two[ 0 ] ) == "L2+,R1+" );

    auto three = normalize_constraint( s, conditional_of( s, "prediction-3" ) );
    REQUIRE( three.size() == 1 );
    CHECK( s.format_pattern( three[ 0 ] ) == "L1-,R2-" );

    CHECK( normalize_constraints( s ).size() == 3 );
}

TEST_CASE( "forbid constraints pass through normalisation unchanged" )
{
    auto raw = two_by_two();
    raw.constraints.push_back( { "f", RawForbid{ { { "", "L1", std::string{ "-" } }, { "", "R2", std::nullopt } } } } );
    auto s = validate_scenario( raw );
    auto patterns = normalize_constraints( s );
    REQUIRE( patterns.size() == 1 );
    CHECK( patterns[ 0 ] == std::get< Forbid >( s.constraints()[ 0 ].body ).pattern );
}

TEST_CASE( "conditional with a conflicting condition never forbids anything" )
{
    auto raw = two_by_two();
    // Condition fixes L1 but the consequence is about L2.
    raw.constraints.push_back( { "c", RawConditional{ { { "", "L1", std::nullopt } }, "", "L2", "+" } } );
    // Condition already fixes the required outcome.
    raw.constraints.push_back( { "d", RawConditional{ { { "", "L2", std::string{ "+" } } }, "", "L2", "+" } } );
    auto s = validate_scenario( raw );
    CHECK( normalize_constraint( s, s.constraints()[ 0 ] ).empty() );
    CHECK( normalize_constraint( s, s.constraints()[ 1 ] ).empty() );
}

TEST_CASE( "property: a world violates a constraint iff it matches its normal form" )
{
    std::mt19937 rng{ 2024 };
    for ( int i = 0; i < 100; ++i )
    {
        auto s = validate_scenario( oracle::random_scenario( rng, 200 ) );
        auto worlds = oracle::candidates( s );
        for ( const auto& constraint : s.constraints() )
        {
            auto patterns = normalize_constraint( s, constraint );
            for ( const auto& w : worlds )
            {
                bool via_patterns = std::any_of( patterns.begin(), patterns.end(),
                                                 [ & ]( const WorldPattern& p ) { return p.matches( w ); } );
                CHECK( via_patterns == oracle::violates( constraint, w ) );
            }
        }
    }
}

TEST_CASE( "property: pattern matching is monotone under extension" )
{
    std::mt19937 rng{ 7 };
    for ( int i = 0; i < 60; ++i )
    {
        auto s = validate_scenario( oracle::random_scenario( rng, 300 ) );
        auto worlds = oracle::candidates( s );
        std::uniform_int_distribution< std::size_t > any_world( 0, worlds.size() - 1 );

        for ( int k = 0; k < 20; ++k )
        {
            // Start from a world, drop some entries / outcomes to get P, keep P' in between.
            auto full = WorldPattern::of_world( worlds[ any_world( rng ) ] );
            WorldPattern base = full, extended = full;
            for ( std::size_t r = 0; r < s.region_count(); ++r )
            {
                auto roll = rng() % 4;
                if ( roll == 0 )
                {
                    base.clear( r );
                    extended.clear( r );
                }
                else if ( roll == 1 )
                {
                    base.clear( r );
                }
                else if ( roll == 2 )
                {
                    base.set( r, { full.at( r )->setting, std::nullopt } );
                }
            }
            for ( const auto& w : worlds )
            {
                if ( extended.matches( w ) )
                    CHECK( base.matches( w ) );
            }
        }
    }
}

TEST_CASE( "world and pattern literals" )
{
    const auto& s = *her_scenario();
    auto w = parse_world( s, "L2+,R2+" );
    CHECK( s.format_world( w ) == "L2+,R2+" );
    CHECK( parse_world( s, " R2 + , L2+ " ) == w );

    CHECK( s.format_pattern( parse_pattern( s, "*" ) ) == "*" );
    CHECK( parse_pattern( s, "*" ).is_universal() );
    CHECK( s.format_pattern( parse_pattern( s, "R1, L1-" ) ) == "L1-,R1" );

    CHECK_THROWS_AS( (void)parse_world( s, "L2+" ), parse_error );
    CHECK_THROWS_AS( (void)parse_world( s, "L2,R2+" ), parse_error );
    CHECK_THROWS_AS( (void)parse_pattern( s, "" ), parse_error );

    try
    {
        (void)parse_pattern( s, "L1+, R3+" );
        FAIL( "expected a parse error" );
    }
    catch ( const parse_error& e )
    {
        CHECK( e.position().column == 6 );
        CHECK( std::string{ e.what() }.find( "unknown setting" ) != std::string::npos );
    }
    try
    {
        (void)parse_pattern( s, "L1+,L2-" );
        FAIL( "expected a parse error" );
    }
    catch ( const parse_error& e )
    {
        CHECK( e.position().column == 5 );
    }
    CHECK_THROWS_WITH_AS( (void)parse_pattern( s, "L1x" ), doctest::Contains( "no outcome 'x'" ), parse_error );
}

TEST_CASE( "literal parsing picks the longest matching setting name" )
{
    RawScenario raw{ "p", true, { { "A", { { "S", { "1+", "x" } } } }, { "B", { { "S1", { "+" } } } } }, {}, {} };
    auto s = validate_scenario( raw );
    auto p = parse_pattern( s, "S1+" );
    REQUIRE( p.at( 1 ) );
    CHECK_FALSE( p.at( 0 ) );
    // "S1+" as a world item resolves to S1 with outcome "+", so region A is missing.
    CHECK_THROWS_AS( (void)parse_world( s, "S1+" ), parse_error );
    CHECK( s.format_world( parse_world( s, "Sx,S1+" ) ) == "Sx,S1+" );
}
