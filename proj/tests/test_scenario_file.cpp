#include <doctest.h>

#include "cfcheck/bundled.hpp"
#include "cfcheck/error.hpp"
#include "cfcheck/scenario_file.hpp"
#include "support/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cfcheck;

namespace
{

const char* const minimal = "[scenario]\nname = m\nspacelike = true\n\n[region A]\nA1 = x, y\n";

source_position error_position( const std::string& text )
{
    try
    {
        (void)read_scenario( text );
    }
    catch ( const parse_error& e )
    {
        return e.position();
    }
    FAIL( "no parse error for:\n" << text );
    return {};
}

std::string read_file( const std::filesystem::path& path )
{
    std::ifstream in( path, std::ios::binary );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE( "the bundled HER text is the asset file" )
{
    auto path = std::filesystem::path{ CFCHECK_SOURCE_DIR } / "assets" / "her.scenario";
    CHECK( read_file( path ) == bundled_her_scenario() );
    CHECK( load_scenario( path ) == *her_scenario() );
}

TEST_CASE( "HER file content" )
{
    auto raw = parse_scenario_file( bundled_her_scenario() );
    CHECK( raw.name == "her" );
    CHECK( raw.spacelike );
    REQUIRE( raw.constraints.size() == 3 );
    CHECK( raw.constraints[ 0 ].label == "prediction-1" );
    const auto& conditional = std::get< RawConditional >( raw.constraints[ 0 ].body );
    REQUIRE( conditional.condition.size() == 2 );
    CHECK( conditional.condition[ 0 ].setting == "L2" );
    CHECK_FALSE( conditional.condition[ 0 ].outcome );
    CHECK( conditional.condition[ 1 ].setting == "R2" );
    CHECK( conditional.condition[ 1 ].outcome == "+" );
    CHECK( conditional.setting == "L2" );
    CHECK( conditional.outcome == "+" );
    REQUIRE( raw.possibilities.size() == 2 );
    CHECK( raw.possibilities[ 1 ].label == "prediction-4b" );
}

TEST_CASE( "forbid lines, default labels, comments and CRLF" )
{
    std::string text = std::string{ minimal } +
                       "[region B]\r\nB1 = x\r\n# comment\n[constraints]\nforbid A1x, B1\n  tagged : forbid *\n"
                       "[possibilities]\nA1y\n";
    auto raw = parse_scenario_file( text );
    REQUIRE( raw.constraints.size() == 2 );
    CHECK( raw.constraints[ 0 ].label == "c1" );
    CHECK( std::get< RawForbid >( raw.constraints[ 0 ].body ).pattern.size() == 2 );
    CHECK( raw.constraints[ 1 ].label == "tagged" );
    CHECK( std::get< RawForbid >( raw.constraints[ 1 ].body ).pattern.empty() );
    REQUIRE( raw.possibilities.size() == 1 );
    CHECK( raw.possibilities[ 0 ].label == "p1" );
}

TEST_CASE( "sections may appear in any order after the regions they use" )
{
    std::string text = "[constraints]\nforbid A1x\n[region A]\nA1 = x, y\n[scenario]\nname = late\n";
    auto s = read_scenario( text );
    CHECK( s.name() == "late" );
    CHECK( s.constraints().size() == 1 );
}

TEST_CASE( "structural errors carry line and column" )
{
    auto at = []( const std::string& text, std::size_t line, std::size_t column ) {
        auto p = error_position( text );
        CHECK( p.line == line );
        CHECK( p.column == column );
    };

    at( "name = x\n", 1, 1 );                                              // content before a section
    at( std::string{ minimal } + "[bogus]\n", 7, 1 );                      // unknown section
    at( std::string{ minimal } + "[scenario]\n", 7, 1 );                   // duplicate section
    at( "[scenario]\nname = m\n  colour = red\n[region A]\nA1 = x\n", 3, 3 ); // unknown key
    at( "[scenario]\nname = m\nname = n\n[region A]\nA1 = x\n", 3, 1 );   // duplicate key
    at( "[scenario]\nname = m\nspacelike = maybe\n[region A]\nA1 = x\n", 3, 13 );
    at( std::string{ minimal } + "A1 = z\n", 7, 1 );                       // duplicate setting
    at( std::string{ minimal } + "A2 = x, x\n", 7, 9 );                    // duplicate outcome
    at( std::string{ minimal } + "A3 = x, ?\n", 7, 9 );                    // invalid label
    at( std::string{ minimal } + "[region A]\n", 7, 1 );                   // duplicate region
    at( std::string{ minimal } + "[region 9x]\n", 7, 1 );                  // invalid region name
    at( std::string{ minimal } + "[constraints]\nforbid A9x\n", 8, 8 );    // unknown setting
    at( std::string{ minimal } + "[constraints]\nk: forbid A1x, A1y\n", 8, 16 ); // region twice
    at( std::string{ minimal } + "[constraints]\nallow A1x\n", 8, 1 );
    at( std::string{ minimal } + "[constraints]\nif A1x then\n", 8, 1 );
    at( std::string{ minimal } + "[constraints]\nif * then A1\n", 8, 11 );  // consequence needs an outcome
    at( std::string{ minimal } + "[constraints]\nk: forbid *\nk: forbid *\n", 9, 1 );
    at( std::string{ minimal } + "[possibilities]\nq:\n", 8, 3 );           // empty entry
    at( std::string{ minimal } + "[possibilities]\nbad label: A1x\n", 8, 1 );
}

TEST_CASE( "missing pieces are reported" )
{
    CHECK_THROWS_WITH_AS( (void)read_scenario( "" ), doctest::Contains( "missing [scenario]" ), parse_error );
    CHECK_THROWS_WITH_AS( (void)read_scenario( "[scenario]\nspacelike = true\n[region A]\nA1 = x\n" ),
                          doctest::Contains( "no 'name'" ), parse_error );
    CHECK_THROWS_WITH_AS( (void)read_scenario( "[scenario]\nname = n\n" ), doctest::Contains( "no [region" ),
                          parse_error );
    CHECK_THROWS_AS( (void)read_scenario( "[scenario]\nname = n\n[region A]\n" ), validation_error );
    CHECK_THROWS_AS( (void)load_scenario( "/nonexistent/file.scenario" ), std::runtime_error );
}

TEST_CASE( "the spacelike attestation is validated after parsing" )
{
    std::string text = "[scenario]\nname = t\nspacelike = false\n[region A]\nA1 = x\n[region B]\nB1 = x\n";
    CHECK_NOTHROW( (void)parse_scenario_file( text ) );
    CHECK_THROWS_WITH_AS( (void)read_scenario( text ), doctest::Contains( "spacelike" ), validation_error );
}

TEST_CASE( "write/read round trip" )
{
    const auto& her = *her_scenario();
    auto text = write_scenario( her );
    CHECK( read_scenario( text ) == her );
    CHECK( write_scenario( read_scenario( text ) ) == text );

    std::mt19937 rng{ 17 };
    for ( int i = 0; i < 200; ++i )
    {
        auto s = validate_scenario( oracle::random_scenario( rng ) );
        CHECK( read_scenario( write_scenario( s ) ) == s );
    }
}
