#include <doctest.h>

#include "cfcheck/bundled.hpp"
#include "cfcheck/error.hpp"
#include "cfcheck/formula.hpp"
#include "support/her.hpp"
#include "support/oracle.hpp"

#include <random>

using namespace cfcheck;

namespace
{

const Scenario& her() { return *her_scenario(); }

Formula sr_by_hand()
{
    const auto& s = her();
    return implies( conjunction( performed( s, "R2" ), outcome( s, "R2", "+" ) ),
                    counterfactual( make_action( s, "R1" ), outcome( s, "R1", "-" ) ) );
}

source_position error_position( const std::string& text )
{
    try
    {
        (void)parse_formula( text, her() );
    }
    catch ( const parse_error& e )
    {
        return e.position();
    }
    FAIL( "no parse error for: " << text );
    return {};
}

} // namespace

TEST_CASE( "SR parses to material implication over a counterfactual" )
{
    auto f = parse_formula( "performed(R2) and outcome(R2,+) -> cf(do(R1), outcome(R1,-))", her() );
    CHECK( f == sr_by_hand() );
    CHECK( fixture::sr() == sr_by_hand() );
}

TEST_CASE( "Property I formula parses to a strict implication" )
{
    auto f = parse_formula( "performed(L2) => (performed(R2) and outcome(R2,+) -> cf(do(R1), outcome(R1,-)))", her() );
    CHECK( f == strictly_implies( performed( her(), "L2" ), sr_by_hand() ) );
    // Without parentheses the strict arrow still binds loosest.
    auto g = parse_formula( "performed(L2) => performed(R2) and outcome(R2,+) -> cf(do(R1), outcome(R1,-))", her() );
    CHECK( g == f );
}

TEST_CASE( "printing" )
{
    CHECK( print( performed( her(), "L2" ) ) == "performed(L2)" );
    CHECK( print( necessarily( performed( her(), "L2" ) ) ) == "box (performed(L2))" );
    CHECK( print( outcome( her(), "R2", "+" ) ) == "outcome(R2,+)" );
    CHECK( print( sr_by_hand() ) == "((performed(R2) and outcome(R2,+)) -> cf(do(R1), outcome(R1,-)))" );
    CHECK( parse_formula( print( sr_by_hand() ), her() ) == sr_by_hand() );
}

TEST_CASE( "precedence and associativity" )
{
    const auto& s = her();
    auto a = performed( s, "L1" ), b = performed( s, "R1" ), c = performed( s, "R2" );

    CHECK( parse_formula( "performed(L1) and performed(R1) -> performed(R2)", s ) == implies( conjunction( a, b ), c ) );
    CHECK( parse_formula( "performed(L1) -> performed(R1) -> performed(R2)", s ) == implies( a, implies( b, c ) ) );
    CHECK( parse_formula( "performed(L1) => performed(R1) => performed(R2)", s ) ==
           strictly_implies( a, strictly_implies( b, c ) ) );
    CHECK( parse_formula( "performed(L1) or performed(R1) and performed(R2)", s ) == disjunction( a, conjunction( b, c ) ) );
    CHECK( parse_formula( "performed(L1) and performed(R1) and performed(R2)", s ) ==
           conjunction( conjunction( a, b ), c ) );
    CHECK( parse_formula( "not performed(L1) and performed(R1)", s ) == conjunction( negation( a ), b ) );
    CHECK( parse_formula( "box performed(L1) -> dia performed(R1)", s ) == implies( necessarily( a ), possibly( b ) ) );
    CHECK( parse_formula( "not not performed(L1)", s ) == negation( negation( a ) ) );
}

TEST_CASE( "counterfactual antecedents must be actions" )
{
    CHECK_THROWS_WITH_AS( (void)parse_formula( "cf(performed(R1), outcome(R1,-))", her() ),
                          doctest::Contains( "do(SETTING)" ), parse_error );
    CHECK( parse_formula( "cf(do(L2), cf(do(R1), outcome(R1,-)))", her() ) ==
           counterfactual( make_action( her(), "L2" ),
                           counterfactual( make_action( her(), "R1" ), outcome( her(), "R1", "-" ) ) ) );
}

TEST_CASE( "errors carry positions" )
{
    CHECK( error_position( "performed(R3)" ).column == 11 );
    CHECK( error_position( "outcome(R1,x)" ).column == 12 );
    CHECK( error_position( "performed(R1) and" ).column == 18 );
    CHECK( error_position( "performed(R1) nand performed(R2)" ).column == 15 );
    CHECK( error_position( "(performed(R1)" ).column == 15 );
    auto multi = error_position( "performed(R1)\n and ?" );
    CHECK( multi.line == 2 );
    CHECK( multi.column == 6 );
    CHECK_THROWS_AS( (void)parse_formula( "", her() ), parse_error );
    CHECK_THROWS_AS( (void)parse_formula( "performed(R1))", her() ), parse_error );
}

TEST_CASE( "deep nesting is rejected rather than overflowing" )
{
    std::string deep( 5000, '(' );
    CHECK_THROWS_WITH_AS( (void)parse_formula( deep, her() ), doctest::Contains( "too deeply" ), parse_error );
    std::string nots;
    for ( int i = 0; i < 5000; ++i )
        nots += "not ";
    CHECK_THROWS_AS( (void)parse_formula( nots + "performed(L1)", her() ), parse_error );
}

TEST_CASE( "property: print/parse round trip on generated formulas" )
{
    std::mt19937 rng{ 1234 };
    int checked = 0;
    for ( int i = 0; i < 1200; ++i )
    {
        auto f = oracle::random_formula( rng, her(), 1 + i % 6 );
        auto text = print( f );
        auto back = parse_formula( text, her() );
        CHECK( back == f );
        CHECK( print( back ) == text );
        ++checked;
    }
    CHECK( checked >= 1000 );
}

TEST_CASE( "property: parser is total on fuzzed input" )
{
    std::mt19937 rng{ 77 };
    const std::vector< std::string > pieces{ "performed", "outcome", "cf", "do", "(", ")", ",", "and", "or",
                                             "not",       "box",     "dia", "->", "=>", "L1", "R2", "+",  "-",
                                             " ",         "x",       "-",  ">",  "=",  "\n", "(((", "R1" };
    std::uniform_int_distribution< std::size_t > piece( 0, pieces.size() - 1 );
    std::uniform_int_distribution< int > length( 0, 25 );
    std::uniform_int_distribution< int > byte( 0, 255 );

    int parsed = 0, rejected = 0;
    for ( int i = 0; i < 5000; ++i )
    {
        std::string text;
        const int n = length( rng );
        for ( int k = 0; k < n; ++k )
        {
            if ( i % 5 == 0 )
                text += static_cast< char >( byte( rng ) );
            else
                text += pieces[ piece( rng ) ];
        }
        try
        {
            auto f = parse_formula( text, her() );
            CHECK( parse_formula( print( f ), her() ) == f );
            ++parsed;
        }
        catch ( const parse_error& e )
        {
            CHECK( e.position().line >= 1 );
            ++rejected;
        }
    }
    CHECK( parsed + rejected == 5000 );
}

TEST_CASE( "structural helpers" )
{
    auto f = sr_by_hand();
    CHECK( mentioned_regions( f ) == std::set< std::size_t >{ 1 } );
    CHECK_FALSE( is_world_local( f ) );
    CHECK( is_world_local( parse_formula( "outcome(R2,+) and not performed(R1)", her() ) ) );
    CHECK( depth( performed( her(), "L1" ) ) == 1 );
    CHECK( depth( f ) == 3 );
}

TEST_CASE( "bundled corpus parses" )
{
    auto corpus = corpus_formulas();
    CHECK( corpus.size() >= 30 );
    for ( const auto& text : corpus )
        CHECK_NOTHROW( (void)parse_formula( text, her() ) );
}
