#include "cfcheck/formula.hpp"

#include "cfcheck/error.hpp"

#include <algorithm>
#include <cctype>

namespace cfcheck
{

Action make_action( const Scenario& scenario, std::string_view setting )
{
    auto ref = scenario.find_setting( setting );
    if ( !ref )
        throw validation_error( "unknown setting '" + std::string{ setting } + "'" );
    return { *ref, std::string{ setting } };
}

Formula performed( const Scenario& scenario, std::string_view setting )
{
    auto action = make_action( scenario, setting );
    return Formula{ Node{ Performed{ action.ref, action.setting } } };
}

Formula outcome( const Scenario& scenario, std::string_view setting, std::string_view label )
{
    auto action = make_action( scenario, setting );
    auto index = scenario.find_outcome( action.ref, label );
    if ( !index )
        throw validation_error( "setting '" + action.setting + "' has no outcome '" + std::string{ label } + "'" );
    return Formula{ Node{ OutcomeIs{ action.ref, *index, action.setting, std::string{ label } } } };
}

Formula negation( Formula operand ) { return Formula{ Node{ Not{ std::move( operand ) } } }; }
Formula conjunction( Formula left, Formula right ) { return Formula{ Node{ And{ std::move( left ), std::move( right ) } } }; }
Formula disjunction( Formula left, Formula right ) { return Formula{ Node{ Or{ std::move( left ), std::move( right ) } } }; }
Formula necessarily( Formula operand ) { return Formula{ Node{ Box{ std::move( operand ) } } }; }
Formula possibly( Formula operand ) { return Formula{ Node{ Dia{ std::move( operand ) } } }; }

Formula implies( Formula antecedent, Formula consequent )
{
    return Formula{ Node{ Implies{ std::move( antecedent ), std::move( consequent ) } } };
}

Formula strictly_implies( Formula antecedent, Formula consequent )
{
    return Formula{ Node{ StrictlyImplies{ std::move( antecedent ), std::move( consequent ) } } };
}

Formula counterfactual( Action action, Formula consequent )
{
    return Formula{ Node{ Counterfactual{ std::move( action ), std::move( consequent ) } } };
}

namespace
{

bool is_word_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_';
}

class Parser
{
    std::string_view _text;
    const Scenario& _scenario;
    std::size_t _pos = 0;
    std::size_t _depth = 0;

    struct DepthGuard
    {
        Parser& parser;
        explicit DepthGuard( Parser& p ) : parser{ p }
        {
            if ( ++parser._depth > max_formula_depth )
                parser.fail( "formula nested too deeply" );
        }
        ~DepthGuard() { --parser._depth; }
        DepthGuard( const DepthGuard& ) = delete;
        DepthGuard& operator=( const DepthGuard& ) = delete;
    };

public:
    Parser( std::string_view text, const Scenario& scenario ) : _text{ text }, _scenario{ scenario } {}

    Formula parse()
    {
        auto result = formula();
        skip_space();
        if ( _pos != _text.size() )
            fail( "unexpected '" + std::string{ _text.substr( _pos, 1 ) } + "'" );
        return result;
    }

private:
    [[noreturn]] void fail( const std::string& message ) const { fail_at( _pos, message ); }

    [[noreturn]] void fail_at( std::size_t offset, const std::string& message ) const
    {
        source_position position;
        for ( std::size_t i = 0; i < offset && i < _text.size(); ++i )
        {
            if ( _text[ i ] == '\n' )
            {
                ++position.line;
                position.column = 1;
            }
            else
            {
                ++position.column;
            }
        }
        throw parse_error( position, message );
    }

    void skip_space()
    {
        while ( _pos < _text.size() && std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
            ++_pos;
    }

    bool at_end()
    {
        skip_space();
        return _pos >= _text.size();
    }

    // Symbolic operators: "->", "=>", "(", ")", ",".
    bool accept( std::string_view symbol )
    {
        skip_space();
        if ( _text.substr( _pos ).starts_with( symbol ) )
        {
            _pos += symbol.size();
            return true;
        }
        return false;
    }

    void expect( std::string_view symbol )
    {
        if ( !accept( symbol ) )
            fail( "expected '" + std::string{ symbol } + "'" );
    }

    std::string_view peek_word()
    {
        skip_space();
        std::size_t end = _pos;
        while ( end < _text.size() && is_word_char( _text[ end ] ) )
            ++end;
        return _text.substr( _pos, end - _pos );
    }

    bool accept_keyword( std::string_view keyword )
    {
        if ( peek_word() != keyword )
            return false;
        _pos += keyword.size();
        return true;
    }

    SettingRef setting_name( std::string& name )
    {
        auto word = peek_word();
        if ( word.empty() )
            fail( "expected a setting name" );
        auto ref = _scenario.find_setting( word );
        if ( !ref )
            fail( "unknown setting '" + std::string{ word } + "'" );
        name = word;
        _pos += word.size();
        return *ref;
    }

    Formula formula()
    {
        DepthGuard guard{ *this };
        auto left = material();
        if ( accept( "=>" ) )
            return strictly_implies( std::move( left ), formula() );
        return left;
    }

    Formula material()
    {
        DepthGuard guard{ *this };
        auto left = disjunction_();
        if ( accept( "->" ) )
            return implies( std::move( left ), material() );
        return left;
    }

    Formula disjunction_()
    {
        auto left = conjunction_();
        while ( accept_keyword( "or" ) )
            left = disjunction( std::move( left ), conjunction_() );
        return left;
    }

    Formula conjunction_()
    {
        auto left = unary();
        while ( accept_keyword( "and" ) )
            left = conjunction( std::move( left ), unary() );
        return left;
    }

    Formula unary()
    {
        DepthGuard guard{ *this };
        if ( accept_keyword( "not" ) )
            return negation( unary() );
        if ( accept_keyword( "box" ) )
            return necessarily( unary() );
        if ( accept_keyword( "dia" ) )
            return possibly( unary() );
        return primary();
    }

    Formula primary()
    {
        if ( at_end() )
            fail( "unexpected end of formula" );

        if ( accept( "(" ) )
        {
            auto inner = formula();
            expect( ")" );
            return inner;
        }

        const auto start = _pos;
        if ( accept_keyword( "performed" ) )
        {
            expect( "(" );
            std::string name;
            auto ref = setting_name( name );
            expect( ")" );
            return Formula{ Node{ Performed{ ref, std::move( name ) } } };
        }
        if ( accept_keyword( "outcome" ) )
        {
            expect( "(" );
            std::string name;
            auto ref = setting_name( name );
            expect( "," );
            skip_space();
            const auto label_start = _pos;
            while ( _pos < _text.size() && is_outcome_label( _text.substr( _pos, 1 ) ) )
                ++_pos;
            auto label = _text.substr( label_start, _pos - label_start );
            if ( label.empty() )
                fail( "expected an outcome label" );
            auto index = _scenario.find_outcome( ref, label );
            if ( !index )
                fail_at( label_start, "setting '" + name + "' has no outcome '" + std::string{ label } + "'" );
            expect( ")" );
            return Formula{ Node{ OutcomeIs{ ref, *index, std::move( name ), std::string{ label } } } };
        }
        if ( accept_keyword( "cf" ) )
        {
            expect( "(" );
            if ( !accept_keyword( "do" ) )
                fail( "counterfactual antecedent must be an action 'do(SETTING)'" );
            expect( "(" );
            std::string name;
            auto ref = setting_name( name );
            expect( ")" );
            expect( "," );
            auto consequent = formula();
            expect( ")" );
            return counterfactual( Action{ ref, std::move( name ) }, std::move( consequent ) );
        }

        auto word = peek_word();
        if ( !word.empty() )
            fail_at( start, "unexpected word '" + std::string{ word } + "'" );
        fail( "unexpected '" + std::string{ _text.substr( _pos, 1 ) } + "'" );
    }
};

void print_to( const Formula& formula, std::string& out )
{
    std::visit(
        [ &out ]( const auto& node ) {
            using T = std::decay_t< decltype( node ) >;
            auto binary = [ &out ]( const Formula& left, std::string_view op, const Formula& right ) {
                out += '(';
                print_to( left, out );
                out += ' ';
                out += op;
                out += ' ';
                print_to( right, out );
                out += ')';
            };
            auto prefix = [ &out ]( std::string_view op, const Formula& operand ) {
                out += op;
                out += " (";
                print_to( operand, out );
                out += ')';
            };

            if constexpr ( std::is_same_v< T, Performed > )
                out += "performed(" + node.setting + ")";
            else if constexpr ( std::is_same_v< T, OutcomeIs > )
                out += "outcome(" + node.setting + "," + node.label + ")";
            else if constexpr ( std::is_same_v< T, Not > )
                prefix( "not", node.operand );
            else if constexpr ( std::is_same_v< T, Box > )
                prefix( "box", node.operand );
            else if constexpr ( std::is_same_v< T, Dia > )
                prefix( "dia", node.operand );
            else if constexpr ( std::is_same_v< T, And > )
                binary( node.left, "and", node.right );
            else if constexpr ( std::is_same_v< T, Or > )
                binary( node.left, "or", node.right );
            else if constexpr ( std::is_same_v< T, Implies > )
                binary( node.antecedent, "->", node.consequent );
            else if constexpr ( std::is_same_v< T, StrictlyImplies > )
                binary( node.antecedent, "=>", node.consequent );
            else if constexpr ( std::is_same_v< T, Counterfactual > )
            {
                out += "cf(do(" + node.action.setting + "), ";
                print_to( node.consequent, out );
                out += ')';
            }
        },
        formula.node().value );
}

template < typename Fn >
void for_each_child( const Formula& formula, Fn&& fn )
{
    std::visit(
        [ &fn ]( const auto& node ) {
            using T = std::decay_t< decltype( node ) >;
            if constexpr ( std::is_same_v< T, Not > || std::is_same_v< T, Box > || std::is_same_v< T, Dia > )
                fn( node.operand );
            else if constexpr ( std::is_same_v< T, And > || std::is_same_v< T, Or > )
            {
                fn( node.left );
                fn( node.right );
            }
            else if constexpr ( std::is_same_v< T, Implies > || std::is_same_v< T, StrictlyImplies > )
            {
                fn( node.antecedent );
                fn( node.consequent );
            }
            else if constexpr ( std::is_same_v< T, Counterfactual > )
                fn( node.consequent );
        },
        formula.node().value );
}

void collect_regions( const Formula& formula, std::set< std::size_t >& regions )
{
    const auto& value = formula.node().value;
    if ( const auto* atom = std::get_if< Performed >( &value ) )
        regions.insert( atom->ref.region );
    else if ( const auto* atom = std::get_if< OutcomeIs >( &value ) )
        regions.insert( atom->ref.region );
    else if ( const auto* cf = std::get_if< Counterfactual >( &value ) )
        regions.insert( cf->action.ref.region );
    for_each_child( formula, [ &regions ]( const Formula& child ) { collect_regions( child, regions ); } );
}

} // namespace

Formula parse_formula( std::string_view text, const Scenario& scenario )
{
    return Parser{ text, scenario }.parse();
}

std::string print( const Formula& formula )
{
    std::string out;
    print_to( formula, out );
    return out;
}

std::set< std::size_t > mentioned_regions( const Formula& formula )
{
    std::set< std::size_t > regions;
    collect_regions( formula, regions );
    return regions;
}

bool is_world_local( const Formula& formula )
{
    const auto& value = formula.node().value;
    if ( std::holds_alternative< Box >( value ) || std::holds_alternative< Dia >( value ) ||
         std::holds_alternative< StrictlyImplies >( value ) || std::holds_alternative< Counterfactual >( value ) )
        return false;
    bool local = true;
    for_each_child( formula, [ &local ]( const Formula& child ) { local = local && is_world_local( child ); } );
    return local;
}

std::size_t depth( const Formula& formula )
{
    std::size_t deepest = 0;
    for_each_child( formula, [ &deepest ]( const Formula& child ) { deepest = std::max( deepest, depth( child ) ); } );
    return deepest + 1;
}

} // namespace cfcheck
