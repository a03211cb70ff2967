#pragma once

#include "cfcheck/scenario.hpp"

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace cfcheck
{

struct Node;

// Immutable formula tree; copies share structure. Equality is structural.
class Formula
{
    std::shared_ptr< const Node > _node;

public:
    explicit Formula( Node node );

    [[nodiscard]] const Node& node() const { return *_node; }

    bool operator==( const Formula& other ) const;
};

// Experimenter action: perform `setting` in `region`.
struct Action
{
    SettingRef ref;
    std::string setting;

    bool operator==( const Action& ) const = default;
};

struct Performed
{
    SettingRef ref;
    std::string setting;

    bool operator==( const Performed& ) const = default;
};

struct OutcomeIs
{
    SettingRef ref;
    std::size_t outcome = 0;
    std::string setting;
    std::string label;

    bool operator==( const OutcomeIs& ) const = default;
};

struct Not
{
    Formula operand;
    bool operator==( const Not& ) const = default;
};

struct And
{
    Formula left, right;
    bool operator==( const And& ) const = default;
};

struct Or
{
    Formula left, right;
    bool operator==( const Or& ) const = default;
};

struct Implies
{
    Formula antecedent, consequent;
    bool operator==( const Implies& ) const = default;
};

struct StrictlyImplies
{
    Formula antecedent, consequent;
    bool operator==( const StrictlyImplies& ) const = default;
};

struct Box
{
    Formula operand;
    bool operator==( const Box& ) const = default;
};

struct Dia
{
    Formula operand;
    bool operator==( const Dia& ) const = default;
};

// "Had `action` been taken, `consequent` would hold."
struct Counterfactual
{
    Action action;
    Formula consequent;
    bool operator==( const Counterfactual& ) const = default;
};

struct Node
{
    std::variant< Performed, OutcomeIs, Not, And, Or, Implies, StrictlyImplies, Box, Dia, Counterfactual > value;

    bool operator==( const Node& ) const = default;
};

inline Formula::Formula( Node node ) : _node{ std::make_shared< const Node >( std::move( node ) ) } {}

inline bool Formula::operator==( const Formula& other ) const
{
    return _node == other._node || *_node == *other._node;
}

// Builders. The name-based ones throw validation_error for unknown names.
[[nodiscard]] Action make_action( const Scenario& scenario, std::string_view setting );
[[nodiscard]] Formula performed( const Scenario& scenario, std::string_view setting );
[[nodiscard]] Formula outcome( const Scenario& scenario, std::string_view setting, std::string_view label );
[[nodiscard]] Formula negation( Formula operand );
[[nodiscard]] Formula conjunction( Formula left, Formula right );
[[nodiscard]] Formula disjunction( Formula left, Formula right );
[[nodiscard]] Formula implies( Formula antecedent, Formula consequent );
[[nodiscard]] Formula strictly_implies( Formula antecedent, Formula consequent );
[[nodiscard]] Formula necessarily( Formula operand );
[[nodiscard]] Formula possibly( Formula operand );
[[nodiscard]] Formula counterfactual( Action action, Formula consequent );

inline constexpr std::size_t max_formula_depth = 512;

// Grammar (loosest binding first):
//
//   formula  := material [ "=>" formula ]
//   material := disj [ "->" material ]
//   disj     := conj { "or" conj }
//   conj     := unary { "and" unary }
//   unary    := ( "not" | "box" | "dia" ) unary | primary
//   primary  := "performed" "(" SETTING ")"
//             | "outcome" "(" SETTING "," LABEL ")"
//             | "cf" "(" "do" "(" SETTING ")" "," formula ")"
//             | "(" formula ")"
//
// Throws parse_error (with position) on syntax errors and unknown names.
[[nodiscard]] Formula parse_formula( std::string_view text, const Scenario& scenario );

// Canonical, fully parenthesised text: binary nodes print as "(a op b)",
// prefix operators as "not (a)", "box (a)", "dia (a)".
[[nodiscard]] std::string print( const Formula& formula );

// Regions named by the atoms and actions of the formula.
[[nodiscard]] std::set< std::size_t > mentioned_regions( const Formula& formula );

// True when the formula contains no box, dia, strict implication or counterfactual.
[[nodiscard]] bool is_world_local( const Formula& formula );

[[nodiscard]] std::size_t depth( const Formula& formula );

} // namespace cfcheck
