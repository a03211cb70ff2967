#include "cfcheck/evaluator.hpp"

#include "cfcheck/error.hpp"

namespace cfcheck
{

std::string_view to_string( WitnessRole role )
{
    switch ( role )
    {
    case WitnessRole::accessible: return "accessible";
    case WitnessRole::violation: return "violation";
    case WitnessRole::counterexample: return "counterexample";
    case WitnessRole::support: return "support";
    case WitnessRole::antecedent: return "antecedent";
    }
    return "unknown";
}

std::vector< World > Verdict::worlds_with( WitnessRole role ) const
{
    std::vector< World > worlds;
    for ( const auto& witness : witnesses )
    {
        if ( witness.role == role )
            worlds.push_back( witness.world );
    }
    return worlds;
}

std::vector< World > accessible( const World& world, const Action& action, const WorldSet& possible )
{
    std::vector< World > result;
    for ( const auto& candidate : possible )
    {
        bool reachable = candidate[ action.ref.region ].setting == action.ref.setting;
        for ( std::size_t r = 0; reachable && r < candidate.size(); ++r )
        {
            if ( r != action.ref.region && candidate[ r ] != world[ r ] )
                reachable = false;
        }
        if ( reachable )
            result.push_back( candidate );
    }
    return result;
}

namespace
{

void check_binding( const Formula& formula, const Scenario& scenario )
{
    auto check_ref = [ &scenario ]( SettingRef ref, const std::string& name ) {
        if ( ref.region >= scenario.region_count() || ref.setting >= scenario.regions()[ ref.region ].settings.size() ||
             scenario.setting( ref ).name != name )
            throw evaluation_error( "formula refers to setting '" + name + "' outside the scenario" );
    };

    std::visit(
        [ & ]( const auto& node ) {
            using T = std::decay_t< decltype( node ) >;
            if constexpr ( std::is_same_v< T, Performed > )
                check_ref( node.ref, node.setting );
            else if constexpr ( std::is_same_v< T, OutcomeIs > )
            {
                check_ref( node.ref, node.setting );
                if ( node.outcome >= scenario.setting( node.ref ).outcomes.size() )
                    throw evaluation_error( "formula refers to an outcome outside the scenario" );
            }
            else if constexpr ( std::is_same_v< T, Not > || std::is_same_v< T, Box > || std::is_same_v< T, Dia > )
                check_binding( node.operand, scenario );
            else if constexpr ( std::is_same_v< T, And > || std::is_same_v< T, Or > )
            {
                check_binding( node.left, scenario );
                check_binding( node.right, scenario );
            }
            else if constexpr ( std::is_same_v< T, Implies > || std::is_same_v< T, StrictlyImplies > )
            {
                check_binding( node.antecedent, scenario );
                check_binding( node.consequent, scenario );
            }
            else if constexpr ( std::is_same_v< T, Counterfactual > )
            {
                check_ref( node.action.ref, node.action.setting );
                check_binding( node.consequent, scenario );
            }
        },
        formula.node().value );
}

void check_world( const World& world, const WorldSet& possible )
{
    if ( !possible.contains( world ) )
    {
        auto text = possible.scenario().admits( world ) ? possible.scenario().format_world( world ) : "<malformed>";
        throw evaluation_error( "world " + text + " is not in the possible set" );
    }
}

class Evaluator
{
    const WorldSet& _possible;

public:
    explicit Evaluator( const WorldSet& possible ) : _possible{ possible } {}

    bool value( const Formula& formula, const World& world ) const
    {
        return std::visit(
            [ & ]( const auto& node ) -> bool {
                using T = std::decay_t< decltype( node ) >;
                if constexpr ( std::is_same_v< T, Performed > )
                    return world[ node.ref.region ].setting == node.ref.setting;
                else if constexpr ( std::is_same_v< T, OutcomeIs > )
                    return world[ node.ref.region ] == Choice{ node.ref.setting, node.outcome };
                else if constexpr ( std::is_same_v< T, Not > )
                    return !value( node.operand, world );
                else if constexpr ( std::is_same_v< T, And > )
                    return value( node.left, world ) && value( node.right, world );
                else if constexpr ( std::is_same_v< T, Or > )
                    return value( node.left, world ) || value( node.right, world );
                else if constexpr ( std::is_same_v< T, Implies > )
                    return !value( node.antecedent, world ) || value( node.consequent, world );
                else if constexpr ( std::is_same_v< T, StrictlyImplies > )
                {
                    for ( const auto& other : _possible )
                    {
                        if ( value( node.antecedent, other ) && !value( node.consequent, other ) )
                            return false;
                    }
                    return true;
                }
                else if constexpr ( std::is_same_v< T, Box > )
                {
                    for ( const auto& other : _possible )
                    {
                        if ( !value( node.operand, other ) )
                            return false;
                    }
                    return true;
                }
                else if constexpr ( std::is_same_v< T, Dia > )
                {
                    for ( const auto& other : _possible )
                    {
                        if ( value( node.operand, other ) )
                            return true;
                    }
                    return false;
                }
                else
                {
                    for ( const auto& other : accessible( world, node.action, _possible ) )
                    {
                        if ( !value( node.consequent, other ) )
                            return false;
                    }
                    return true;
                }
            },
            formula.node().value );
    }

    Verdict verdict( const Formula& formula, const World& world ) const
    {
        return std::visit(
            [ & ]( const auto& node ) -> Verdict {
                using T = std::decay_t< decltype( node ) >;
                if constexpr ( std::is_same_v< T, Performed > || std::is_same_v< T, OutcomeIs > )
                    return Verdict{ value( formula, world ), {}, false };
                else if constexpr ( std::is_same_v< T, Not > )
                {
                    auto inner = verdict( node.operand, world );
                    inner.value = !inner.value;
                    return inner;
                }
                else if constexpr ( std::is_same_v< T, And > )
                {
                    auto left = verdict( node.left, world );
                    if ( !left.value )
                        return left;
                    auto right = verdict( node.right, world );
                    return join( right.value, left, right );
                }
                else if constexpr ( std::is_same_v< T, Or > )
                {
                    auto left = verdict( node.left, world );
                    if ( left.value )
                        return left;
                    auto right = verdict( node.right, world );
                    return join( right.value, left, right );
                }
                else if constexpr ( std::is_same_v< T, Implies > )
                {
                    auto antecedent = verdict( node.antecedent, world );
                    if ( !antecedent.value )
                    {
                        antecedent.value = true;
                        return antecedent;
                    }
                    return verdict( node.consequent, world );
                }
                else if constexpr ( std::is_same_v< T, StrictlyImplies > )
                    return strict( node.antecedent, node.consequent );
                else if constexpr ( std::is_same_v< T, Box > )
                {
                    Verdict result{ true, {}, false };
                    for ( const auto& other : _possible )
                    {
                        if ( !value( node.operand, other ) )
                        {
                            result.value = false;
                            result.witnesses.push_back( { other, WitnessRole::counterexample } );
                        }
                    }
                    return result;
                }
                else if constexpr ( std::is_same_v< T, Dia > )
                {
                    Verdict result{ false, {}, false };
                    for ( const auto& other : _possible )
                    {
                        if ( value( node.operand, other ) )
                        {
                            result.value = true;
                            result.witnesses.push_back( { other, WitnessRole::support } );
                        }
                    }
                    return result;
                }
                else
                {
                    auto reachable = accessible( world, node.action, _possible );
                    Verdict result{ true, {}, reachable.empty() };
                    for ( const auto& other : reachable )
                        result.witnesses.push_back( { other, WitnessRole::accessible } );
                    for ( const auto& other : reachable )
                    {
                        auto inner = verdict( node.consequent, other );
                        result.vacuous_counterfactual = result.vacuous_counterfactual || inner.vacuous_counterfactual;
                        if ( !inner.value )
                        {
                            result.value = false;
                            result.witnesses.push_back( { other, WitnessRole::violation } );
                        }
                    }
                    return result;
                }
            },
            formula.node().value );
    }

    Verdict strict( const Formula& antecedent, const Formula& consequent ) const
    {
        Verdict result{ true, {}, false };
        std::vector< Witness > satisfied;
        for ( const auto& other : _possible )
        {
            if ( !value( antecedent, other ) )
                continue;
            satisfied.push_back( { other, WitnessRole::antecedent } );
            if ( !value( consequent, other ) )
            {
                result.value = false;
                result.witnesses.push_back( { other, WitnessRole::counterexample } );
            }
        }
        if ( result.value )
            result.witnesses = std::move( satisfied );
        return result;
    }

private:
    static Verdict join( bool value, Verdict left, const Verdict& right )
    {
        left.value = value;
        left.witnesses.insert( left.witnesses.end(), right.witnesses.begin(), right.witnesses.end() );
        left.vacuous_counterfactual = left.vacuous_counterfactual || right.vacuous_counterfactual;
        return left;
    }
};

} // namespace

Verdict eval_at( const Formula& formula, const World& world, const WorldSet& possible )
{
    check_binding( formula, possible.scenario() );
    check_world( world, possible );
    return Evaluator{ possible }.verdict( formula, world );
}

bool holds( const Formula& formula, const World& world, const WorldSet& possible )
{
    check_binding( formula, possible.scenario() );
    check_world( world, possible );
    return Evaluator{ possible }.value( formula, world );
}

Verdict strict_implies( const Formula& antecedent, const Formula& consequent, const WorldSet& possible )
{
    check_binding( antecedent, possible.scenario() );
    check_binding( consequent, possible.scenario() );
    return Evaluator{ possible }.strict( antecedent, consequent );
}

} // namespace cfcheck
