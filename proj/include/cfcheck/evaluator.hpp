#pragma once

#include "cfcheck/formula.hpp"
#include "cfcheck/world_engine.hpp"

#include <string_view>
#include <vector>

namespace cfcheck
{

enum class WitnessRole
{
    accessible,     // consulted by a counterfactual
    violation,      // accessible world where the counterfactual's consequent fails
    counterexample, // world refuting a universal (box, strict implication)
    support,        // world satisfying an existential (dia)
    antecedent,     // world where a true strict implication's antecedent holds
};

[[nodiscard]] std::string_view to_string( WitnessRole role );

struct Witness
{
    World world;
    WitnessRole role;

    bool operator==( const Witness& ) const = default;
};

// Truth value plus the worlds that explain it. Witnesses of nested nodes are
// concatenated in evaluation order; each universal or counterfactual node
// lists its worlds in scenario world order.
struct Verdict
{
    bool value = false;
    std::vector< Witness > witnesses;
    bool vacuous_counterfactual = false; // some counterfactual had an empty accessible set

    [[nodiscard]] std::vector< World > worlds_with( WitnessRole role ) const;
};

// Possible worlds that take `action` and agree with `world` on every other
// region. Regions are pairwise spacelike, so "outside the action's forward
// light cone" is exactly "every other region".
[[nodiscard]] std::vector< World > accessible( const World& world, const Action& action, const WorldSet& possible );

// Throws evaluation_error when `world` is not in `possible` or the formula
// refers to settings the scenario does not have.
[[nodiscard]] Verdict eval_at( const Formula& formula, const World& world, const WorldSet& possible );

// Truth value only.
[[nodiscard]] bool holds( const Formula& formula, const World& world, const WorldSet& possible );

// Universal check over `possible`. A false verdict lists every counterexample;
// a true one lists the worlds where the antecedent holds.
[[nodiscard]] Verdict strict_implies( const Formula& antecedent, const Formula& consequent, const WorldSet& possible );

} // namespace cfcheck
