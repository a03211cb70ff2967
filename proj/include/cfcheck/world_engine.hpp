#pragma once

#include "cfcheck/scenario.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace cfcheck
{

inline constexpr std::size_t default_max_worlds = 1'000'000;

enum class WorldSetTag
{
    candidate,
    possible,
};

// Worlds of one scenario in lexicographic order, without duplicates.
class WorldSet
{
    std::shared_ptr< const Scenario > _scenario;
    std::vector< World > _worlds;
    WorldSetTag _tag;

public:
    WorldSet( std::shared_ptr< const Scenario > scenario, std::vector< World > worlds, WorldSetTag tag );

    [[nodiscard]] const Scenario& scenario() const { return *_scenario; }
    [[nodiscard]] const std::shared_ptr< const Scenario >& scenario_ptr() const { return _scenario; }
    [[nodiscard]] const std::vector< World >& worlds() const { return _worlds; }
    [[nodiscard]] WorldSetTag tag() const { return _tag; }
    [[nodiscard]] std::size_t size() const { return _worlds.size(); }
    [[nodiscard]] bool empty() const { return _worlds.empty(); }

    [[nodiscard]] auto begin() const { return _worlds.begin(); }
    [[nodiscard]] auto end() const { return _worlds.end(); }
    [[nodiscard]] const World& operator[]( std::size_t i ) const { return _worlds[ i ]; }

    [[nodiscard]] bool contains( const World& world ) const;
    [[nodiscard]] std::optional< std::size_t > index_of( const World& world ) const;
};

// Number of candidate worlds, or nullopt when the product overflows size_t.
[[nodiscard]] std::optional< std::size_t > candidate_count( const Scenario& scenario );

// Full cartesian product of (setting, outcome) choices per region.
// Throws size_guard_error when the product exceeds max_worlds.
[[nodiscard]] WorldSet enumerate_candidates( std::shared_ptr< const Scenario > scenario,
                                             std::size_t max_worlds = default_max_worlds );

// Keeps the candidates that match no forbid pattern of the scenario.
[[nodiscard]] WorldSet filter_possible( const WorldSet& candidates );
[[nodiscard]] WorldSet filter_possible( const WorldSet& candidates, const Scenario& scenario );

struct Elimination
{
    World world;
    std::vector< std::size_t > constraints; // indices into scenario.constraints()
};

// Every removed candidate together with the constraints responsible, in world order.
[[nodiscard]] std::vector< Elimination > eliminations( const WorldSet& candidates );

struct PossibilityResult
{
    std::string label;
    WorldPattern pattern;
    std::optional< World > witness; // first matching possible world
};

struct PossibilityReport
{
    std::vector< PossibilityResult > results;

    [[nodiscard]] bool satisfied() const;
};

[[nodiscard]] PossibilityReport check_possibilities( const WorldSet& possible );

} // namespace cfcheck
