#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cfcheck
{

struct Setting
{
    std::string name;
    std::vector< std::string > outcomes;

    bool operator==( const Setting& ) const = default;
};

struct Region
{
    std::string name;
    std::vector< Setting > settings;

    bool operator==( const Region& ) const = default;
};

// Name-based scenario description, as read from a file or built by hand.
// Nothing is checked until validate_scenario().

struct RawPatternEntry
{
    std::string region; // may be empty: inferred from the (globally unique) setting name
    std::string setting;
    std::optional< std::string > outcome;

    bool operator==( const RawPatternEntry& ) const = default;
};

using RawPattern = std::vector< RawPatternEntry >;

struct RawForbid
{
    RawPattern pattern;

    bool operator==( const RawForbid& ) const = default;
};

// "if <condition> then <setting><outcome>"
struct RawConditional
{
    RawPattern condition;
    std::string region; // may be empty, as above
    std::string setting;
    std::string outcome;

    bool operator==( const RawConditional& ) const = default;
};

struct RawConstraint
{
    std::string label;
    std::variant< RawForbid, RawConditional > body;

    bool operator==( const RawConstraint& ) const = default;
};

struct RawPossibility
{
    std::string label;
    RawPattern pattern;

    bool operator==( const RawPossibility& ) const = default;
};

struct RawScenario
{
    std::string name;
    bool spacelike = true;
    std::vector< Region > regions;
    std::vector< RawConstraint > constraints;
    std::vector< RawPossibility > possibilities;

    bool operator==( const RawScenario& ) const = default;
};

// Index-based, validated representation. Indices follow declaration order, so
// the defaulted comparisons give the lexicographic world order used everywhere.

struct Choice
{
    std::size_t setting = 0;
    std::size_t outcome = 0;

    auto operator<=>( const Choice& ) const = default;
};

// One (setting, outcome) choice per region, indexed by region.
class World
{
    std::vector< Choice > _choices;

public:
    World() = default;
    explicit World( std::vector< Choice > choices ) : _choices{ std::move( choices ) } {}

    [[nodiscard]] std::size_t size() const { return _choices.size(); }
    [[nodiscard]] const Choice& operator[]( std::size_t region ) const { return _choices[ region ]; }
    [[nodiscard]] const std::vector< Choice >& choices() const { return _choices; }

    auto operator<=>( const World& ) const = default;
};

struct PatternEntry
{
    std::size_t setting = 0;
    std::optional< std::size_t > outcome;

    bool operator==( const PatternEntry& ) const = default;
};

// Partial map from region to (setting, optional outcome).
class WorldPattern
{
    std::vector< std::optional< PatternEntry > > _entries;

public:
    WorldPattern() = default;
    explicit WorldPattern( std::size_t region_count ) : _entries( region_count ) {}

    [[nodiscard]] std::size_t region_count() const { return _entries.size(); }
    [[nodiscard]] const std::optional< PatternEntry >& at( std::size_t region ) const { return _entries[ region ]; }
    void set( std::size_t region, PatternEntry entry ) { _entries[ region ] = entry; }
    void clear( std::size_t region ) { _entries[ region ].reset(); }

    // True when the pattern constrains no region at all.
    [[nodiscard]] bool is_universal() const;

    [[nodiscard]] bool matches( const World& world ) const;

    // The pattern that fixes every region to exactly the world's choice.
    [[nodiscard]] static WorldPattern of_world( const World& world );

    bool operator==( const WorldPattern& ) const = default;
};

struct Forbid
{
    WorldPattern pattern;

    bool operator==( const Forbid& ) const = default;
};

struct Consequence
{
    std::size_t region = 0;
    std::size_t setting = 0;
    std::size_t outcome = 0;

    bool operator==( const Consequence& ) const = default;
};

// Whenever a world matches the condition and performs the consequence's
// setting, that setting must show the required outcome.
struct Conditional
{
    WorldPattern condition;
    Consequence consequence;

    bool operator==( const Conditional& ) const = default;
};

struct Constraint
{
    std::string label;
    std::variant< Forbid, Conditional > body;

    bool operator==( const Constraint& ) const = default;
};

struct Possibility
{
    std::string label;
    WorldPattern pattern;

    bool operator==( const Possibility& ) const = default;
};

struct SettingRef
{
    std::size_t region = 0;
    std::size_t setting = 0;

    bool operator==( const SettingRef& ) const = default;
};

class Scenario
{
    std::string _name;
    bool _spacelike = true;
    std::vector< Region > _regions;
    std::vector< Constraint > _constraints;
    std::vector< Possibility > _possibilities;

    Scenario() = default;
    friend Scenario validate_scenario( const RawScenario& raw );

public:
    [[nodiscard]] const std::string& name() const { return _name; }
    [[nodiscard]] bool spacelike() const { return _spacelike; }
    [[nodiscard]] const std::vector< Region >& regions() const { return _regions; }
    [[nodiscard]] std::size_t region_count() const { return _regions.size(); }
    [[nodiscard]] const std::vector< Constraint >& constraints() const { return _constraints; }
    [[nodiscard]] const std::vector< Possibility >& possibilities() const { return _possibilities; }

    [[nodiscard]] const Setting& setting( SettingRef ref ) const { return _regions[ ref.region ].settings[ ref.setting ]; }
    [[nodiscard]] const Setting& setting( std::size_t region, std::size_t setting ) const
    {
        return _regions[ region ].settings[ setting ];
    }

    [[nodiscard]] std::optional< std::size_t > find_region( std::string_view name ) const;
    [[nodiscard]] std::optional< SettingRef > find_setting( std::string_view name ) const;
    [[nodiscard]] std::optional< std::size_t > find_outcome( SettingRef setting, std::string_view label ) const;

    // True when every region's choice is in range for this scenario.
    [[nodiscard]] bool admits( const World& world ) const;

    // "L2+,R2+": one setting name immediately followed by its outcome label
    // per region, in region order.
    [[nodiscard]] std::string format_world( const World& world ) const;
    // Same notation restricted to the constrained regions; "*" for the universal pattern.
    [[nodiscard]] std::string format_pattern( const WorldPattern& pattern ) const;
    [[nodiscard]] std::string format_constraint( const Constraint& constraint ) const;

    bool operator==( const Scenario& ) const = default;
};

// Checks every structural invariant and freezes the name tables.
// Throws validation_error.
[[nodiscard]] Scenario validate_scenario( const RawScenario& raw );

// Inverse of validate_scenario (region names filled in on every entry).
[[nodiscard]] RawScenario to_raw( const Scenario& scenario );

// Forbid normal form of one constraint / of all constraints in declaration order.
// Duplicates within a single constraint's expansion are dropped.
[[nodiscard]] std::vector< WorldPattern > normalize_constraint( const Scenario& scenario, const Constraint& constraint );
[[nodiscard]] std::vector< WorldPattern > normalize_constraints( const Scenario& scenario );

// Parses the pattern / world literal notation produced by format_pattern and
// format_world. Items are comma separated; an item is a setting name followed
// by an optional outcome label (whitespace between them is allowed). Column
// numbers in parse_error are relative to `text`.
[[nodiscard]] WorldPattern parse_pattern( const Scenario& scenario, std::string_view text );
// As parse_pattern, but every region must be fixed with an outcome.
[[nodiscard]] World parse_world( const Scenario& scenario, std::string_view text );

// Name-based pattern parsing, used by the scenario file reader before a
// Scenario exists. Settings are looked up in `regions`.
[[nodiscard]] RawPattern parse_raw_pattern( const std::vector< Region >& regions, std::string_view text );

[[nodiscard]] bool is_identifier( std::string_view text );
[[nodiscard]] bool is_outcome_label( std::string_view text );

} // namespace cfcheck
