#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfcheck
{

// Raised for malformed scenarios: duplicate names, dangling references,
// empty setting or outcome lists.
class validation_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Position is 1-based; column 0 means "whole line".
struct source_position
{
    std::size_t line = 1;
    std::size_t column = 1;
};

class parse_error : public std::runtime_error
{
    source_position _position;

public:
    parse_error( source_position position, const std::string& message )
        : std::runtime_error{ std::to_string( position.line ) + ":" + std::to_string( position.column ) + ": " + message },
          _position{ position } {}

    [[nodiscard]] const source_position& position() const { return _position; }
};

// Raised when the candidate product exceeds the configured ceiling.
class size_guard_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Caller errors during evaluation, e.g. evaluating at an eliminated world.
class evaluation_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace cfcheck
