#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lazyfox {

/// Dense node index in [0, node_count).
using NodeId = std::uint32_t;
/// Node label as it appears in input files.
using OriginalId = std::uint64_t;
/// Community label; monotone within a run, never reused.
using CommunityId = std::uint32_t;

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct EmptyGraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cover file referenced a node that is not part of the graph.
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Caller broke an operation's precondition (e.g. join gain for a member).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A metric is not defined on its input (empty cover, empty universe).
struct UndefinedScoreError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace lazyfox
