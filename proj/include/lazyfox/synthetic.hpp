#pragma once

#include <cstdint>

#include "lazyfox/graph.hpp"

// Seeded generators for graphs with planted overlapping groups. Used by the
// acceptance suite and the benchmark when no real dataset is at hand.
namespace lazyfox::synthetic {

struct PlantedSpec {
    NodeId nodes = 1000;
    std::uint32_t groups = 40;
    std::uint32_t min_group = 5;
    std::uint32_t max_group = 100;
    double size_exponent = 1.5;       // group sizes ~ s^-exponent on [min, max]
    double extra_membership = 0.35;   // chance of each further group, geometric
    double intra_degree = 12.0;       // expected neighbors inside a group
    double inter_degree = 4.0;        // expected random neighbors across groups
    std::uint64_t seed = 42;
};

/// Random graph where each node joins one group plus a geometric number of
/// extra groups; edges are dense inside groups and sparse between them.
RawEdgeList planted_overlapping(const PlantedSpec& spec);

/// About 1000 nodes and 16k edges with strong, overlapping team structure,
/// mimicking a small dense e-mail network.
RawEdgeList email_like(std::uint64_t seed = 2021);

/// Sparse graph with many small overlapping groups, for timing runs.
RawEdgeList large_sparse(NodeId nodes, std::uint64_t seed = 7);

/// Erdős–Rényi G(n, p).
RawEdgeList gnp(NodeId nodes, double p, std::uint64_t seed);

}  // namespace lazyfox::synthetic
