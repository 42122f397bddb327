#pragma once

#include <vector>

#include "lazyfox/graph.hpp"

// Straightforward single-threaded optimizer kept as a test oracle and as the
// benchmark baseline. It stores communities as plain sorted member lists and
// recomputes every community score from the adjacency structure, sharing only
// the per-node estimator formula with the optimized engine.
namespace lazyfox::reference {

/// Community member lists indexed by community ID; removed entries are empty.
struct PlainCover {
    std::vector<std::vector<NodeId>> communities;
    std::vector<bool> alive;
};

PlainCover initial_clustering(const Graph& g);

/// Estimator score of a sorted member list, counting internal edges and
/// internal degrees by adjacency lookups.
double community_score(const Graph& g, const std::vector<NodeId>& members);
double total_score(const Graph& g, const PlainCover& cover);

struct Iteration {
    double wcc = 0.0;
    std::size_t joins = 0;
    std::size_t leaves = 0;
    std::size_t communities = 0;
};

struct Result {
    PlainCover cover;
    double initial_wcc = 0.0;
    std::vector<Iteration> iterations;
};

/// Batched optimization: for each block of `queue_size` nodes in processing
/// order all decisions are taken against the block-start cover, then applied
/// leave-first in order. queue_size 1 is the plain sequential algorithm.
Result run(const Graph& g, std::size_t queue_size, double threshold, std::size_t max_iterations);

}  // namespace lazyfox::reference
