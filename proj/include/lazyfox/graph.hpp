#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lazyfox/types.hpp"

namespace lazyfox {

using RawEdge = std::pair<OriginalId, OriginalId>;
using RawEdgeList = std::vector<RawEdge>;

/// Reads a SNAP-style edge list. '#' lines and blank lines are skipped.
/// Throws ParseError on a malformed line, EmptyGraphError when no edge is found.
RawEdgeList parse_edge_list(std::istream& in);
RawEdgeList parse_edge_list(std::string_view text);

/// Immutable simple undirected graph in CSR form with per-node triangle data.
///
/// Dense IDs are assigned in ascending order of the original IDs that occur
/// in at least one retained edge. Self-loops and repeated edges are dropped.
class Graph {
public:
    Graph() = default;

    /// Build the preprocessed graph. Triangle counting runs on `workers`
    /// OpenMP threads (0 = runtime default); the result does not depend on it.
    static Graph build(const RawEdgeList& edges, int workers = 0);

    NodeId node_count() const { return static_cast<NodeId>(degree_.size()); }
    std::size_t edge_count() const { return neighbors_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(NodeId v) const { return degree_[v]; }
    std::uint64_t triangles(NodeId v) const { return triangles_[v]; }
    bool has_edge(NodeId u, NodeId v) const;

    /// Local clustering coefficient; throws std::out_of_range for a bad node.
    double local_cc(NodeId v) const;
    /// Mean of local_cc over all nodes.
    double global_cc() const { return global_cc_; }

    OriginalId original_id(NodeId v) const { return original_ids_[v]; }
    std::optional<NodeId> dense_id(OriginalId id) const;
    std::span<const OriginalId> original_ids() const { return original_ids_; }

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> neighbors_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint64_t> triangles_;
    std::vector<double> local_cc_;
    double global_cc_ = 0.0;
    std::vector<OriginalId> original_ids_;  // sorted ascending
};

inline double local_clustering_coefficient(const Graph& g, NodeId v) { return g.local_cc(v); }
inline double global_clustering_coefficient(const Graph& g) { return g.global_cc(); }

/// Nodes sorted by local CC descending, then degree descending, then dense ID.
std::vector<NodeId> processing_order(const Graph& g);

/// Number of unordered neighbor pairs {y, z} of x, both in `members` and
/// both different from x, that are adjacent. `members` must be sorted.
std::uint64_t triangles_with_set(const Graph& g, NodeId x, std::span<const NodeId> members);

}  // namespace lazyfox
