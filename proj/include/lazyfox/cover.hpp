#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lazyfox/graph.hpp"

namespace lazyfox {

/// One (community, deg(x, C)) entry of a node's membership list.
struct Membership {
    CommunityId community;
    std::uint32_t internal_degree;

    bool operator==(const Membership&) const = default;
};

/// Overlapping assignment of nodes to communities.
///
/// Keeps both directions of the membership relation, the number of internal
/// edges of every community and, for every member, its number of neighbors
/// inside that community. Join and leave update these incrementally by
/// touching only the neighbors of the moved node. Community IDs are handed
/// out by a monotone counter and never reused; a removed community keeps its
/// slot and reports `exists() == false`.
class Cover {
public:
    Cover() = default;
    explicit Cover(NodeId node_count) : memberships_(node_count) {}

    NodeId node_count() const { return static_cast<NodeId>(memberships_.size()); }
    /// One past the largest community ID ever handed out.
    CommunityId id_bound() const { return static_cast<CommunityId>(communities_.size()); }
    std::size_t community_count() const { return alive_count_; }
    /// Live community IDs in ascending order.
    std::vector<CommunityId> community_ids() const;

    bool exists(CommunityId c) const { return c < communities_.size() && communities_[c].alive; }
    /// Sorted member list. Empty for removed or unknown communities.
    std::span<const NodeId> members(CommunityId c) const;
    std::size_t size(CommunityId c) const { return members(c).size(); }
    std::uint64_t internal_edges(CommunityId c) const { return exists(c) ? communities_[c].internal_edges : 0; }

    /// Memberships of x sorted by community ID.
    std::span<const Membership> memberships(NodeId x) const { return memberships_[x]; }
    bool contains(NodeId x, CommunityId c) const { return find(x, c) != nullptr; }
    /// deg(x, C) for a member x of C; nullopt when x is not a member.
    std::optional<std::uint32_t> internal_degree(NodeId x, CommunityId c) const;

    /// New community from the given members (duplicates ignored).
    CommunityId add_community(std::span<const NodeId> members, const Graph& g);
    /// Add x to C. Returns false (and changes nothing) if C is gone or already holds x.
    bool join(NodeId x, CommunityId c, const Graph& g);
    /// Remove x from C. Returns false (and changes nothing) if C is gone or lacks x.
    bool leave(NodeId x, CommunityId c, const Graph& g);
    void remove_community(CommunityId c);

    /// Equal member sets under the same IDs.
    bool operator==(const Cover& other) const;

private:
    struct Community {
        std::vector<NodeId> members;
        std::uint64_t internal_edges = 0;
        bool alive = true;
    };

    const Membership* find(NodeId x, CommunityId c) const;
    Membership* find(NodeId x, CommunityId c);

    std::vector<Community> communities_;
    std::vector<std::vector<Membership>> memberships_;
    std::size_t alive_count_ = 0;
};

/// Greedy disjoint start: visiting nodes in `order`, every unassigned node
/// founds a community that its unassigned neighbors join.
Cover initial_clustering(const Graph& g, std::span<const NodeId> order);

/// Deletes every community with fewer than two members. Returns how many.
std::size_t remove_degenerate(Cover& cover);

enum class PostProcessMode { none, dedupe, nested };

/// `dedupe` drops repeated member sets (lowest ID survives); `nested` also
/// drops every community that is a strict subset of another one.
void post_process(Cover& cover, PostProcessMode mode);

/// One community per line of whitespace-separated original node IDs.
/// Blank lines are skipped. Throws LoadError for IDs absent from the graph.
Cover load_cover(std::istream& in, const Graph& g);

/// Writes live communities in ID order, members as ascending original IDs.
void write_cover(std::ostream& out, const Cover& cover, const Graph& g);

/// Cover file contents without a graph: one sorted, duplicate-free ID list
/// per nonblank line. Throws ParseError for non-integer tokens.
std::vector<std::vector<OriginalId>> read_communities(std::istream& in);

}  // namespace lazyfox
