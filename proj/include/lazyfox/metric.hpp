#pragma once

#include <vector>

#include "lazyfox/cover.hpp"

namespace lazyfox {

/// Read-only view of the graph and a cover snapshot that the estimator is
/// evaluated against. Cheap to copy.
struct WccContext {
    const Graph& graph;
    const Cover& cover;
};

/// d(d-1)/2, zero for d < 2.
inline double pairs(std::uint64_t d) { return d < 2 ? 0.0 : static_cast<double>(d * (d - 1) / 2); }

/// Edge density 2m / (s(s-1)); zero for fewer than two members.
inline double community_density(std::size_t size, std::uint64_t internal_edges) {
    return size < 2 ? 0.0 : static_cast<double>(internal_edges) / pairs(size);
}

/// Estimated fit of one node to one community.
///
/// `others` is |C \ {x}|. Expected triangle counts are pairs(deg)·density
/// inside the community and pairs(deg)·global_cc in the whole graph; the
/// triangle-forming neighbor counts are bounded by plain degrees.
inline double wcc_hat_term(std::uint32_t degree, std::uint32_t internal_degree, std::size_t others,
                           double density, double global_cc) {
    const double expected_all = pairs(degree) * global_cc;
    if (!(expected_all > 0.0)) return 0.0;
    const double expected_inside = pairs(internal_degree) * density;
    return expected_inside / expected_all * static_cast<double>(degree) /
           static_cast<double>(others + (degree - internal_degree));
}

// Exact WCC, counted triangle by triangle. Used as a reference only.
double wcc_exact_node(const Graph& g, const Cover& cover, NodeId x, CommunityId c);
double wcc_exact_total(const Graph& g, const Cover& cover);

// Estimator. Unknown communities throw std::out_of_range.
double wcc_hat_node(const WccContext& ctx, NodeId x, CommunityId c);
double wcc_hat_community(const WccContext& ctx, CommunityId c);
double wcc_hat_total(const WccContext& ctx);

/// Change of the estimator if x joined c. Requires x ∉ c (ContractError).
/// Only c's score can change, so this is also the change of the total.
double gain_join(const WccContext& ctx, NodeId x, CommunityId c);
/// Change of the estimator if x left c. Requires x ∈ c (ContractError).
double gain_leave(const WccContext& ctx, NodeId x, CommunityId c);

/// Score of c with x added, given deg(x, c) and a neighbor-of-x predicate.
/// Summation runs over members in ascending ID order, so it reproduces
/// wcc_hat_community bit for bit on the mutated cover.
template <class IsNeighbor>
double score_with_join(const WccContext& ctx, NodeId x, CommunityId c, std::uint32_t x_inside, IsNeighbor&& is_neighbor) {
    const auto members = ctx.cover.members(c);
    const std::size_t others = members.size();
    const double density = community_density(others + 1, ctx.cover.internal_edges(c) + x_inside);
    const double cc = ctx.graph.global_cc();
    double sum = 0.0;
    bool placed = false;
    const auto x_term = wcc_hat_term(ctx.graph.degree(x), x_inside, others, density, cc);
    for (NodeId y : members) {
        if (!placed && x < y) {
            sum += x_term;
            placed = true;
        }
        const std::uint32_t inside = *ctx.cover.internal_degree(y, c) + (is_neighbor(y) ? 1u : 0u);
        sum += wcc_hat_term(ctx.graph.degree(y), inside, others, density, cc);
    }
    if (!placed) sum += x_term;
    return sum;
}

/// Score of c with member x removed; see score_with_join.
template <class IsNeighbor>
double score_with_leave(const WccContext& ctx, NodeId x, CommunityId c, IsNeighbor&& is_neighbor) {
    const auto members = ctx.cover.members(c);
    if (members.size() < 3) return 0.0;
    const std::size_t others = members.size() - 2;
    const double density =
        community_density(members.size() - 1, ctx.cover.internal_edges(c) - *ctx.cover.internal_degree(x, c));
    const double cc = ctx.graph.global_cc();
    double sum = 0.0;
    for (NodeId y : members) {
        if (y == x) continue;
        const std::uint32_t inside = *ctx.cover.internal_degree(y, c) - (is_neighbor(y) ? 1u : 0u);
        sum += wcc_hat_term(ctx.graph.degree(y), inside, others, density, cc);
    }
    return sum;
}

/// Per-community estimator values indexed by community ID.
class CommunityScores {
public:
    CommunityScores() = default;
    explicit CommunityScores(const WccContext& ctx);

    double operator[](CommunityId c) const { return c < scores_.size() ? scores_[c] : 0.0; }
    /// Recompute c (zero if it no longer exists); returns new minus old.
    double refresh(const WccContext& ctx, CommunityId c);
    /// Sum over all communities in ID order.
    double total() const;

private:
    std::vector<double> scores_;
};

}  // namespace lazyfox
