#include "lazyfox/metric.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lazyfox {

namespace {

void require_community(const Cover& cover, CommunityId c) {
    if (!cover.exists(c)) throw std::out_of_range("community " + std::to_string(c) + " does not exist");
}

bool closes_triangle(const Graph& g, NodeId x, NodeId y) {
    auto a = g.neighbors(x);
    auto b = g.neighbors(y);
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return true;
        }
    }
    return false;
}

std::uint32_t neighbors_inside(const Graph& g, const Cover& cover, NodeId x, CommunityId c) {
    if (auto d = cover.internal_degree(x, c)) return *d;
    std::uint32_t count = 0;
    for (NodeId y : g.neighbors(x)) count += cover.contains(y, c) ? 1 : 0;
    return count;
}

}  // namespace

double wcc_exact_node(const Graph& g, const Cover& cover, NodeId x, CommunityId c) {
    require_community(cover, c);
    const std::uint64_t all = g.triangles(x);
    if (all == 0) return 0.0;
    const auto members = cover.members(c);
    const std::uint64_t inside = triangles_with_set(g, x, members);

    std::size_t vt_all = 0;
    std::size_t vt_outside = 0;
    for (NodeId y : g.neighbors(x)) {
        if (!closes_triangle(g, x, y)) continue;
        ++vt_all;
        if (!std::binary_search(members.begin(), members.end(), y)) ++vt_outside;
    }
    const std::size_t others = members.size() - (std::binary_search(members.begin(), members.end(), x) ? 1 : 0);
    return static_cast<double>(inside) / static_cast<double>(all) * static_cast<double>(vt_all) /
           static_cast<double>(others + vt_outside);
}

double wcc_exact_total(const Graph& g, const Cover& cover) {
    double total = 0.0;
    for (CommunityId c : cover.community_ids()) {
        for (NodeId x : cover.members(c)) total += wcc_exact_node(g, cover, x, c);
    }
    return total;
}

double wcc_hat_node(const WccContext& ctx, NodeId x, CommunityId c) {
    require_community(ctx.cover, c);
    const std::size_t size = ctx.cover.size(c);
    const std::size_t others = size - (ctx.cover.contains(x, c) ? 1 : 0);
    return wcc_hat_term(ctx.graph.degree(x), neighbors_inside(ctx.graph, ctx.cover, x, c), others,
                        community_density(size, ctx.cover.internal_edges(c)), ctx.graph.global_cc());
}

double wcc_hat_community(const WccContext& ctx, CommunityId c) {
    require_community(ctx.cover, c);
    const auto members = ctx.cover.members(c);
    if (members.size() < 2) return 0.0;
    const double density = community_density(members.size(), ctx.cover.internal_edges(c));
    const double cc = ctx.graph.global_cc();
    double sum = 0.0;
    for (NodeId y : members) {
        sum += wcc_hat_term(ctx.graph.degree(y), *ctx.cover.internal_degree(y, c), members.size() - 1, density, cc);
    }
    return sum;
}

double wcc_hat_total(const WccContext& ctx) {
    double total = 0.0;
    for (CommunityId c : ctx.cover.community_ids()) total += wcc_hat_community(ctx, c);
    return total;
}

double gain_join(const WccContext& ctx, NodeId x, CommunityId c) {
    require_community(ctx.cover, c);
    if (ctx.cover.contains(x, c)) throw ContractError("gain_join: node is already a member");
    const std::uint32_t inside = neighbors_inside(ctx.graph, ctx.cover, x, c);
    const double after = score_with_join(ctx, x, c, inside, [&](NodeId y) { return ctx.graph.has_edge(x, y); });
    return after - wcc_hat_community(ctx, c);
}

double gain_leave(const WccContext& ctx, NodeId x, CommunityId c) {
    require_community(ctx.cover, c);
    if (!ctx.cover.contains(x, c)) throw ContractError("gain_leave: node is not a member");
    const double after = score_with_leave(ctx, x, c, [&](NodeId y) { return ctx.graph.has_edge(x, y); });
    return after - wcc_hat_community(ctx, c);
}

CommunityScores::CommunityScores(const WccContext& ctx) : scores_(ctx.cover.id_bound(), 0.0) {
    for (CommunityId c : ctx.cover.community_ids()) scores_[c] = wcc_hat_community(ctx, c);
}

double CommunityScores::refresh(const WccContext& ctx, CommunityId c) {
    if (c >= scores_.size()) scores_.resize(c + 1, 0.0);
    const double before = scores_[c];
    scores_[c] = ctx.cover.exists(c) ? wcc_hat_community(ctx, c) : 0.0;
    return scores_[c] - before;
}

double CommunityScores::total() const { return std::accumulate(scores_.begin(), scores_.end(), 0.0); }

}  // namespace lazyfox
