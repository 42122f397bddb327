#include "lazyfox/reference.hpp"

#include <algorithm>
#include <optional>

#include "lazyfox/metric.hpp"

namespace lazyfox::reference {

namespace {

struct Decision {
    NodeId node;
    std::optional<CommunityId> join;
    std::optional<CommunityId> leave;
};

bool has(const std::vector<NodeId>& members, NodeId x) { return std::binary_search(members.begin(), members.end(), x); }

std::vector<NodeId> with(std::vector<NodeId> members, NodeId x) {
    members.insert(std::lower_bound(members.begin(), members.end(), x), x);
    return members;
}

std::vector<NodeId> without(std::vector<NodeId> members, NodeId x) {
    members.erase(std::lower_bound(members.begin(), members.end(), x));
    return members;
}

Decision decide(const Graph& g, const PlainCover& cover, const std::vector<double>& scores, NodeId x) {
    Decision d{x, std::nullopt, std::nullopt};
    double best_join = 0.0;
    double best_leave = 0.0;
    for (CommunityId c = 0; c < cover.communities.size(); ++c) {
        if (!cover.alive[c]) continue;
        const auto& members = cover.communities[c];
        if (has(members, x)) {
            const double gain = community_score(g, without(members, x)) - scores[c];
            if (gain > best_leave) {
                best_leave = gain;
                d.leave = c;
            }
            continue;
        }
        const bool neighboring = std::ranges::any_of(g.neighbors(x), [&](NodeId y) { return has(members, y); });
        if (!neighboring) continue;
        const double gain = community_score(g, with(members, x)) - scores[c];
        if (gain > best_join) {
            best_join = gain;
            d.join = c;
        }
    }
    return d;
}

std::pair<bool, bool> apply(const Graph& g, PlainCover& cover, std::vector<double>& scores, const Decision& d) {
    bool left = false;
    bool joined = false;
    if (d.leave && cover.alive[*d.leave] && has(cover.communities[*d.leave], d.node)) {
        cover.communities[*d.leave] = without(cover.communities[*d.leave], d.node);
        scores[*d.leave] = community_score(g, cover.communities[*d.leave]);
        left = true;
    }
    if (d.join && cover.alive[*d.join] && !has(cover.communities[*d.join], d.node)) {
        cover.communities[*d.join] = with(cover.communities[*d.join], d.node);
        scores[*d.join] = community_score(g, cover.communities[*d.join]);
        joined = true;
    }
    return {left, joined};
}

}  // namespace

PlainCover initial_clustering(const Graph& g) {
    PlainCover cover;
    std::vector<bool> assigned(g.node_count(), false);
    for (NodeId x : processing_order(g)) {
        if (assigned[x]) continue;
        std::vector<NodeId> members{x};
        assigned[x] = true;
        for (NodeId y : g.neighbors(x)) {
            if (!assigned[y]) {
                assigned[y] = true;
                members.push_back(y);
            }
        }
        std::sort(members.begin(), members.end());
        cover.communities.push_back(std::move(members));
        cover.alive.push_back(true);
    }
    return cover;
}

double community_score(const Graph& g, const std::vector<NodeId>& members) {
    if (members.size() < 2) return 0.0;
    std::vector<std::uint32_t> inside(members.size(), 0);
    std::uint64_t twice_edges = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i != j && g.has_edge(members[i], members[j])) ++inside[i];
        }
        twice_edges += inside[i];
    }
    const double density = community_density(members.size(), twice_edges / 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        sum += wcc_hat_term(g.degree(members[i]), inside[i], members.size() - 1, density, g.global_cc());
    }
    return sum;
}

double total_score(const Graph& g, const PlainCover& cover) {
    double total = 0.0;
    for (std::size_t c = 0; c < cover.communities.size(); ++c) {
        if (cover.alive[c]) total += community_score(g, cover.communities[c]);
    }
    return total;
}

Result run(const Graph& g, std::size_t queue_size, double threshold, std::size_t max_iterations) {
    Result result;
    result.cover = initial_clustering(g);
    auto& cover = result.cover;
    std::vector<double> scores(cover.communities.size());
    for (std::size_t c = 0; c < scores.size(); ++c) scores[c] = community_score(g, cover.communities[c]);

    double wcc = 0.0;
    for (double s : scores) wcc += s;
    result.initial_wcc = wcc;

    const auto order = processing_order(g);
    const std::size_t q = std::max<std::size_t>(1, queue_size);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        const double before = wcc;
        Iteration record;
        for (std::size_t batch = 0; batch < order.size(); batch += q) {
            std::vector<Decision> decisions;
            for (std::size_t i = batch; i < std::min(order.size(), batch + q); ++i) {
                decisions.push_back(decide(g, cover, scores, order[i]));
            }
            for (const Decision& d : decisions) {
                const double leave_before = d.leave ? scores[*d.leave] : 0.0;
                const double join_before = d.join ? scores[*d.join] : 0.0;
                auto [left, joined] = apply(g, cover, scores, d);
                double delta = 0.0;
                if (left) delta += scores[*d.leave] - leave_before;
                if (joined) delta += scores[*d.join] - join_before;
                wcc += delta;
                record.leaves += left ? 1 : 0;
                record.joins += joined ? 1 : 0;
            }
        }
        for (std::size_t c = 0; c < cover.communities.size(); ++c) {
            if (cover.alive[c] && cover.communities[c].size() < 2) {
                cover.alive[c] = false;
                cover.communities[c].clear();
            }
            record.communities += cover.alive[c] ? 1 : 0;
        }
        record.wcc = wcc;
        result.iterations.push_back(record);
        const double rel = before != 0.0 ? (wcc - before) / before : (wcc > 0.0 ? 1.0 : 0.0);
        if (rel < threshold) break;
    }
    return result;
}

}  // namespace lazyfox::reference
