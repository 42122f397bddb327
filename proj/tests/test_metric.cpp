#include <doctest.h>

#include <numeric>
#include <random>

#include "lazyfox/metric.hpp"
#include "oracle.hpp"

using namespace lazyfox;

namespace {

Graph triangle_with_pendant() { return Graph::build({{0, 1}, {1, 2}, {0, 2}, {0, 3}}); }

Graph two_triangles() { return Graph::build({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

Cover single(const Graph& g, std::vector<NodeId> members) {
    Cover cover(g.node_count());
    cover.add_community(members, g);
    return cover;
}

/// Estimator total after applying one mutation to a copy of the cover.
double total_after(const Graph& g, Cover cover, NodeId x, CommunityId c, bool join) {
    if (join) {
        cover.join(x, c, g);
    } else {
        cover.leave(x, c, g);
    }
    return oracle::wcc_hat_total(g, oracle::member_sets(cover));
}

}  // namespace

TEST_CASE("exact WCC on small fixtures") {
    auto k4 = Graph::build(oracle::clique(4));
    auto all = single(k4, {0, 1, 2, 3});
    CHECK(wcc_exact_node(k4, all, 0, 0) == 1.0);
    CHECK(wcc_exact_total(k4, all) == 4.0);

    auto star = Graph::build({{0, 1}, {0, 2}, {0, 3}});
    CHECK(wcc_exact_node(star, single(star, {0, 1, 2, 3}), 0, 0) == 0.0);

    auto tp = triangle_with_pendant();
    CHECK(wcc_exact_node(tp, single(tp, {0, 1, 2}), 0, 0) == 1.0);

    CHECK(wcc_exact_total(k4, Cover(k4.node_count())) == 0.0);

    auto tt = two_triangles();
    Cover both(tt.node_count());
    both.add_community(std::vector<NodeId>{0, 1, 2}, tt);
    both.add_community(std::vector<NodeId>{3, 4, 5}, tt);
    CHECK(wcc_exact_total(tt, both) == 6.0);

    CHECK_THROWS_AS(wcc_exact_node(k4, all, 0, 5), std::out_of_range);
}

TEST_CASE("estimator on small fixtures") {
    auto k4 = Graph::build(oracle::clique(4));
    auto all = single(k4, {0, 1, 2, 3});
    const WccContext ctx{k4, all};
    CHECK(wcc_hat_node(ctx, 0, 0) == 1.0);
    CHECK(wcc_hat_community(ctx, 0) == 4.0);
    CHECK(wcc_hat_total(ctx) == 4.0);

    auto path = Graph::build({{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    auto p_cover = single(path, {0, 1, 2, 3});
    CHECK(path.degree(0) == 1);
    CHECK(wcc_hat_node(WccContext{path, p_cover}, 0, 0) == 0.0);

    // Frozen hand evaluation: (1·1) / (3·7/12) · 3 / (2 + 1) = 4/7.
    auto tp = triangle_with_pendant();
    auto tri = single(tp, {0, 1, 2});
    CHECK(wcc_hat_node(WccContext{tp, tri}, 0, 0) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(oracle::wcc_hat_node(tp, 7.0 / 12.0, 0, {0, 1, 2}) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));

    CHECK(wcc_hat_total(WccContext{k4, Cover(4)}) == 0.0);
    CHECK_THROWS_AS(wcc_hat_node(ctx, 0, 3), std::out_of_range);
}

TEST_CASE("estimator community scores") {
    auto tp = triangle_with_pendant();
    auto lone = single(tp, {3});
    CHECK(wcc_hat_community(WccContext{tp, lone}, 0) == 0.0);

    // Pair {0, 3}: node 3 has degree 1 (scores 0); node 0 has deg 3,
    // deg inside 1, so pairs(1) = 0 as well.
    auto pair = single(tp, {0, 1});
    const double cc = 7.0 / 12.0;
    const double expected = oracle::wcc_hat_node(tp, cc, 0, {0, 1}) + oracle::wcc_hat_node(tp, cc, 1, {0, 1});
    CHECK(wcc_hat_community(WccContext{tp, pair}, 0) == doctest::Approx(expected));

    auto tt = two_triangles();
    Cover both(tt.node_count());
    both.add_community(std::vector<NodeId>{0, 1, 2}, tt);
    both.add_community(std::vector<NodeId>{3, 4, 5}, tt);
    CHECK(wcc_hat_total(WccContext{tt, both}) == doctest::Approx(6.0 * wcc_hat_node(WccContext{tt, both}, 0, 0)));
    CHECK(wcc_hat_total(WccContext{tt, both}) == doctest::Approx(oracle::wcc_hat_total(tt, oracle::member_sets(both))));
}

TEST_CASE("join and leave gains on fixtures") {
    auto tt = two_triangles();
    Cover both(tt.node_count());
    both.add_community(std::vector<NodeId>{0, 1, 2}, tt);
    both.add_community(std::vector<NodeId>{3, 4, 5}, tt);
    const WccContext ctx{tt, both};
    const double stranger = gain_join(ctx, 0, 1);
    CHECK(stranger < 0.0);
    CHECK(stranger == doctest::Approx(total_after(tt, both, 0, 1, true) - wcc_hat_total(ctx)));

    auto k4 = Graph::build(oracle::clique(4));
    auto three = single(k4, {1, 2, 3});
    const double welcome = gain_join(WccContext{k4, three}, 0, 0);
    CHECK(welcome > 0.0);
    CHECK(welcome == doctest::Approx(total_after(k4, three, 0, 0, true) - wcc_hat_total(WccContext{k4, three})));

    // Any member leaving a triangle community loses score.
    CHECK(gain_leave(ctx, 0, 0) < 0.0);

    // A member with no edges into its community gains by leaving.
    Cover mixed(tt.node_count());
    mixed.add_community(std::vector<NodeId>{0, 1, 2, 3}, tt);
    const double leave_stranger = gain_leave(WccContext{tt, mixed}, 3, 0);
    CHECK(leave_stranger > 0.0);
    CHECK(leave_stranger == doctest::Approx(total_after(tt, mixed, 3, 0, false) - wcc_hat_total(WccContext{tt, mixed})));

    CHECK_THROWS_AS(gain_join(ctx, 0, 0), ContractError);
    CHECK_THROWS_AS(gain_leave(ctx, 0, 1), ContractError);
}

TEST_CASE("gains equal full recomputation on random graphs") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<NodeId> size(4, 20);
    std::uniform_real_distribution<double> density(0.2, 0.6);
    for (int round = 0; round < 100; ++round) {
        auto g = oracle::random_graph(size(rng), density(rng), rng);
        auto cover = oracle::random_cover(g, 4, 0.4, rng);
        const WccContext ctx{g, cover};
        const double base = oracle::wcc_hat_total(g, oracle::member_sets(cover));
        CHECK(wcc_hat_total(ctx) == doctest::Approx(base).epsilon(1e-12));
        for (NodeId x = 0; x < g.node_count(); ++x) {
            for (CommunityId c : cover.community_ids()) {
                if (cover.contains(x, c)) {
                    CHECK(std::abs(gain_leave(ctx, x, c) - (total_after(g, cover, x, c, false) - base)) <= 1e-9);
                } else {
                    CHECK(std::abs(gain_join(ctx, x, c) - (total_after(g, cover, x, c, true) - base)) <= 1e-9);
                }
            }
        }
    }
}

TEST_CASE("leave then join back restores the estimator") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_graph(15, 0.4, rng);
        auto cover = oracle::random_cover(g, 3, 0.5, rng);
        const double before = wcc_hat_total(WccContext{g, cover});
        for (CommunityId c : cover.community_ids()) {
            auto members = cover.members(c);
            if (members.empty()) continue;
            const NodeId x = members.front();
            const double leave = gain_leave(WccContext{g, cover}, x, c);
            cover.leave(x, c, g);
            const double join = gain_join(WccContext{g, cover}, x, c);
            cover.join(x, c, g);
            CHECK(std::abs(leave + join) <= 1e-9);
            CHECK(std::abs(wcc_hat_total(WccContext{g, cover}) - before) <= 1e-9);
        }
    }
}

TEST_CASE("scores are non-negative and vanish without internal pairs") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 40; ++round) {
        auto g = oracle::random_graph(18, 0.3, rng);
        auto cover = oracle::random_cover(g, 4, 0.4, rng);
        const WccContext ctx{g, cover};
        for (CommunityId c : cover.community_ids()) {
            for (NodeId x = 0; x < g.node_count(); ++x) {
                const double hat = wcc_hat_node(ctx, x, c);
                CHECK(hat >= 0.0);
                CHECK(wcc_exact_node(g, cover, x, c) >= 0.0);
                std::uint32_t inside = 0;
                for (NodeId y : g.neighbors(x)) inside += cover.contains(y, c) ? 1 : 0;
                if (inside <= 1) CHECK(hat == 0.0);
            }
        }
    }
}

TEST_CASE("estimator is exact on cliques") {
    for (NodeId n = 3; n <= 8; ++n) {
        auto g = Graph::build(oracle::clique(n));
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), NodeId{0});
        auto cover = single(g, all);
        const WccContext ctx{g, cover};
        for (NodeId x = 0; x < n; ++x) {
            CHECK(wcc_hat_node(ctx, x, 0) == 1.0);
            CHECK(wcc_exact_node(g, cover, x, 0) == 1.0);
        }
        CHECK(wcc_hat_total(ctx) == static_cast<double>(n));
    }
}

TEST_CASE("CommunityScores tracks refreshes") {
    auto k4 = Graph::build(oracle::clique(4));
    Cover cover(4);
    cover.add_community(std::vector<NodeId>{0, 1, 2}, k4);
    CommunityScores scores(WccContext{k4, cover});
    const double before = scores.total();
    const double gain = gain_join(WccContext{k4, cover}, 3, 0);
    cover.join(3, 0, k4);
    CHECK(scores.refresh(WccContext{k4, cover}, 0) == doctest::Approx(gain));
    CHECK(scores.total() == doctest::Approx(before + gain));
    CHECK(scores.total() == 4.0);
}
