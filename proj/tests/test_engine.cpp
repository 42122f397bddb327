#include <doctest.h>

#include <random>

#include "lazyfox/engine.hpp"
#include "lazyfox/evaluate.hpp"
#include "lazyfox/reference.hpp"
#include "lazyfox/synthetic.hpp"
#include "oracle.hpp"

using namespace lazyfox;

namespace {

// Two K4 blocks {0,1,2,3} and {3,4,5,6} sharing node 3.
Graph shared_k4s() {
    auto edges = oracle::clique(4);
    auto second = oracle::clique(4, 3);
    edges.insert(edges.end(), second.begin(), second.end());
    return Graph::build(edges);
}

Communities live_reference(const reference::PlainCover& cover) {
    Communities out;
    for (std::size_t c = 0; c < cover.communities.size(); ++c) {
        if (cover.alive[c]) out.push_back(cover.communities[c]);
    }
    return out;
}

RunConfig config(std::size_t q, int workers, double threshold = 0.01) {
    RunConfig c;
    c.queue_size = q;
    c.worker_count = workers;
    c.wcc_threshold = threshold;
    return c;
}

void check_matches_reference(const Graph& g, std::size_t q) {
    const auto engine = run(g, config(q, 1));
    const auto ref = reference::run(g, q, 0.01, 100);
    CHECK(to_communities(engine.cover) == live_reference(ref.cover));
    REQUIRE(engine.trace.iterations.size() == ref.iterations.size());
    CHECK(std::abs(engine.trace.initial_wcc - ref.initial_wcc) <= 1e-9);
    for (std::size_t i = 0; i < ref.iterations.size(); ++i) {
        const auto& a = engine.trace.iterations[i];
        const auto& b = ref.iterations[i];
        CHECK(a.joins == b.joins);
        CHECK(a.leaves == b.leaves);
        CHECK(a.communities == b.communities);
        CHECK(std::abs(a.wcc - b.wcc) <= 1e-9 * std::max(1.0, std::abs(b.wcc)));
    }
}

}  // namespace

TEST_CASE("compute_node_change on fixtures") {
    auto g = shared_k4s();
    Cover cover(g.node_count());
    cover.add_community(std::vector<NodeId>{0, 1, 2, 3}, g);
    cover.add_community(std::vector<NodeId>{4, 5, 6}, g);
    CommunityScores scores(WccContext{g, cover});
    const Snapshot snapshot{WccContext{g, cover}, scores};

    const auto shared = compute_node_change(snapshot, 3);
    REQUIRE(shared.best_join.has_value());
    CHECK(shared.best_join->community == 1);
    CHECK(shared.best_join->gain > 0.0);
    CHECK(shared.best_join->gain == doctest::Approx(gain_join(snapshot.ctx, 3, 1)));

    // Interior clique nodes lose by leaving and have nothing to join.
    const auto interior = compute_node_change(snapshot, 0);
    CHECK_FALSE(interior.best_leave.has_value());
    CHECK_FALSE(interior.best_join.has_value());
}

TEST_CASE("compute_node_change with scratch agrees with the plain overload") {
    std::mt19937_64 rng(41);
    ChangeScratch scratch;
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(30, 0.25, rng);
        auto cover = oracle::random_cover(g, 6, 0.25, rng);
        CommunityScores scores(WccContext{g, cover});
        const Snapshot snapshot{WccContext{g, cover}, scores};
        scratch.prepare(g.node_count(), cover.id_bound());
        for (NodeId x = 0; x < g.node_count(); ++x) {
            CHECK(compute_node_change(snapshot, x, scratch) == compute_node_change(snapshot, x));
        }
    }
}

TEST_CASE("best actions are the maxima over all candidates") {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(18, 0.3, rng);
        auto cover = oracle::random_cover(g, 5, 0.3, rng);
        CommunityScores scores(WccContext{g, cover});
        const Snapshot snapshot{WccContext{g, cover}, scores};
        for (NodeId x = 0; x < g.node_count(); ++x) {
            const auto change = compute_node_change(snapshot, x);
            double best_join = 0.0;
            double best_leave = 0.0;
            for (CommunityId c : cover.community_ids()) {
                if (cover.contains(x, c)) {
                    best_leave = std::max(best_leave, gain_leave(snapshot.ctx, x, c));
                    continue;
                }
                bool touches = false;
                for (NodeId y : g.neighbors(x)) touches = touches || cover.contains(y, c);
                if (touches) best_join = std::max(best_join, gain_join(snapshot.ctx, x, c));
            }
            CHECK(change.best_join.has_value() == (best_join > 0.0));
            CHECK(change.best_leave.has_value() == (best_leave > 0.0));
            if (change.best_join) CHECK(change.best_join->gain == doctest::Approx(best_join));
            if (change.best_leave) CHECK(change.best_leave->gain == doctest::Approx(best_leave));
        }
    }
}

TEST_CASE("queue size one matches the sequential reference") {
    std::mt19937_64 rng(47);
    for (int round = 0; round < 15; ++round) {
        auto g = oracle::random_graph(40, 0.15, rng);
        check_matches_reference(g, 1);
    }
    check_matches_reference(shared_k4s(), 1);
}

TEST_CASE("batched runs match the batched reference") {
    std::mt19937_64 rng(53);
    for (std::size_t q : {2, 3, 8, 1000}) {
        for (int round = 0; round < 5; ++round) {
            auto g = oracle::random_graph(35, 0.2, rng);
            check_matches_reference(g, q);
        }
    }
}

TEST_CASE("results do not depend on the worker count") {
    synthetic::PlantedSpec spec;
    spec.nodes = 300;
    spec.groups = 12;
    spec.min_group = 8;
    spec.max_group = 40;
    spec.seed = 5;
    const auto g = Graph::build(synthetic::planted_overlapping(spec));
    for (std::size_t q : {1, 4, 16}) {
        const auto one = run(g, config(q, 1));
        for (int workers : {2, 4}) {
            const auto many = run(g, config(q, workers));
            CHECK(many.cover == one.cover);
            REQUIRE(many.trace.iterations.size() == one.trace.iterations.size());
            for (std::size_t i = 0; i < one.trace.iterations.size(); ++i) {
                CHECK(many.trace.iterations[i].wcc == one.trace.iterations[i].wcc);
            }
        }
    }
}

TEST_CASE("sequential runs never decrease the estimator") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(40, 0.2, rng);
        const auto result = run(g, config(1, 1, 1e-9));
        double previous = result.trace.initial_wcc;
        for (const auto& it : result.trace.iterations) {
            CHECK(it.decreasing_applies == 0);
            CHECK(it.wcc >= previous - 1e-9);
            previous = it.wcc;
        }
    }
}

TEST_CASE("trace values agree with a full recomputation") {
    std::mt19937_64 rng(61);
    for (std::size_t q : {1, 5}) {
        auto g = oracle::random_graph(45, 0.18, rng);
        const auto result = run(g, config(q, 1), std::nullopt, [&](const IterationRecord& rec, const Cover& cover) {
            const double full = oracle::wcc_hat_total(g, oracle::member_sets(cover));
            CHECK(std::abs(rec.wcc - full) <= 1e-6 * std::max(1.0, full));
            CHECK(rec.communities == cover.community_count());
        });
        CHECK(result.trace.iterations.size() >= 1);
    }
}

TEST_CASE("a clique is already optimal") {
    auto g = Graph::build(oracle::clique(4));
    const auto result = run(g, config(1, 1));
    REQUIRE(result.trace.iterations.size() == 1);
    CHECK(result.trace.iterations[0].joins == 0);
    CHECK(result.trace.iterations[0].leaves == 0);
    CHECK(to_communities(result.cover) == Communities{{0, 1, 2, 3}});
    CHECK(result.trace.initial_wcc == 4.0);
}

TEST_CASE("two cliques sharing a node end up overlapping") {
    const auto result = run(shared_k4s(), config(1, 1));
    std::size_t holding_shared = 0;
    for (const auto& c : to_communities(result.cover)) {
        holding_shared += std::binary_search(c.begin(), c.end(), NodeId{3}) ? 1 : 0;
    }
    CHECK(holding_shared == 2);
}

TEST_CASE("a looser threshold stops no later") {
    std::mt19937_64 rng(67);
    for (int round = 0; round < 10; ++round) {
        auto g = oracle::random_graph(50, 0.12, rng);
        const auto tight = run(g, config(1, 1, 0.01));
        const auto loose = run(g, config(1, 1, 0.02));
        CHECK(loose.trace.iterations.size() <= tight.trace.iterations.size());
    }
}

TEST_CASE("max_iterations bounds the run") {
    auto g = shared_k4s();
    auto c = config(1, 1, 1e-9);
    c.max_iterations = 1;
    CHECK(run(g, c).trace.iterations.size() == 1);
}

TEST_CASE("resolve validates the configuration") {
    RunConfig c;
    c.worker_count = 3;
    const auto resolved = resolve(c);
    CHECK(resolved.queue_size == 3);
    CHECK(resolve(RunConfig{}).worker_count >= 1);

    RunConfig bad = c;
    bad.wcc_threshold = 1.5;
    CHECK_THROWS_AS(resolve(bad), ConfigError);
    bad = c;
    bad.wcc_threshold = -0.1;
    CHECK_THROWS_AS(resolve(bad), ConfigError);
    bad = c;
    bad.worker_count = -2;
    CHECK_THROWS_AS(resolve(bad), ConfigError);
    bad = c;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(resolve(bad), ConfigError);
}

TEST_CASE("an explicit initial cover is used as the start") {
    auto g = shared_k4s();
    Cover start(g.node_count());
    start.add_community(std::vector<NodeId>{0, 1, 2, 3}, g);
    start.add_community(std::vector<NodeId>{3, 4, 5, 6}, g);
    const auto result = run(g, config(1, 1), start);
    CHECK(result.trace.initial_wcc == doctest::Approx(oracle::wcc_hat_total(g, oracle::member_sets(start))));
    CHECK(result.cover == start);
}

TEST_CASE("benchmark reports ratios against the sequential row") {
    auto g = shared_k4s();
    const std::vector<RunConfig> configs{config(1, 1), config(2, 2)};
    const auto rows = benchmark(g, configs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].ratio == 1.0);
    CHECK(rows[0].iterations == rows[0].iteration_seconds.size());
    CHECK(rows[1].ratio > 0.0);
    CHECK(rows[0].final_wcc == doctest::Approx(run(g, config(1, 1)).trace.iterations.back().wcc));
}
