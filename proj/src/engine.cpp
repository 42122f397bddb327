#include "lazyfox/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <thread>

#include <omp.h>

namespace lazyfox {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double relative_change(double previous, double current) {
    if (previous != 0.0) return (current - previous) / previous;
    // Nothing to compare against; only a move away from zero counts as progress.
    return current > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

void consider(std::optional<Action>& best, CommunityId c, double gain) {
    if (gain > 0.0 && (!best || gain > best->gain)) best = Action{c, gain};
}

}  // namespace

AppliedChange apply_change(Cover& cover, const NodeChange& change, const Graph& g, CommunityScores& scores) {
    AppliedChange applied;
    const WccContext ctx{g, cover};
    if (change.best_leave && cover.leave(change.node, change.best_leave->community, g)) {
        applied.left = true;
        applied.delta += scores.refresh(ctx, change.best_leave->community);
    }
    if (change.best_join && cover.join(change.node, change.best_join->community, g)) {
        applied.joined = true;
        applied.delta += scores.refresh(ctx, change.best_join->community);
    }
    return applied;
}

RunConfig resolve(RunConfig config) {
    if (config.worker_count < 0) throw ConfigError("worker count must be positive");
    if (config.worker_count == 0) config.worker_count = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (config.queue_size == 0) config.queue_size = static_cast<std::size_t>(config.worker_count);
    if (!(config.wcc_threshold > 0.0 && config.wcc_threshold < 1.0)) {
        throw ConfigError("wcc threshold must lie strictly between 0 and 1, got " + std::to_string(config.wcc_threshold));
    }
    if (config.max_iterations == 0) throw ConfigError("max iterations must be positive");
    return config;
}

void ChangeScratch::prepare(NodeId node_count, CommunityId id_bound) {
    if (neighbor_stamp_.size() < node_count) {
        neighbor_stamp_.assign(node_count, 0);
        stamp_ = 0;
    }
    if (links_.size() < id_bound) links_.resize(id_bound, 0);
}

NodeChange compute_node_change(const Snapshot& snapshot, NodeId x, ChangeScratch& scratch) {
    const auto& [ctx, scores] = snapshot;
    const Graph& g = ctx.graph;
    const Cover& cover = ctx.cover;
    scratch.prepare(g.node_count(), cover.id_bound());

    if (++scratch.stamp_ == 0) {
        std::fill(scratch.neighbor_stamp_.begin(), scratch.neighbor_stamp_.end(), 0);
        scratch.stamp_ = 1;
    }
    const std::uint32_t stamp = scratch.stamp_;
    auto& marks = scratch.neighbor_stamp_;
    auto& links = scratch.links_;
    auto& touched = scratch.touched_;

    touched.clear();
    for (NodeId y : g.neighbors(x)) {
        marks[y] = stamp;
        for (const Membership& m : cover.memberships(y)) {
            if (links[m.community]++ == 0) touched.push_back(m.community);
        }
    }
    std::sort(touched.begin(), touched.end());
    const auto is_neighbor = [&](NodeId y) { return marks[y] == stamp; };

    NodeChange change{.node = x};
    for (CommunityId c : touched) {
        const std::uint32_t inside = std::exchange(links[c], 0);
        if (cover.contains(x, c)) continue;
        consider(change.best_join, c, score_with_join(ctx, x, c, inside, is_neighbor) - scores[c]);
    }
    for (const Membership& m : cover.memberships(x)) {
        consider(change.best_leave, m.community, score_with_leave(ctx, x, m.community, is_neighbor) - scores[m.community]);
    }
    return change;
}

NodeChange compute_node_change(const Snapshot& snapshot, NodeId x) {
    ChangeScratch scratch;
    return compute_node_change(snapshot, x, scratch);
}

RunState::RunState(const Graph& g, Cover initial)
    : graph(g), cover(std::move(initial)), order(processing_order(g)), scores(WccContext{g, cover}) {
    wcc = scores.total();
}

IterationRecord run_iteration(RunState& state, const RunConfig& config) {
    const auto start = Clock::now();
    IterationRecord record;
    const double before = state.wcc;
    const std::size_t n = state.order.size();
    const std::size_t q = std::max<std::size_t>(1, config.queue_size);
    const int workers = std::max(1, config.worker_count);

    std::vector<ChangeScratch> scratch(static_cast<std::size_t>(workers));
    std::vector<NodeChange> changes;
    changes.reserve(std::min(q, n));

    for (std::size_t batch = 0; batch < n; batch += q) {
        const std::size_t len = std::min(q, n - batch);
        changes.resize(len);
        const Snapshot snapshot{WccContext{state.graph, state.cover}, state.scores};

        if (workers == 1 || len == 1) {
            for (std::size_t i = 0; i < len; ++i) changes[i] = compute_node_change(snapshot, state.order[batch + i], scratch[0]);
        } else {
#pragma omp parallel num_threads(std::min<std::size_t>(static_cast<std::size_t>(workers), len))
            {
                ChangeScratch& local = scratch[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
                for (std::int64_t i = 0; i < static_cast<std::int64_t>(len); ++i) {
                    const auto k = static_cast<std::size_t>(i);
                    changes[k] = compute_node_change(snapshot, state.order[batch + k], local);
                }
            }
        }

        for (const NodeChange& change : changes) {
            const AppliedChange applied = apply_change(state.cover, change, state.graph, state.scores);
            state.wcc += applied.delta;
            record.joins += applied.joined ? 1 : 0;
            record.leaves += applied.left ? 1 : 0;
            record.decreasing_applies += applied.delta < 0.0 ? 1 : 0;
        }
    }

    // Communities below two members score zero, so dropping them leaves the total unchanged.
    remove_degenerate(state.cover);

    record.wcc = state.wcc;
    record.relative_change = relative_change(before, state.wcc);
    record.communities = state.cover.community_count();
    record.seconds = seconds_since(start);
    return record;
}

RunResult run(const Graph& g, RunConfig config, std::optional<Cover> initial, const IterationObserver& observer) {
    config = resolve(config);
    if (!initial) initial = initial_clustering(g, processing_order(g));
    if (initial->node_count() != g.node_count()) throw ConfigError("initial cover does not match the graph");

    RunState state(g, std::move(*initial));
    RunTrace trace;
    trace.initial_wcc = state.wcc;
    for (std::size_t it = 1; it <= config.max_iterations; ++it) {
        IterationRecord record = run_iteration(state, config);
        record.iteration = it;
        trace.iterations.push_back(record);
        if (observer) observer(record, state.cover);
        if (record.relative_change < config.wcc_threshold) break;
    }
    post_process(state.cover, config.post_process_mode);
    return RunResult{std::move(state.cover), std::move(trace)};
}

namespace {

template <class Prepare>
std::vector<BenchmarkRow> benchmark_with(std::span<const RunConfig> configs, Prepare&& prepare) {
    std::vector<BenchmarkRow> rows;
    rows.reserve(configs.size());
    for (const RunConfig& raw : configs) {
        BenchmarkRow row;
        row.config = resolve(raw);
        const auto start = Clock::now();
        const Graph& g = prepare(row.config);
        const RunResult result = run(g, row.config);
        row.seconds = seconds_since(start);
        row.iterations = result.trace.iterations.size();
        row.final_wcc = result.trace.iterations.empty() ? result.trace.initial_wcc : result.trace.iterations.back().wcc;
        for (const auto& it : result.trace.iterations) row.iteration_seconds.push_back(it.seconds);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return rows;
    auto base = std::find_if(rows.begin(), rows.end(), [](const BenchmarkRow& r) { return r.config.queue_size == 1; });
    if (base == rows.end()) base = rows.begin();
    const double baseline = base->seconds;
    for (auto& row : rows) row.ratio = &row == &*base ? 1.0 : row.seconds / baseline;
    return rows;
}

}  // namespace

std::vector<BenchmarkRow> benchmark(const Graph& g, std::span<const RunConfig> configs) {
    return benchmark_with(configs, [&](const RunConfig&) -> const Graph& { return g; });
}

std::vector<BenchmarkRow> benchmark(const RawEdgeList& edges, std::span<const RunConfig> configs) {
    Graph built;
    return benchmark_with(configs, [&](const RunConfig& config) -> const Graph& {
        built = Graph::build(edges, config.worker_count);
        return built;
    });
}

}  // namespace lazyfox
