#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lazyfox/metric.hpp"

namespace lazyfox {

struct Action {
    CommunityId community;
    double gain;

    bool operator==(const Action&) const = default;
};

/// Best join and best leave found for one node. Absent actions had no
/// strictly positive gain.
struct NodeChange {
    NodeId node = 0;
    std::optional<Action> best_join;
    std::optional<Action> best_leave;

    bool operator==(const NodeChange&) const = default;
};

struct AppliedChange {
    double delta = 0.0;  // estimator change measured at apply time
    bool joined = false;
    bool left = false;
};

/// Applies leave before join. Actions that no longer fit the cover (target
/// gone, node already in or out) are skipped. `scores` must be current on
/// entry and is kept current.
AppliedChange apply_change(Cover& cover, const NodeChange& change, const Graph& g, CommunityScores& scores);

struct RunConfig {
    std::size_t queue_size = 0;  // 0: same as worker_count
    int worker_count = 0;        // 0: hardware concurrency
    double wcc_threshold = 0.01;
    std::size_t max_iterations = 100;
    bool dump_each_iteration = false;
    PostProcessMode post_process_mode = PostProcessMode::none;
};

/// Fills the defaulted fields; throws ConfigError for out-of-range values.
RunConfig resolve(RunConfig config);

struct IterationRecord {
    std::size_t iteration = 0;  // 1-based
    double wcc = 0.0;           // running estimator after the iteration
    double relative_change = 0.0;
    std::size_t joins = 0;
    std::size_t leaves = 0;
    std::size_t communities = 0;  // after degenerate removal
    double seconds = 0.0;
    std::size_t decreasing_applies = 0;  // applied changes with negative measured delta
};

struct RunTrace {
    double initial_wcc = 0.0;
    std::vector<IterationRecord> iterations;
};

/// Frozen view handed to workers during a batch.
struct Snapshot {
    WccContext ctx;
    const CommunityScores& scores;
};

/// Per-worker buffers for compute_node_change.
class ChangeScratch {
public:
    void prepare(NodeId node_count, CommunityId id_bound);

private:
    friend NodeChange compute_node_change(const Snapshot&, NodeId, ChangeScratch&);
    std::vector<std::uint32_t> neighbor_stamp_;
    std::uint32_t stamp_ = 0;
    std::vector<std::uint32_t> links_;
    std::vector<CommunityId> touched_;
};

/// Evaluates every join into a community holding a neighbor of x and every
/// leave of a community holding x. Ties keep the lowest community ID.
NodeChange compute_node_change(const Snapshot& snapshot, NodeId x, ChangeScratch& scratch);
NodeChange compute_node_change(const Snapshot& snapshot, NodeId x);

/// Mutable optimization state, owned by one coordinating thread.
struct RunState {
    RunState(const Graph& g, Cover initial);

    const Graph& graph;
    Cover cover;
    std::vector<NodeId> order;
    CommunityScores scores;
    double wcc = 0.0;
};

/// One pass over all nodes in batches of queue_size. Every batch is computed
/// against the cover as it was at the batch start (in parallel over
/// worker_count threads) and then applied in processing order. Ends with
/// degenerate-community removal. `config` must be resolved.
IterationRecord run_iteration(RunState& state, const RunConfig& config);

struct RunResult {
    Cover cover;
    RunTrace trace;
};

using IterationObserver = std::function<void(const IterationRecord&, const Cover&)>;

/// Iterates until the relative estimator change drops below the threshold
/// (negative changes included) or max_iterations is reached.
RunResult run(const Graph& g, RunConfig config, std::optional<Cover> initial = std::nullopt,
              const IterationObserver& observer = {});

struct BenchmarkRow {
    RunConfig config;
    double seconds = 0.0;  // preprocessing (when timed) plus optimization
    double ratio = 1.0;    // seconds relative to the baseline row
    std::vector<double> iteration_seconds;
    std::size_t iterations = 0;
    double final_wcc = 0.0;
};

/// Times one run per config without writing anything. The baseline is the
/// first config with queue_size 1, or the first row if there is none.
std::vector<BenchmarkRow> benchmark(const Graph& g, std::span<const RunConfig> configs);
/// Same, but graph construction from `edges` is part of every measurement.
std::vector<BenchmarkRow> benchmark(const RawEdgeList& edges, std::span<const RunConfig> configs);

}  // namespace lazyfox
