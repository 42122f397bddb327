// Timing comparison of the serial reference optimizer and the OpenMP engine.
//
//   lazyfox_bench [--nodes N] [--workers 1,2,4,8] [--reference-nodes M]
//
// Part one runs the reference and the engine at queue size 1 on a small
// graph (they must agree). Part two times the engine on an N-node synthetic
// graph for each worker count, with the queue size equal to the worker count.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "lazyfox/engine.hpp"
#include "lazyfox/evaluate.hpp"
#include "lazyfox/reference.hpp"
#include "lazyfox/synthetic.hpp"

namespace {

template <class F>
double time_seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lazyfox benchmark"};
    lazyfox::NodeId nodes = 100000;
    lazyfox::NodeId reference_nodes = 400;
    std::vector<int> workers{1, 2, 4, 8};
    app.add_option("--nodes", nodes, "Nodes of the large synthetic graph");
    app.add_option("--reference-nodes", reference_nodes, "Nodes of the graph used for the reference comparison");
    app.add_option("--workers", workers, "Worker counts")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    std::printf("# hardware threads: %u\n", std::thread::hardware_concurrency());

    {
        lazyfox::synthetic::PlantedSpec spec;
        spec.nodes = reference_nodes;
        spec.groups = std::max<std::uint32_t>(1, reference_nodes / 25);
        const auto g = lazyfox::Graph::build(lazyfox::synthetic::planted_overlapping(spec));
        lazyfox::reference::Result ref;
        lazyfox::RunResult fast;
        const double t_ref = time_seconds([&] { ref = lazyfox::reference::run(g, 1, 0.01, 100); });
        const double t_fast = time_seconds([&] { fast = lazyfox::run(g, {.queue_size = 1, .worker_count = 1}); });
        std::printf("kernel\tnodes\tseconds\titerations\tfinal_wcc\n");
        std::printf("reference\t%u\t%.4f\t%zu\t%.10g\n", g.node_count(), t_ref, ref.iterations.size(),
                    ref.iterations.empty() ? ref.initial_wcc : ref.iterations.back().wcc);
        std::printf("engine\t%u\t%.4f\t%zu\t%.10g\n", g.node_count(), t_fast, fast.trace.iterations.size(),
                    fast.trace.iterations.empty() ? fast.trace.initial_wcc : fast.trace.iterations.back().wcc);
        std::printf("# engine speedup over reference: %.1fx\n\n", t_ref / t_fast);
    }

    const auto edges = lazyfox::synthetic::large_sparse(nodes);
    std::vector<lazyfox::RunConfig> configs;
    for (int w : workers) configs.push_back({.queue_size = static_cast<std::size_t>(w), .worker_count = w});
    const auto rows = lazyfox::benchmark(edges, configs);
    std::printf("workers\tqueue\tseconds\tratio\titerations\tfinal_wcc\n");
    for (const auto& row : rows) {
        std::printf("%d\t%zu\t%.4f\t%.3f\t%zu\t%.10g\n", row.config.worker_count, row.config.queue_size, row.seconds,
                    row.ratio, row.iterations, row.final_wcc);
    }
    return 0;
}
