#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lazyfox/engine.hpp"
#include "lazyfox/evaluate.hpp"

namespace lazyfox::cli {

namespace {

namespace fs = std::filesystem;

/// Failure that maps straight onto a process exit code.
struct Failure {
    ExitCode code;
    std::string message;
};

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string general(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw Failure{missing_input, std::string("cannot read ") + what + " '" + path + "'"};
    return in;
}

RawEdgeList read_edges(const std::string& path) {
    auto in = open_input(path, "edge list");
    try {
        return parse_edge_list(in);
    } catch (const ParseError& e) {
        throw Failure{data_mismatch, path + ": " + e.what()};
    } catch (const EmptyGraphError& e) {
        throw Failure{data_mismatch, path + ": " + e.what()};
    }
}

Graph read_graph(const std::string& path, int workers) {
    const auto edges = read_edges(path);
    try {
        return Graph::build(edges, workers);
    } catch (const EmptyGraphError& e) {
        throw Failure{data_mismatch, path + ": " + e.what()};
    }
}

std::vector<std::vector<OriginalId>> read_cover_file(const std::string& path) {
    auto in = open_input(path, "cover");
    try {
        return read_communities(in);
    } catch (const ParseError& e) {
        throw Failure{data_mismatch, path + ": " + e.what()};
    }
}

/// Writes a file in one go; any stream failure becomes an I/O exit.
template <class Body>
void write_file(const fs::path& path, Body&& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{io_failure, "cannot open '" + path.string() + "' for writing"};
    body(out);
    out.flush();
    if (!out) throw Failure{io_failure, "write to '" + path.string() + "' failed; the file may be incomplete"};
}

int default_workers() {
    if (const char* env = std::getenv("LAZYFOX_WORKERS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
    }
    return 0;
}

const std::map<std::string, PostProcessMode> post_process_modes{
    {"none", PostProcessMode::none}, {"dedupe", PostProcessMode::dedupe}, {"nested", PostProcessMode::nested}};

struct DetectOptions {
    std::string input;
    std::string output_dir;
    std::string initial_cover;
    std::size_t queue_size = 0;
    int workers = 0;
    double threshold = 0.01;
    std::size_t max_iterations = 100;
    bool dump = false;
    PostProcessMode post = PostProcessMode::none;
};

struct EvaluateOptions {
    std::string detected;
    std::string truth;
    std::string graph;
    std::size_t nodes = 0;
};

struct BenchmarkOptions {
    std::string input;
    std::vector<int> workers{1};
    std::size_t queue_size = 0;
    double threshold = 0.01;
    std::size_t max_iterations = 100;
};

RunConfig make_config(std::size_t queue_size, int workers, double threshold, std::size_t max_iterations) {
    RunConfig config;
    config.queue_size = queue_size;
    config.worker_count = workers;
    config.wcc_threshold = threshold;
    config.max_iterations = max_iterations;
    try {
        return resolve(config);
    } catch (const ConfigError& e) {
        throw Failure{usage, e.what()};
    }
}

int detect(const DetectOptions& opt, std::ostream& out, std::ostream& err) {
    RunConfig config = make_config(opt.queue_size, opt.workers, opt.threshold, opt.max_iterations);
    config.dump_each_iteration = opt.dump;
    config.post_process_mode = opt.post;
    if (static_cast<std::size_t>(config.worker_count) > config.queue_size) {
        err << "warning: " << config.worker_count << " workers but queue size " << config.queue_size
            << "; extra workers stay idle\n";
    }

    const Graph g = read_graph(opt.input, config.worker_count);
    std::optional<Cover> initial;
    if (!opt.initial_cover.empty()) {
        auto in = open_input(opt.initial_cover, "initial cover");
        try {
            initial = load_cover(in, g);
        } catch (const LoadError& e) {
            throw Failure{data_mismatch, opt.initial_cover + ": " + e.what()};
        } catch (const ParseError& e) {
            throw Failure{data_mismatch, opt.initial_cover + ": " + e.what()};
        }
    }

    const fs::path dir(opt.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Failure{io_failure, "cannot create output directory '" + opt.output_dir + "'"};

    IterationObserver observer;
    if (config.dump_each_iteration) {
        observer = [&](const IterationRecord& record, const Cover& cover) {
            write_file(dir / ("iter_" + std::to_string(record.iteration) + ".txt"),
                       [&](std::ostream& o) { write_cover(o, cover, g); });
        };
    }
    const RunResult result = run(g, config, std::move(initial), observer);

    write_file(dir / "communities.txt", [&](std::ostream& o) { write_cover(o, result.cover, g); });
    write_file(dir / "trace.tsv", [&](std::ostream& o) {
        for (const auto& it : result.trace.iterations) {
            o << it.iteration << '\t' << general(it.wcc) << '\t' << general(it.relative_change) << '\t' << it.joins
              << '\t' << it.leaves << '\t' << it.communities << '\n';
        }
    });
    write_file(dir / "timing.tsv", [&](std::ostream& o) {
        for (const auto& it : result.trace.iterations) o << it.iteration << '\t' << fixed(it.seconds, 6) << '\n';
    });

    out << "nodes\t" << g.node_count() << "\nedges\t" << g.edge_count() << "\niterations\t"
        << result.trace.iterations.size() << "\ncommunities\t" << result.cover.community_count() << "\nwcc\t"
        << general(result.trace.iterations.empty() ? result.trace.initial_wcc : result.trace.iterations.back().wcc)
        << '\n';
    return ok;
}

/// Translates original IDs into the universe [0, n) used by the metrics.
Communities to_universe(const std::vector<std::vector<OriginalId>>& cover, const std::string& path,
                        const std::optional<Graph>& g, std::size_t n) {
    Communities result;
    for (const auto& ids : cover) {
        std::vector<NodeId> members;
        for (OriginalId id : ids) {
            if (g) {
                auto dense = g->dense_id(id);
                if (!dense) throw Failure{data_mismatch, path + ": node " + std::to_string(id) + " is not in the graph"};
                members.push_back(*dense);
            } else {
                if (id >= n) {
                    throw Failure{data_mismatch, path + ": node " + std::to_string(id) + " is outside 0.." +
                                                     std::to_string(n - 1)};
                }
                members.push_back(static_cast<NodeId>(id));
            }
        }
        std::sort(members.begin(), members.end());
        result.push_back(std::move(members));
    }
    return result;
}

int evaluate(const EvaluateOptions& opt, std::ostream& out) {
    if (opt.graph.empty() && opt.nodes == 0) throw Failure{usage, "evaluate needs --nodes or --graph"};
    std::optional<Graph> g;
    std::size_t n = opt.nodes;
    if (!opt.graph.empty()) {
        g = read_graph(opt.graph, 0);
        n = g->node_count();
    }
    const auto detected = to_universe(read_cover_file(opt.detected), opt.detected, g, n);
    const auto truth = to_universe(read_cover_file(opt.truth), opt.truth, g, n);
    if (detected.empty()) throw Failure{data_mismatch, opt.detected + ": cover is empty"};

    out << "f1\t" << fixed(f1_overlapping(detected, truth), 5) << '\n';
    out << "onmi_distance\t" << fixed(onmi_distance(detected, truth, n), 5) << '\n';
    return ok;
}

int stats(const std::string& path, std::ostream& out) {
    const auto cover = read_cover_file(path);
    if (cover.empty()) throw Failure{data_mismatch, path + ": cover is empty"};
    std::vector<OriginalId> ids;
    for (const auto& c : cover) ids.insert(ids.end(), c.begin(), c.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    Communities compact;
    for (const auto& c : cover) {
        auto& members = compact.emplace_back();
        for (OriginalId id : c) {
            members.push_back(static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()));
        }
    }
    const CoverStats s = cover_stats(compact);
    out << "communities\t" << s.community_count << "\nsize_min\t" << s.size_min << "\nsize_max\t" << s.size_max
        << "\nsize_mean\t" << fixed(s.size_mean, 5) << "\noverlap_mean\t" << fixed(s.overlap_mean, 5) << '\n';
    return ok;
}

int benchmark(const BenchmarkOptions& opt, std::ostream& out) {
    std::vector<RunConfig> configs;
    for (int w : opt.workers) configs.push_back(make_config(opt.queue_size, w, opt.threshold, opt.max_iterations));
    const auto edges = read_edges(opt.input);
    std::vector<BenchmarkRow> rows;
    try {
        rows = lazyfox::benchmark(edges, configs);
    } catch (const EmptyGraphError& e) {
        throw Failure{data_mismatch, opt.input + ": " + e.what()};
    }
    out << "workers\tseconds\tratio_to_1\titerations\tfinal_wcc\n";
    for (const auto& row : rows) {
        out << row.config.worker_count << '\t' << fixed(row.seconds, 6) << '\t' << fixed(row.ratio, 4) << '\t'
            << row.iterations << '\t' << general(row.final_wcc) << '\n';
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Overlapping community detection by batched estimator optimization", "lazyfox"};
    app.require_subcommand(1);

    DetectOptions det;
    det.workers = default_workers();
    auto* detect_cmd = app.add_subcommand("detect", "Detect communities in an edge list");
    detect_cmd->add_option("--input", det.input, "Edge list file")->required();
    detect_cmd->add_option("--output-dir", det.output_dir, "Directory for communities.txt and trace.tsv")->required();
    detect_cmd->add_option("--queue-size", det.queue_size, "Nodes per batch (default: worker count)")
        ->check(CLI::PositiveNumber);
    detect_cmd->add_option("--workers", det.workers, "Worker threads (default: $LAZYFOX_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    detect_cmd->add_option("--wcc-threshold", det.threshold, "Stop below this relative improvement")
        ->check(CLI::Range(0.0, 1.0));
    detect_cmd->add_option("--max-iterations", det.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
    detect_cmd->add_option("--initial-cover", det.initial_cover, "Start from this cover instead of the greedy one");
    detect_cmd->add_flag("--dump-iterations", det.dump, "Write iter_<k>.txt after every iteration");
    detect_cmd->add_option("--post-process", det.post, "none, dedupe or nested")
        ->transform(CLI::CheckedTransformer(post_process_modes, CLI::ignore_case));

    EvaluateOptions eval;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare a detected cover with a reference cover");
    evaluate_cmd->add_option("--input", eval.detected, "Detected cover")->required();
    evaluate_cmd->add_option("--truth", eval.truth, "Reference cover")->required();
    auto* nodes_opt = evaluate_cmd->add_option("--nodes", eval.nodes, "Node universe size")->check(CLI::PositiveNumber);
    evaluate_cmd->add_option("--graph", eval.graph, "Edge list defining the node universe")->excludes(nodes_opt);

    std::string stats_input;
    auto* stats_cmd = app.add_subcommand("stats", "Describe a cover");
    stats_cmd->add_option("--input", stats_input, "Cover file")->required();

    BenchmarkOptions bench;
    auto* bench_cmd = app.add_subcommand("benchmark", "Time detection for several worker counts");
    bench_cmd->add_option("--input", bench.input, "Edge list file")->required();
    bench_cmd->add_option("--workers", bench.workers, "Comma-separated worker counts")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--queue-size", bench.queue_size, "Fixed queue size (default: worker count)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--wcc-threshold", bench.threshold, "Stop below this relative improvement")
        ->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--max-iterations", bench.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        if (*detect_cmd) return detect(det, out, err);
        if (*evaluate_cmd) return evaluate(eval, out);
        if (*stats_cmd) return stats(stats_input, out);
        return benchmark(bench, out);
    } catch (const Failure& f) {
        err << "lazyfox: " << f.message << '\n';
        return f.code;
    }
}

}  // namespace lazyfox::cli
