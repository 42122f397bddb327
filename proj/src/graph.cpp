#include "lazyfox/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <string>

#include <omp.h>

namespace lazyfox {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::optional<OriginalId> parse_id(std::string_view token) {
    OriginalId value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace

RawEdgeList parse_edge_list(std::istream& in) {
    RawEdgeList edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        std::vector<std::string_view> tokens;
        while (!rest.empty()) {
            std::size_t start = 0;
            while (start < rest.size() && is_space(rest[start])) ++start;
            if (start == rest.size()) break;
            std::size_t end = start;
            while (end < rest.size() && !is_space(rest[end])) ++end;
            tokens.push_back(rest.substr(start, end - start));
            rest.remove_prefix(end);
        }
        if (tokens.empty() || tokens.front().front() == '#') continue;
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected two node IDs, found " + std::to_string(tokens.size()) + " tokens");
        }
        auto u = parse_id(tokens[0]);
        auto v = parse_id(tokens[1]);
        if (!u || !v) throw ParseError(line_no, "node IDs must be nonnegative integers");
        edges.emplace_back(*u, *v);
    }
    if (edges.empty()) throw EmptyGraphError("edge list contains no edges");
    return edges;
}

RawEdgeList parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

Graph Graph::build(const RawEdgeList& raw, int workers) {
    std::vector<RawEdge> edges;
    edges.reserve(raw.size());
    for (auto [u, v] : raw) {
        if (u == v) continue;
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (edges.empty()) throw EmptyGraphError("edge list contains only self-loops");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.original_ids_.reserve(edges.size());
    for (auto [u, v] : edges) {
        g.original_ids_.push_back(u);
        g.original_ids_.push_back(v);
    }
    std::sort(g.original_ids_.begin(), g.original_ids_.end());
    g.original_ids_.erase(std::unique(g.original_ids_.begin(), g.original_ids_.end()), g.original_ids_.end());
    g.original_ids_.shrink_to_fit();

    const auto n = static_cast<NodeId>(g.original_ids_.size());
    auto dense = [&](OriginalId id) {
        return static_cast<NodeId>(std::lower_bound(g.original_ids_.begin(), g.original_ids_.end(), id) -
                                   g.original_ids_.begin());
    };

    g.degree_.assign(n, 0);
    std::vector<std::pair<NodeId, NodeId>> dense_edges;
    dense_edges.reserve(edges.size());
    for (auto [u, v] : edges) {
        NodeId a = dense(u);
        NodeId b = dense(v);
        dense_edges.emplace_back(a, b);
        ++g.degree_[a];
        ++g.degree_[b];
    }

    g.offsets_.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + g.degree_[v];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [a, b] : dense_edges) {
        g.neighbors_[fill[a]++] = b;
        g.neighbors_[fill[b]++] = a;
    }

    g.triangles_.assign(n, 0);
    g.local_cc_.assign(n, 0.0);
    const int threads = workers > 0 ? workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const auto v = static_cast<NodeId>(i);
        auto row = std::span<NodeId>(g.neighbors_.data() + g.offsets_[v], g.degree_[v]);
        std::sort(row.begin(), row.end());
    }

#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const auto v = static_cast<NodeId>(i);
        auto adj = g.neighbors(v);
        std::uint64_t twice = 0;
        for (NodeId u : adj) twice += intersection_size(adj, g.neighbors(u));
        g.triangles_[v] = twice / 2;
        const std::uint64_t d = g.degree_[v];
        if (d > 1) g.local_cc_[v] = static_cast<double>(g.triangles_[v]) / static_cast<double>(d * (d - 1) / 2);
    }

    // Sequential sum keeps the value independent of the thread count.
    g.global_cc_ = std::accumulate(g.local_cc_.begin(), g.local_cc_.end(), 0.0) / static_cast<double>(n);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

double Graph::local_cc(NodeId v) const {
    if (v >= node_count()) throw std::out_of_range("node " + std::to_string(v) + " is not in the graph");
    return local_cc_[v];
}

std::optional<NodeId> Graph::dense_id(OriginalId id) const {
    auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), id);
    if (it == original_ids_.end() || *it != id) return std::nullopt;
    return static_cast<NodeId>(it - original_ids_.begin());
}

std::vector<NodeId> processing_order(const Graph& g) {
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        const double ca = g.local_cc(a);
        const double cb = g.local_cc(b);
        if (ca != cb) return ca > cb;
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    return order;
}

std::uint64_t triangles_with_set(const Graph& g, NodeId x, std::span<const NodeId> members) {
    std::vector<NodeId> inside;
    for (NodeId y : g.neighbors(x)) {
        if (std::binary_search(members.begin(), members.end(), y)) inside.push_back(y);
    }
    std::uint64_t twice = 0;
    for (NodeId y : inside) twice += intersection_size(inside, g.neighbors(y));
    return twice / 2;
}

}  // namespace lazyfox
