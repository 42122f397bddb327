#include "lazyfox/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lazyfox::synthetic {

namespace {

std::uint32_t power_law_size(std::mt19937_64& rng, const PlantedSpec& spec) {
    const double lo = spec.min_group;
    const double hi = spec.max_group;
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (std::abs(spec.size_exponent - 1.0) < 1e-12) return static_cast<std::uint32_t>(lo * std::pow(hi / lo, u));
    const double e = 1.0 - spec.size_exponent;
    const double value = std::pow(std::pow(lo, e) + u * (std::pow(hi, e) - std::pow(lo, e)), 1.0 / e);
    return static_cast<std::uint32_t>(std::clamp(value, lo, hi));
}

}  // namespace

RawEdgeList planted_overlapping(const PlantedSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<double> weight(spec.groups);
    for (auto& w : weight) w = power_law_size(rng, spec);

    std::discrete_distribution<std::uint32_t> pick_group(weight.begin(), weight.end());
    std::bernoulli_distribution another(spec.extra_membership);
    std::vector<std::vector<NodeId>> groups(spec.groups);
    for (NodeId x = 0; x < spec.nodes; ++x) {
        std::vector<std::uint32_t> mine{pick_group(rng)};
        while (another(rng) && mine.size() < spec.groups) {
            const auto g = pick_group(rng);
            if (std::find(mine.begin(), mine.end(), g) == mine.end()) mine.push_back(g);
        }
        for (auto g : mine) groups[g].push_back(x);
    }

    RawEdgeList edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const auto& members : groups) {
        if (members.size() < 2) continue;
        const double p = std::min(1.0, spec.intra_degree / static_cast<double>(members.size() - 1));
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (coin(rng) < p) edges.emplace_back(members[i], members[j]);
            }
        }
    }

    std::uniform_int_distribution<NodeId> any_node(0, spec.nodes - 1);
    std::poisson_distribution<int> cross(spec.inter_degree / 2.0);
    for (NodeId x = 0; x < spec.nodes; ++x) {
        for (int k = cross(rng); k > 0; --k) edges.emplace_back(x, any_node(rng));
    }
    return edges;
}

RawEdgeList email_like(std::uint64_t seed) {
    PlantedSpec spec;
    spec.nodes = 1005;
    spec.groups = 42;
    spec.min_group = 6;
    spec.max_group = 110;
    spec.size_exponent = 1.2;
    spec.extra_membership = 0.45;
    spec.intra_degree = 16.0;
    spec.inter_degree = 6.0;
    spec.seed = seed;
    return planted_overlapping(spec);
}

RawEdgeList large_sparse(NodeId nodes, std::uint64_t seed) {
    PlantedSpec spec;
    spec.nodes = nodes;
    spec.groups = std::max<std::uint32_t>(1, nodes / 12);
    spec.min_group = 5;
    spec.max_group = 60;
    spec.size_exponent = 2.0;
    spec.extra_membership = 0.25;
    spec.intra_degree = 7.0;
    spec.inter_degree = 2.0;
    spec.seed = seed;
    return planted_overlapping(spec);
}

RawEdgeList gnp(NodeId nodes, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution edge(p);
    RawEdgeList edges;
    for (NodeId u = 0; u < nodes; ++u) {
        for (NodeId v = u + 1; v < nodes; ++v) {
            if (edge(rng)) edges.emplace_back(u, v);
        }
    }
    return edges;
}

}  // namespace lazyfox::synthetic
