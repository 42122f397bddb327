#include "lazyfox/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <omp.h>

namespace lazyfox {

namespace {

/// node -> indices of the communities that contain it
std::vector<std::vector<std::uint32_t>> index_members(const Communities& cover, std::size_t n) {
    std::vector<std::vector<std::uint32_t>> index(n);
    for (std::uint32_t c = 0; c < cover.size(); ++c) {
        for (NodeId x : cover[c]) {
            if (x >= n) throw std::out_of_range("node " + std::to_string(x) + " lies outside the node universe");
            index[x].push_back(c);
        }
    }
    return index;
}

void check_universe(const Communities& cover, std::size_t n) {
    for (const auto& c : cover) {
        for (NodeId x : c) {
            if (x >= n) throw std::out_of_range("node " + std::to_string(x) + " lies outside the node universe");
        }
    }
}

std::size_t universe_of(const Communities& a, const Communities& b) {
    std::size_t n = 0;
    for (const auto* cover : {&a, &b}) {
        for (const auto& c : *cover) {
            if (!c.empty()) n = std::max<std::size_t>(n, c.back() + 1);
        }
    }
    return n;
}

/// Intersection sizes of one community with every community of `other`,
/// reported sparsely through `touched`.
class OverlapCounter {
public:
    explicit OverlapCounter(std::size_t other_count) : counts_(other_count, 0) {}

    template <class Visit>
    void for_each_overlap(const std::vector<NodeId>& members, const std::vector<std::vector<std::uint32_t>>& index,
                          Visit&& visit) {
        touched_.clear();
        for (NodeId x : members) {
            for (std::uint32_t l : index[x]) {
                if (counts_[l]++ == 0) touched_.push_back(l);
            }
        }
        for (std::uint32_t l : touched_) visit(l, std::exchange(counts_[l], 0));
    }

private:
    std::vector<std::size_t> counts_;
    std::vector<std::uint32_t> touched_;
};

double plogp(double count, double n) {
    if (count <= 0.0) return 0.0;
    const double p = count / n;
    return -p * std::log2(p);
}

double entropy(std::size_t size, std::size_t n) {
    return plogp(static_cast<double>(size), static_cast<double>(n)) +
           plogp(static_cast<double>(n - size), static_cast<double>(n));
}

/// H(X_k | Y_l) for binary indicator variables, or nullopt when the pair
/// fails the constraint that rules out complementary matches.
std::optional<double> constrained_conditional(std::size_t size_x, std::size_t size_y, std::size_t both, std::size_t n) {
    const double nn = static_cast<double>(n);
    const double d = static_cast<double>(both);
    const double c = static_cast<double>(size_x - both);
    const double b = static_cast<double>(size_y - both);
    const double a = nn - b - c - d;
    const double ha = plogp(a, nn);
    const double hb = plogp(b, nn);
    const double hc = plogp(c, nn);
    const double hd = plogp(d, nn);
    if (!(ha + hd > hb + hc)) return std::nullopt;
    return ha + hb + hc + hd - plogp(b + d, nn) - plogp(a + c, nn);
}

/// For every community of `from`, the smallest constrained H(X_k | Y_l) over
/// all communities of `to`, falling back to H(X_k).
std::vector<double> best_conditionals(const Communities& from, const Communities& to, std::size_t n) {
    const auto index = index_members(to, n);
    std::vector<double> best(from.size());
#pragma omp parallel
    {
        OverlapCounter counter(to.size());
        std::vector<std::size_t> overlap(to.size(), 0);
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(from.size()); ++i) {
            const auto& x = from[static_cast<std::size_t>(i)];
            counter.for_each_overlap(x, index, [&](std::uint32_t l, std::size_t both) { overlap[l] = both; });
            double value = entropy(x.size(), n);
            for (std::uint32_t l = 0; l < to.size(); ++l) {
                if (auto h = constrained_conditional(x.size(), to[l].size(), overlap[l], n)) value = std::min(value, *h);
                overlap[l] = 0;
            }
            best[static_cast<std::size_t>(i)] = value;
        }
    }
    return best;
}

}  // namespace

Communities to_communities(const Cover& cover) {
    Communities result;
    result.reserve(cover.community_count());
    for (CommunityId c : cover.community_ids()) {
        auto members = cover.members(c);
        result.emplace_back(members.begin(), members.end());
    }
    return result;
}

double f1_overlapping(const Communities& detected, const Communities& truth) {
    if (detected.empty()) throw UndefinedScoreError("F1 is undefined for an empty detected cover");
    const auto index = index_members(truth, universe_of(detected, truth));
    OverlapCounter counter(truth.size());
    double sum = 0.0;
    for (const auto& found : detected) {
        double best = 0.0;
        counter.for_each_overlap(found, index, [&](std::uint32_t l, std::size_t both) {
            const double precision = static_cast<double>(both) / static_cast<double>(found.size());
            const double recall = static_cast<double>(both) / static_cast<double>(truth[l].size());
            best = std::max(best, 2.0 * precision * recall / (precision + recall));
        });
        sum += best;
    }
    return sum / static_cast<double>(detected.size());
}

double onmi_distance(const Communities& detected, const Communities& truth, std::size_t n) {
    if (n == 0) throw UndefinedScoreError("ONMI is undefined on an empty node universe");
    check_universe(detected, n);
    check_universe(truth, n);
    double hx = 0.0;
    double hy = 0.0;
    for (const auto& c : detected) hx += entropy(c.size(), n);
    for (const auto& c : truth) hy += entropy(c.size(), n);
    const double norm = std::max(hx, hy);
    if (norm <= 0.0) return 0.0;

    double hx_given_y = 0.0;
    double hy_given_x = 0.0;
    for (double v : best_conditionals(detected, truth, n)) hx_given_y += v;
    for (double v : best_conditionals(truth, detected, n)) hy_given_x += v;
    const double mutual = 0.5 * (hx - hx_given_y + hy - hy_given_x);
    return std::clamp(1.0 - mutual / norm, 0.0, 1.0);
}

double onmi_distance_directional(const Communities& detected, const Communities& truth, std::size_t n) {
    if (n == 0) throw UndefinedScoreError("ONMI is undefined on an empty node universe");
    if (detected.empty()) throw UndefinedScoreError("ONMI is undefined for an empty detected cover");
    check_universe(detected, n);
    check_universe(truth, n);
    const auto best = best_conditionals(detected, truth, n);
    double sum = 0.0;
    for (std::size_t k = 0; k < detected.size(); ++k) {
        const double h = entropy(detected[k].size(), n);
        // A community spanning nothing or everything carries no information to lose.
        sum += h > 0.0 ? best[k] / h : 0.0;
    }
    return std::clamp(sum / static_cast<double>(detected.size()), 0.0, 1.0);
}

CoverStats cover_stats(const Communities& communities) {
    if (communities.empty()) throw UndefinedScoreError("statistics are undefined for an empty cover");
    CoverStats stats;
    stats.community_count = communities.size();
    stats.size_min = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0;
    NodeId universe = 0;
    for (const auto& c : communities) {
        stats.size_min = std::min(stats.size_min, c.size());
        stats.size_max = std::max(stats.size_max, c.size());
        total += c.size();
        if (!c.empty()) universe = std::max<NodeId>(universe, c.back() + 1);
    }
    std::vector<bool> covered(universe, false);
    for (const auto& c : communities) {
        for (NodeId x : c) covered[x] = true;
    }
    const auto nodes = std::count(covered.begin(), covered.end(), true);
    stats.size_mean = static_cast<double>(total) / static_cast<double>(communities.size());
    stats.overlap_mean = nodes == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(nodes);
    return stats;
}

}  // namespace lazyfox
