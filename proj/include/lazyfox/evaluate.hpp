#pragma once

#include <span>
#include <vector>

#include "lazyfox/cover.hpp"

namespace lazyfox {

/// A cover as plain member lists over the node universe [0, n).
/// Each list must be sorted and duplicate-free.
using Communities = std::vector<std::vector<NodeId>>;

/// Live communities of a cover, in ID order.
Communities to_communities(const Cover& cover);

/// Average over detected communities of the best F1 against any truth
/// community. Asymmetric. Throws UndefinedScoreError for an empty detection.
double f1_overlapping(const Communities& detected, const Communities& truth);

/// Symmetric overlapping-NMI distance with max normalization:
/// 1 - I(X:Y) / max(H(X), H(Y)), where every community is a binary variable
/// over the n nodes and the conditional entropy of a community given the
/// other cover is its best constrained match. 0 for identical covers.
/// Throws UndefinedScoreError for n == 0.
double onmi_distance(const Communities& detected, const Communities& truth, std::size_t n);

/// One-directional variant: mean over detected communities of the smallest
/// normalized conditional entropy H(C'|C)/H(C') against any truth community.
double onmi_distance_directional(const Communities& detected, const Communities& truth, std::size_t n);

struct CoverStats {
    std::size_t community_count = 0;
    std::size_t size_min = 0;
    std::size_t size_max = 0;
    double size_mean = 0.0;
    double overlap_mean = 0.0;  // memberships per node with at least one
};

/// Throws UndefinedScoreError for an empty cover.
CoverStats cover_stats(const Communities& communities);

}  // namespace lazyfox
