#include "lazyfox/cover.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace lazyfox {

namespace {

auto membership_less = [](const Membership& m, CommunityId c) { return m.community < c; };

std::vector<OriginalId> parse_id_line(const std::string& line, std::size_t line_no) {
    std::vector<OriginalId> ids;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
        OriginalId value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ParseError(line_no, "'" + token + "' is not a node ID");
        }
        ids.push_back(value);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace

std::vector<CommunityId> Cover::community_ids() const {
    std::vector<CommunityId> ids;
    ids.reserve(alive_count_);
    for (CommunityId c = 0; c < id_bound(); ++c) {
        if (communities_[c].alive) ids.push_back(c);
    }
    return ids;
}

std::span<const NodeId> Cover::members(CommunityId c) const {
    if (!exists(c)) return {};
    return communities_[c].members;
}

const Membership* Cover::find(NodeId x, CommunityId c) const {
    const auto& list = memberships_[x];
    auto it = std::lower_bound(list.begin(), list.end(), c, membership_less);
    if (it == list.end() || it->community != c) return nullptr;
    return &*it;
}

Membership* Cover::find(NodeId x, CommunityId c) {
    return const_cast<Membership*>(std::as_const(*this).find(x, c));
}

std::optional<std::uint32_t> Cover::internal_degree(NodeId x, CommunityId c) const {
    if (const auto* m = find(x, c)) return m->internal_degree;
    return std::nullopt;
}

CommunityId Cover::add_community(std::span<const NodeId> members, const Graph& g) {
    const auto c = id_bound();
    communities_.push_back(Community{});
    ++alive_count_;
    std::vector<NodeId> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (NodeId x : sorted) join(x, c, g);
    return c;
}

bool Cover::join(NodeId x, CommunityId c, const Graph& g) {
    if (!exists(c) || contains(x, c)) return false;
    std::uint32_t inside = 0;
    for (NodeId y : g.neighbors(x)) {
        if (auto* m = find(y, c)) {
            ++m->internal_degree;
            ++inside;
        }
    }
    auto& community = communities_[c];
    community.members.insert(std::lower_bound(community.members.begin(), community.members.end(), x), x);
    community.internal_edges += inside;
    auto& list = memberships_[x];
    list.insert(std::lower_bound(list.begin(), list.end(), c, membership_less), Membership{c, inside});
    return true;
}

bool Cover::leave(NodeId x, CommunityId c, const Graph& g) {
    if (!exists(c)) return false;
    auto& list = memberships_[x];
    auto it = std::lower_bound(list.begin(), list.end(), c, membership_less);
    if (it == list.end() || it->community != c) return false;
    const std::uint32_t inside = it->internal_degree;
    list.erase(it);
    for (NodeId y : g.neighbors(x)) {
        if (auto* m = find(y, c)) --m->internal_degree;
    }
    auto& community = communities_[c];
    community.members.erase(std::lower_bound(community.members.begin(), community.members.end(), x));
    community.internal_edges -= inside;
    return true;
}

void Cover::remove_community(CommunityId c) {
    if (!exists(c)) return;
    auto& community = communities_[c];
    for (NodeId x : community.members) {
        auto& list = memberships_[x];
        list.erase(std::lower_bound(list.begin(), list.end(), c, membership_less));
    }
    community.members.clear();
    community.members.shrink_to_fit();
    community.internal_edges = 0;
    community.alive = false;
    --alive_count_;
}

bool Cover::operator==(const Cover& other) const {
    if (id_bound() != other.id_bound() || node_count() != other.node_count()) return false;
    for (CommunityId c = 0; c < id_bound(); ++c) {
        if (exists(c) != other.exists(c)) return false;
        if (!std::ranges::equal(members(c), other.members(c))) return false;
    }
    return true;
}

Cover initial_clustering(const Graph& g, std::span<const NodeId> order) {
    Cover cover(g.node_count());
    std::vector<bool> assigned(g.node_count(), false);
    std::vector<NodeId> group;
    for (NodeId x : order) {
        if (assigned[x]) continue;
        group.assign(1, x);
        assigned[x] = true;
        for (NodeId y : g.neighbors(x)) {
            if (!assigned[y]) {
                assigned[y] = true;
                group.push_back(y);
            }
        }
        cover.add_community(group, g);
    }
    return cover;
}

std::size_t remove_degenerate(Cover& cover) {
    std::size_t removed = 0;
    for (CommunityId c : cover.community_ids()) {
        if (cover.size(c) < 2) {
            cover.remove_community(c);
            ++removed;
        }
    }
    return removed;
}

void post_process(Cover& cover, PostProcessMode mode) {
    if (mode == PostProcessMode::none) return;

    std::map<std::vector<NodeId>, CommunityId> first_seen;
    for (CommunityId c : cover.community_ids()) {
        auto members = cover.members(c);
        std::vector<NodeId> key(members.begin(), members.end());
        if (!first_seen.emplace(std::move(key), c).second) cover.remove_community(c);
    }
    if (mode == PostProcessMode::dedupe) return;

    // Decide on the deduplicated cover first, then remove, so that a chain
    // A ⊂ B ⊂ C drops both A and B.
    std::vector<CommunityId> contained;
    for (CommunityId a : cover.community_ids()) {
        auto members = cover.members(a);
        if (members.empty()) {
            // The empty set sits inside every other community.
            if (cover.community_count() > 1) contained.push_back(a);
            continue;
        }
        for (const Membership& m : cover.memberships(members.front())) {
            const CommunityId b = m.community;
            if (b == a || cover.size(b) <= members.size()) continue;
            const bool subset = std::ranges::all_of(members, [&](NodeId x) { return cover.contains(x, b); });
            if (subset) {
                contained.push_back(a);
                break;
            }
        }
    }
    for (CommunityId a : contained) cover.remove_community(a);
}

Cover load_cover(std::istream& in, const Graph& g) {
    Cover cover(g.node_count());
    std::string line;
    std::size_t line_no = 0;
    std::vector<NodeId> members;
    while (std::getline(in, line)) {
        ++line_no;
        const auto ids = parse_id_line(line, line_no);
        if (ids.empty()) continue;
        members.clear();
        for (OriginalId id : ids) {
            auto dense = g.dense_id(id);
            if (!dense) throw LoadError("node " + std::to_string(id) + " (line " + std::to_string(line_no) + ") is not in the graph");
            members.push_back(*dense);
        }
        cover.add_community(members, g);
    }
    return cover;
}

void write_cover(std::ostream& out, const Cover& cover, const Graph& g) {
    std::string line;
    for (CommunityId c : cover.community_ids()) {
        line.clear();
        // Dense IDs are assigned in original-ID order, so members stay sorted.
        for (NodeId x : cover.members(c)) {
            if (!line.empty()) line.push_back(' ');
            line += std::to_string(g.original_id(x));
        }
        line.push_back('\n');
        out << line;
    }
}

std::vector<std::vector<OriginalId>> read_communities(std::istream& in) {
    std::vector<std::vector<OriginalId>> result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto ids = parse_id_line(line, line_no);
        if (!ids.empty()) result.push_back(std::move(ids));
    }
    return result;
}

}  // namespace lazyfox
