#include "dagtrails/structure.hpp"

#include <algorithm>
#include <deque>

namespace dagtrails {

std::vector<NodeId> ActiveCycle::cycle_nodes() const {
    std::vector<NodeId> out;
    out.push_back(apex);
    out.insert(out.end(), connector.nodes.begin(), connector.nodes.end());
    return out;
}

namespace {

// Chords of the closed trail: arcs between cyclically non-consecutive
// members of the node circle.
bool closed_trail_has_chord(const Dag& d, const std::vector<NodeId>& circle) {
    const int k = static_cast<int>(circle.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
            if (consecutive) continue;
            if (d.adjacent(circle[i], circle[j])) return true;
        }
    return false;
}

// All simple converging-free trails from w to z avoiding the apex.
template <typename Visit>
bool connector_dfs(const Dag& d, NodeId goal, NodeId apex, Trail& t,
                   NodeSet& used, Visit& visit) {
    NodeId cur = t.nodes.back();
    for (NodeId next : d.neighbors_of(cur)) {
        if (next == apex || used.contains(next)) continue;
        Direction dir =
            d.has_arc(cur, next) ? Direction::forward : Direction::backward;
        if (!t.dirs.empty() && t.dirs.back() == Direction::forward &&
            dir == Direction::backward)
            continue; // converging at cur
        t.nodes.push_back(next);
        t.dirs.push_back(dir);
        bool keep_going = true;
        if (next == goal) {
            keep_going = visit(t);
        } else {
            used.insert(next);
            keep_going = connector_dfs(d, goal, apex, t, used, visit);
            used.erase(next);
        }
        t.nodes.pop_back();
        t.dirs.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

} // namespace

std::vector<ActiveCycle> find_active_cycles(const Dag& d, bool stop_at_first) {
    std::vector<ActiveCycle> out;
    const int n = d.node_count();
    for (NodeId apex = 0; apex < n && !(stop_at_first && !out.empty()); ++apex) {
        const auto& parents = d.parents_of(apex);
        for (std::size_t i = 0; i < parents.size(); ++i) {
            for (std::size_t j = i + 1; j < parents.size(); ++j) {
                NodeId w = parents[i], z = parents[j];
                Trail t;
                t.nodes.push_back(w);
                NodeSet used(n);
                used.insert(w);
                auto visit = [&](const Trail& conn) {
                    if (conn.node_count() < 3) return true; // needs n >= 1
                    std::vector<NodeId> circle;
                    circle.push_back(apex);
                    circle.insert(circle.end(), conn.nodes.begin(),
                                  conn.nodes.end());
                    if (!closed_trail_has_chord(d, circle)) {
                        out.push_back(ActiveCycle{apex, w, z, conn});
                        if (stop_at_first) return false;
                    }
                    return true;
                };
                connector_dfs(d, z, apex, t, used, visit);
                if (stop_at_first && !out.empty()) return out;
            }
        }
    }
    return out;
}

bool has_active_cycle(const Dag& d) {
    return !find_active_cycles(d, true).empty();
}

namespace {

// Converging-free reachability from v1 through interiors outside K.
// Mode asc: arrived against an arc (from a child); may turn anywhere.
// Mode desc: arrived along an arc; may only keep descending.
NodeSet k_members_reached(const Dag& d, const NodeSet& k, NodeId v1) {
    const int n = d.node_count();
    enum : int { desc = 0, asc = 1 };
    std::vector<char> seen(2 * n, 0);
    std::deque<std::pair<NodeId, int>> queue;
    NodeSet reached(n);
    auto arrive = [&](NodeId v, int mode) {
        if (k.contains(v)) {
            reached.insert(v); // terminal: trail had >= 1 interior node
            return;
        }
        if (!seen[2 * v + mode]) {
            seen[2 * v + mode] = 1;
            queue.emplace_back(v, mode);
        }
    };
    for (NodeId p : d.parents_of(v1))
        if (!k.contains(p)) {
            if (!seen[2 * p + asc]) {
                seen[2 * p + asc] = 1;
                queue.emplace_back(p, asc);
            }
        }
    for (NodeId c : d.children_of(v1))
        if (!k.contains(c)) {
            if (!seen[2 * c + desc]) {
                seen[2 * c + desc] = 1;
                queue.emplace_back(c, desc);
            }
        }
    while (!queue.empty()) {
        auto [v, mode] = queue.front();
        queue.pop_front();
        if (mode == asc)
            for (NodeId p : d.parents_of(v)) arrive(p, asc);
        for (NodeId c : d.children_of(v)) arrive(c, desc);
    }
    return reached;
}

} // namespace

LocalRelResult has_local_relationships(const Dag& d, const NodeSet& k) {
    for (NodeId v1 : k) {
        NodeSet reached = k_members_reached(d, k, v1);
        for (NodeId v2 : reached) {
            if (v2 <= v1 || d.adjacent(v1, v2)) continue;
            TrailConstraints cons;
            cons.no_converging = true;
            cons.allowed_interior = k.complement();
            std::vector<Trail> ts = shortest_constrained_trails(d, v1, v2, cons);
            if (ts.empty())
                throw std::logic_error("reachability and trail search disagree");
            return LocalRelResult{false, v1, v2, ts.front()};
        }
    }
    return LocalRelResult{};
}

Partition decompose_local(const Dag& d, const NodeSet& k) {
    if (!has_local_relationships(d, k))
        throw Error(errc::not_local, "K does not have local relationships");
    Partition out;
    NodeSet visited(d.node_count());
    for (NodeId seed : k) {
        if (visited.contains(seed)) continue;
        NodeSet block(d.node_count());
        std::deque<NodeId> queue{seed};
        visited.insert(seed);
        block.insert(seed);
        while (!queue.empty()) {
            NodeId v = queue.front();
            queue.pop_front();
            for (NodeId w : d.neighbors_of(v))
                if (k.contains(w) && !visited.contains(w)) {
                    visited.insert(w);
                    block.insert(w);
                    queue.push_back(w);
                }
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

bool local_after_removal(const Dag& d, NodeId v) {
    const auto& nbrs = d.neighbors_of(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            NodeId a = nbrs[i], b = nbrs[j];
            bool converging_at_v = d.has_arc(a, v) && d.has_arc(b, v);
            if (!converging_at_v && !d.adjacent(a, b)) return false;
        }
    return true;
}

PairVerdict connected_or_dsep(const Dag& d, const NodeSet& k, NodeId v1,
                              NodeId v2) {
    if (v1 == v2 || !k.contains(v1) || !k.contains(v2))
        throw Error(errc::invalid_query, "need two distinct members of K");
    if (!has_local_relationships(d, k))
        throw Error(errc::not_local, "K does not have local relationships");

    NodeSet visited(d.node_count());
    std::deque<NodeId> queue{v1};
    visited.insert(v1);
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        if (v == v2) return PairVerdict::connected_in_k;
        for (NodeId w : d.neighbors_of(v))
            if (k.contains(w) && !visited.contains(w)) {
                visited.insert(w);
                queue.push_back(w);
            }
    }
    const int n = d.node_count();
    if (!d_separated(d, NodeSet::of(n, {v1}), NodeSet::of(n, {v2}), NodeSet(n)))
        throw std::logic_error(
            "pair neither connected in K nor d-separated by the empty set");
    return PairVerdict::d_separated_by_empty;
}

} // namespace dagtrails
