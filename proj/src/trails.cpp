#include "dagtrails/trails.hpp"

#include <algorithm>
#include <deque>

namespace dagtrails {

Trail Trail::reversed() const {
    Trail r;
    r.nodes.assign(nodes.rbegin(), nodes.rend());
    for (auto it = dirs.rbegin(); it != dirs.rend(); ++it)
        r.dirs.push_back(*it == Direction::forward ? Direction::backward
                                                   : Direction::forward);
    return r;
}

Trail Trail::slice(int first, int last) const {
    assert(0 <= first && first <= last && last < node_count());
    Trail s;
    s.nodes.assign(nodes.begin() + first, nodes.begin() + last + 1);
    s.dirs.assign(dirs.begin() + first, dirs.begin() + last);
    return s;
}

ConnectionKind connection_at(const Trail& t, int i) {
    assert(i >= 1 && i <= t.node_count() - 2);
    Direction in = t.dirs[i - 1], out = t.dirs[i];
    if (in == Direction::forward && out == Direction::backward)
        return ConnectionKind::converging;
    if (in == Direction::backward && out == Direction::forward)
        return ConnectionKind::diverging;
    return ConnectionKind::serial;
}

bool has_converging(const Trail& t) {
    for (int i = 1; i <= t.node_count() - 2; ++i)
        if (connection_at(t, i) == ConnectionKind::converging) return true;
    return false;
}

std::vector<Trail> enumerate_trails(const Dag& d, NodeId x, NodeId y) {
    std::vector<Trail> out;
    for_each_trail(d, x, y, [&](const Trail& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

bool is_activated(const Dag& d, const Trail& t, const NodeSet& z) {
    assert(!z.contains(t.front()) && !z.contains(t.back()));
    for (int i = 1; i <= t.node_count() - 2; ++i) {
        NodeId v = t.nodes[i];
        if (connection_at(t, i) == ConnectionKind::converging) {
            if (!d.self_or_descendant_in(v, z)) return false;
        } else {
            if (z.contains(v)) return false;
        }
    }
    return true;
}

namespace {

void validate_query(const NodeSet& x, const NodeSet& y, const NodeSet& z) {
    if (x.empty() || y.empty())
        throw Error(errc::invalid_query, "X and Y must be nonempty");
    if (x.intersects(y) || x.intersects(z) || y.intersects(z))
        throw Error(errc::invalid_query, "X, Y, Z must be pairwise disjoint");
}

} // namespace

bool d_separated(const Dag& d, const NodeSet& x, const NodeSet& y,
                 const NodeSet& z) {
    validate_query(x, y, z);
    const int n = d.node_count();
    // state: node arrived at from a parent (downstream) or from a child
    enum : int { from_parent = 0, from_child = 1 };
    std::vector<char> seen(2 * n, 0);
    std::deque<std::pair<NodeId, int>> queue;
    auto push = [&](NodeId v, int mode) {
        if (!seen[2 * v + mode]) {
            seen[2 * v + mode] = 1;
            queue.emplace_back(v, mode);
        }
    };
    for (NodeId s : x) {
        for (NodeId p : d.parents_of(s)) push(p, from_child);
        for (NodeId c : d.children_of(s)) push(c, from_parent);
    }
    while (!queue.empty()) {
        auto [v, mode] = queue.front();
        queue.pop_front();
        if (y.contains(v)) return false;
        if (mode == from_child) {
            // serial (towards parents) or diverging (towards children)
            if (!z.contains(v)) {
                for (NodeId p : d.parents_of(v)) push(p, from_child);
                for (NodeId c : d.children_of(v)) push(c, from_parent);
            }
        } else {
            if (!z.contains(v))
                for (NodeId c : d.children_of(v)) push(c, from_parent);
            if (d.self_or_descendant_in(v, z))
                for (NodeId p : d.parents_of(v)) push(p, from_child);
        }
    }
    return true;
}

std::optional<Trail> find_activated_trail(const Dag& d, const NodeSet& x,
                                          const NodeSet& y, const NodeSet& z) {
    validate_query(x, y, z);
    std::optional<Trail> found;
    for (NodeId a : x) {
        for (NodeId b : y) {
            for_each_trail(d, a, b, [&](const Trail& t) {
                if (is_activated(d, t, z)) {
                    found = t;
                    return false;
                }
                return true;
            });
            if (found) return found;
        }
    }
    return found;
}

bool d_separated_by_enumeration(const Dag& d, const NodeSet& x,
                                const NodeSet& y, const NodeSet& z) {
    return !find_activated_trail(d, x, y, z).has_value();
}

std::vector<Trail> trails_xyz(const Dag& d, const NodeSet& x, const NodeSet& y,
                              const NodeSet& z) {
    validate_query(x, y, z);
    std::vector<Trail> out;
    for (NodeId a : x)
        for (NodeId b : y)
            for_each_trail(d, a, b, [&](const Trail& t) {
                if (is_activated(d, t, z)) out.push_back(t);
                return true;
            });
    std::sort(out.begin(), out.end(),
              [](const Trail& l, const Trail& r) { return l.nodes < r.nodes; });
    return out;
}

ActivationWitness closest_descendant(const Dag& d, NodeId c, const NodeSet& z) {
    if (z.contains(c)) return ActivationWitness{c, std::nullopt};

    // dist_to_z[v]: steps of the shortest directed path from v into Z
    // whose interior avoids Z; filled by reverse BFS from Z.
    const int n = d.node_count();
    constexpr int unreached = -1;
    std::vector<int> dist(n, unreached);
    std::deque<NodeId> queue;
    for (NodeId t : z) {
        dist[t] = 0;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId p : d.parents_of(v))
            if (!z.contains(p) && dist[p] == unreached) {
                dist[p] = dist[v] + 1;
                queue.push_back(p);
            }
    }
    if (dist[c] == unreached)
        throw Error(errc::no_descendant_in_z,
                    "node " + std::to_string(c) +
                        " has no self-or-descendant in Z");

    // lexicographically smallest among shortest: greedy by smallest child
    DescendantPath path;
    path.source = c;
    NodeId cur = c;
    int remaining = dist[c];
    while (remaining > 0) {
        for (NodeId w : d.children_of(cur)) {
            if (remaining == 1) {
                if (z.contains(w)) {
                    path.target = w;
                    cur = w;
                    break;
                }
            } else if (!z.contains(w) && dist[w] == remaining - 1) {
                path.interior.push_back(w);
                cur = w;
                break;
            }
        }
        --remaining;
    }
    return ActivationWitness{c, std::move(path)};
}

TrailDecomposition decompose(const Dag& d, const Trail& t, const NodeSet& z) {
    if (!is_activated(d, t, z))
        throw Error(errc::not_activated, "trail is blocked by Z");
    TrailDecomposition out;
    std::vector<int> conv_pos;
    for (int i = 1; i <= t.node_count() - 2; ++i)
        if (connection_at(t, i) == ConnectionKind::converging) {
            conv_pos.push_back(i);
            out.converging.push_back(t.nodes[i]);
        }
    for (NodeId c : out.converging)
        out.witnesses.push_back(closest_descendant(d, c, z));

    int prev = 0;
    for (int p : conv_pos) {
        out.subtrails.push_back(t.slice(prev, p));
        prev = p;
    }
    out.subtrails.push_back(t.slice(prev, t.node_count() - 1));
    return out;
}

std::vector<Arc> chords(const Dag& d, const Trail& t) {
    std::vector<Arc> out;
    const int k = t.node_count();
    for (int i = 0; i + 2 < k; ++i)
        for (int j = i + 2; j < k; ++j) {
            NodeId u = t.nodes[i], v = t.nodes[j];
            if (d.has_arc(u, v))
                out.emplace_back(u, v);
            else if (d.has_arc(v, u))
                out.emplace_back(v, u);
        }
    return out;
}

int common_ancestor(const Trail& t) {
    if (has_converging(t))
        throw Error(errc::has_converging_connection,
                    "trail has a converging connection");
    // converging-free dirs form backward^a forward^b; the switch point is
    // the diverging node (or the source endpoint when a or b is zero)
    int m = 0;
    while (m < static_cast<int>(t.dirs.size()) &&
           t.dirs[m] == Direction::backward)
        ++m;
    return m;
}

namespace {

struct ConstrainedSearch {
    const Dag& d;
    NodeId goal;
    const TrailConstraints& cons;
    int best = INT32_MAX;
    std::vector<Trail> out;
    Trail t;
    NodeSet used;

    ConstrainedSearch(const Dag& dag, NodeId a, NodeId b,
                      const TrailConstraints& c)
        : d(dag), goal(b), cons(c), used(dag.node_count()) {
        t.nodes.push_back(a);
        used.insert(a);
    }

    void run() { extend(); }

    void extend() {
        if (t.node_count() + 1 > best) return;
        NodeId cur = t.nodes.back();
        bool first_step = t.node_count() == 1;
        for (NodeId w : d.neighbors_of(cur)) {
            if (used.contains(w)) continue;
            Direction dir = d.has_arc(cur, w) ? Direction::forward
                                              : Direction::backward;
            if (first_step && cons.first_dir && dir != *cons.first_dir) continue;
            if (!first_step && cons.no_converging &&
                t.dirs.back() == Direction::forward &&
                dir == Direction::backward)
                continue;
            if (w == goal) {
                if (cons.last_dir && dir != *cons.last_dir) continue;
                t.nodes.push_back(w);
                t.dirs.push_back(dir);
                if (t.node_count() < best) {
                    best = t.node_count();
                    out.clear();
                }
                if (t.node_count() == best) out.push_back(t);
                t.nodes.pop_back();
                t.dirs.pop_back();
                continue;
            }
            if (cons.allowed_interior && !cons.allowed_interior->contains(w))
                continue;
            t.nodes.push_back(w);
            t.dirs.push_back(dir);
            used.insert(w);
            extend();
            used.erase(w);
            t.nodes.pop_back();
            t.dirs.pop_back();
        }
    }
};

} // namespace

std::vector<Trail> shortest_constrained_trails(const Dag& d, NodeId a, NodeId b,
                                               const TrailConstraints& cons) {
    if (a == b) throw Error(errc::invalid_query, "trail endpoints coincide");
    ConstrainedSearch search(d, a, b, cons);
    search.run();
    return std::move(search.out);
}

} // namespace dagtrails
