#ifndef DAGTRAILS_TRAILS_HPP
#define DAGTRAILS_TRAILS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dagtrails/dag.hpp"

namespace dagtrails {

/// Direction of one trail step relative to the traversal order:
/// forward means nodes[i] -> nodes[i+1] is an arc, backward the reverse.
enum class Direction : std::uint8_t { forward, backward };

/// Simple trail in the skeleton: pairwise-distinct nodes plus the true
/// orientation of each underlying arc. Equality is direction-sensitive.
struct Trail {
    std::vector<NodeId> nodes;    // length >= 2
    std::vector<Direction> dirs;  // length = nodes.size() - 1

    int node_count() const { return static_cast<int>(nodes.size()); }
    NodeId front() const { return nodes.front(); }
    NodeId back() const { return nodes.back(); }

    Trail reversed() const;
    /// Inclusive node-index slice; keeps the matching step directions.
    Trail slice(int first, int last) const;

    bool operator==(const Trail&) const = default;
};

enum class ConnectionKind { converging, serial, diverging };

/// Connection at interior position i (1 <= i <= node_count()-2).
ConnectionKind connection_at(const Trail& t, int i);
bool has_converging(const Trail& t);

namespace detail {
template <typename Visit>
bool trail_dfs(const Dag& d, NodeId goal, Trail& t, NodeSet& used, Visit& visit) {
    NodeId cur = t.nodes.back();
    for (NodeId w : d.neighbors_of(cur)) {
        if (used.contains(w)) continue;
        t.nodes.push_back(w);
        t.dirs.push_back(d.has_arc(cur, w) ? Direction::forward
                                           : Direction::backward);
        bool keep_going = true;
        if (w == goal) {
            keep_going = visit(t);
        } else {
            used.insert(w);
            keep_going = trail_dfs(d, goal, t, used, visit);
            used.erase(w);
        }
        t.nodes.pop_back();
        t.dirs.pop_back();
        if (!keep_going) return false;
    }
    return true;
}
} // namespace detail

/// Visits every simple trail from x to y in lexicographic order of the
/// node sequence. The visitor returns false to stop early; the function
/// returns false iff it was stopped.
template <typename Visit>
bool for_each_trail(const Dag& d, NodeId x, NodeId y, Visit visit) {
    if (x == y) throw Error(errc::invalid_query, "trail endpoints coincide");
    Trail t;
    t.nodes.push_back(x);
    NodeSet used(d.node_count());
    used.insert(x);
    return detail::trail_dfs(d, y, t, used, visit);
}

std::vector<Trail> enumerate_trails(const Dag& d, NodeId x, NodeId y);

/// Def. 2.2 read trail-wise: true iff every converging interior node has
/// itself or a descendant in z and every other interior node avoids z.
/// Precondition: the endpoints are not in z.
bool is_activated(const Dag& d, const Trail& t, const NodeSet& z);

/// d-separation via (node, travel-direction) reachability. The primary
/// implementation for queries; the enumeration route below is its oracle.
bool d_separated(const Dag& d, const NodeSet& x, const NodeSet& y,
                 const NodeSet& z);
bool d_separated_by_enumeration(const Dag& d, const NodeSet& x,
                                const NodeSet& y, const NodeSet& z);

/// First activated trail from x to y in deterministic order, if any.
std::optional<Trail> find_activated_trail(const Dag& d, const NodeSet& x,
                                          const NodeSet& y, const NodeSet& z);

/// TRAILS(X,Y|Z): every activated simple trail from X to Y, sorted
/// lexicographically by node sequence.
std::vector<Trail> trails_xyz(const Dag& d, const NodeSet& x, const NodeSet& y,
                              const NodeSet& z);

/// Shortest directed path from a converging node into Z with interior
/// outside Z. `interior` holds the d-nodes only.
struct DescendantPath {
    NodeId source = -1;
    std::vector<NodeId> interior;
    NodeId target = -1;
    int length() const { return static_cast<int>(interior.size()); }
};

/// Witness that a converging node is opened by Z: either the node itself
/// lies in Z or a minimal descendant path reaches Z.
struct ActivationWitness {
    NodeId converging = -1;
    std::optional<DescendantPath> path; // nullopt <=> converging in Z
    bool in_z() const { return !path.has_value(); }
    int descent_length() const { return path ? path->length() : 0; }
};

/// Minimal descendant path, ties broken by lexicographically smallest
/// node sequence. Throws no_descendant_in_z when none exists.
ActivationWitness closest_descendant(const Dag& d, NodeId c, const NodeSet& z);

/// Converging nodes in trail order, one activation witness each, and the
/// C+1 subtrails (two-node subtrails allowed). Concatenating the
/// subtrails through the converging nodes reproduces the trail.
struct TrailDecomposition {
    std::vector<NodeId> converging;
    std::vector<ActivationWitness> witnesses;
    std::vector<Trail> subtrails;
    int converging_count() const { return static_cast<int>(converging.size()); }
};

TrailDecomposition decompose(const Dag& d, const Trail& t, const NodeSet& z);

/// Arcs joining non-consecutive trail nodes, ordered by position pair.
std::vector<Arc> chords(const Dag& d, const Trail& t);

/// Index of the unique diverging node of a converging-free trail, or the
/// endpoint all arcs point away from. Throws has_converging_connection.
int common_ancestor(const Trail& t);

struct TrailConstraints {
    bool no_converging = false;
    std::optional<NodeSet> allowed_interior; // interior nodes restricted to this set
    std::optional<Direction> first_dir;
    std::optional<Direction> last_dir;
};

/// All minimum-node-count simple trails from a to b meeting the
/// constraints, in lexicographic order; empty when none exists.
std::vector<Trail> shortest_constrained_trails(const Dag& d, NodeId a, NodeId b,
                                               const TrailConstraints& cons);

} // namespace dagtrails

#endif
