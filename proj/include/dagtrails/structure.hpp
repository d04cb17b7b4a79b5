#ifndef DAGTRAILS_STRUCTURE_HPP
#define DAGTRAILS_STRUCTURE_HPP

#include "dagtrails/trails.hpp"

namespace dagtrails {

/// Witness of Def. 2.1: apex v with distinct parents w, z joined by a
/// converging-free connector with at least one interior node, such that
/// the closed trail v <- w ... z -> v is chordless.
struct ActiveCycle {
    NodeId apex = -1;
    NodeId parent_left = -1;   // w, start of the connector
    NodeId parent_right = -1;  // z, end of the connector
    Trail connector;           // from w to z, apex excluded

    /// The closed trail as a node circle apex, w, ..., z (apex implicit
    /// at the end).
    std::vector<NodeId> cycle_nodes() const;
};

/// Brute-force scan over apexes, parent pairs and connectors, in
/// deterministic (apex, w, z, connector) order. Parent pairs are taken
/// with w < z so each cycle is reported once per connector.
std::vector<ActiveCycle> find_active_cycles(const Dag& d, bool stop_at_first);
bool has_active_cycle(const Dag& d);

/// Local-relationship test for K: every converging-free trail between
/// two K-members whose interior avoids K forces adjacency. On failure
/// carries the first violating pair plus a shortest witnessing trail.
struct LocalRelResult {
    bool local = true;
    NodeId v1 = -1, v2 = -1;
    std::optional<Trail> witness;
    explicit operator bool() const { return local; }
};

LocalRelResult has_local_relationships(const Dag& d, const NodeSet& k);

struct Partition {
    std::vector<NodeSet> blocks;
};

/// Connectivity classes of the induced skeleton on K. Throws not_local
/// when K lacks local relationships.
Partition decompose_local(const Dag& d, const NodeSet& k);

/// True iff every pair of neighbours of v forming a serial or diverging
/// connection through v is adjacent; equals
/// has_local_relationships(d, V \ {v}).
bool local_after_removal(const Dag& d, NodeId v);

enum class PairVerdict { connected_in_k, d_separated_by_empty };

/// Corollary dichotomy for v1, v2 in a K with local relationships:
/// connected within the induced skeleton on K, otherwise d-separated by
/// the empty set (asserted).
PairVerdict connected_or_dsep(const Dag& d, const NodeSet& k, NodeId v1,
                              NodeId v2);

} // namespace dagtrails

#endif
