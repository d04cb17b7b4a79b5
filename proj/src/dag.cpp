#include "dagtrails/dag.hpp"

#include <algorithm>
#include <set>

namespace dagtrails {

const char* errc_name(errc c) {
    switch (c) {
        case errc::cycle_detected: return "CycleDetected";
        case errc::self_loop: return "SelfLoop";
        case errc::duplicate_arc: return "DuplicateArc";
        case errc::antiparallel_arcs: return "AntiparallelArcs";
        case errc::node_out_of_range: return "NodeOutOfRange";
        case errc::duplicate_label: return "DuplicateLabel";
        case errc::invalid_query: return "InvalidQuery";
        case errc::not_activated: return "NotActivated";
        case errc::no_descendant_in_z: return "NoDescendantInZ";
        case errc::has_converging_connection: return "HasConvergingConnection";
        case errc::not_local: return "NotLocal";
        case errc::parse_error: return "ParseError";
        case errc::unknown_check: return "UnknownCheckName";
        case errc::unknown_label: return "UnknownLabel";
    }
    return "Error";
}

namespace {

// Kahn with smallest-index-first tie-breaking. Returns false when a cycle
// remains; `order` then holds only the acyclic prefix.
bool kahn_order(int n, const std::vector<std::vector<NodeId>>& children,
                const std::vector<std::vector<NodeId>>& parents,
                std::vector<NodeId>& order) {
    std::vector<int> indeg(n);
    for (NodeId v = 0; v < n; ++v) indeg[v] = static_cast<int>(parents[v].size());
    std::set<NodeId> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.insert(v);
    order.clear();
    order.reserve(n);
    while (!ready.empty()) {
        NodeId v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (NodeId c : children[v])
            if (--indeg[c] == 0) ready.insert(c);
    }
    return static_cast<int>(order.size()) == n;
}

// Walks parent pointers inside the unsorted remainder until a node repeats.
std::vector<NodeId> extract_cycle(int n,
                                  const std::vector<std::vector<NodeId>>& parents,
                                  const std::vector<NodeId>& acyclic_prefix) {
    std::vector<char> in_rest(n, 1);
    for (NodeId v : acyclic_prefix) in_rest[v] = 0;
    NodeId start = 0;
    while (!in_rest[start]) ++start;

    std::vector<NodeId> path;
    std::vector<int> pos(n, -1);
    NodeId cur = start;
    while (pos[cur] < 0) {
        pos[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        NodeId next = -1;
        for (NodeId p : parents[cur])
            if (in_rest[p]) { next = p; break; }
        cur = next; // every remainder node has a remainder parent
    }
    std::vector<NodeId> cycle(path.begin() + pos[cur], path.end());
    std::reverse(cycle.begin(), cycle.end()); // arc direction order
    return cycle;
}

} // namespace

Dag Dag::build(int n, std::vector<Arc> arcs, std::vector<std::string> labels) {
    if (n < 0) throw Error(errc::node_out_of_range, "negative node count");

    std::sort(arcs.begin(), arcs.end());
    std::set<Arc> seen;
    for (const Arc& a : arcs) {
        if (a.first < 0 || a.first >= n || a.second < 0 || a.second >= n)
            throw Error(errc::node_out_of_range,
                        "arc (" + std::to_string(a.first) + ", " +
                            std::to_string(a.second) + ") outside [0, " +
                            std::to_string(n) + ")");
        if (a.first == a.second)
            throw Error(errc::self_loop,
                        "self-loop at node " + std::to_string(a.first));
        if (!seen.insert(a).second)
            throw Error(errc::duplicate_arc,
                        "duplicate arc (" + std::to_string(a.first) + ", " +
                            std::to_string(a.second) + ")");
    }
    for (const Arc& a : arcs)
        if (seen.count({a.second, a.first}))
            throw Error(errc::antiparallel_arcs,
                        "antiparallel arcs between " + std::to_string(a.first) +
                            " and " + std::to_string(a.second));

    Dag d;
    d.n_ = n;
    d.arcs_ = std::move(arcs);
    d.parents_.resize(n);
    d.children_.resize(n);
    d.neighbors_.resize(n);
    d.parents_bits_.assign(n, NodeSet(n));
    d.children_bits_.assign(n, NodeSet(n));
    for (const Arc& a : d.arcs_) {
        d.children_[a.first].push_back(a.second);
        d.parents_[a.second].push_back(a.first);
        d.children_bits_[a.first].insert(a.second);
        d.parents_bits_[a.second].insert(a.first);
    }
    for (NodeId v = 0; v < n; ++v) {
        std::sort(d.parents_[v].begin(), d.parents_[v].end());
        std::sort(d.children_[v].begin(), d.children_[v].end());
        d.neighbors_[v] = d.parents_[v];
        d.neighbors_[v].insert(d.neighbors_[v].end(), d.children_[v].begin(),
                               d.children_[v].end());
        std::sort(d.neighbors_[v].begin(), d.neighbors_[v].end());
    }

    if (!kahn_order(n, d.children_, d.parents_, d.topo_)) {
        std::vector<NodeId> cycle = extract_cycle(n, d.parents_, d.topo_);
        std::string msg = "cycle:";
        for (NodeId v : cycle) msg += " " + std::to_string(v);
        throw Error(errc::cycle_detected, msg, std::move(cycle));
    }

    // descendants by reverse topological sweep, ancestors transposed
    d.descendants_bits_.assign(n, NodeSet(n));
    for (auto it = d.topo_.rbegin(); it != d.topo_.rend(); ++it) {
        NodeId v = *it;
        for (NodeId c : d.children_[v]) {
            d.descendants_bits_[v].insert(c);
            d.descendants_bits_[v] |= d.descendants_bits_[c];
        }
    }
    d.ancestors_bits_.assign(n, NodeSet(n));
    for (NodeId v = 0; v < n; ++v)
        for (NodeId u : d.descendants_bits_[v])
            d.ancestors_bits_[u].insert(v);

    if (!labels.empty()) {
        if (static_cast<int>(labels.size()) != n)
            throw Error(errc::invalid_query,
                        "label count does not match node count");
        for (NodeId v = 0; v < n; ++v) {
            if (!d.label_index_.emplace(labels[v], v).second)
                throw Error(errc::duplicate_label,
                            "duplicate label \"" + labels[v] + "\"");
        }
        d.labels_ = std::move(labels);
    }
    return d;
}

std::pair<Dag, std::vector<NodeId>> Dag::induced_subgraph(const NodeSet& keep) const {
    std::vector<NodeId> mapping(n_, -1);
    std::vector<std::string> sub_labels;
    int m = 0;
    for (NodeId v = 0; v < n_; ++v)
        if (keep.contains(v)) {
            mapping[v] = m++;
            if (has_labels()) sub_labels.push_back(labels_[v]);
        }
    std::vector<Arc> sub_arcs;
    for (const Arc& a : arcs_)
        if (mapping[a.first] >= 0 && mapping[a.second] >= 0)
            sub_arcs.emplace_back(mapping[a.first], mapping[a.second]);
    return {Dag::build(m, std::move(sub_arcs), std::move(sub_labels)),
            std::move(mapping)};
}

std::optional<NodeId> Dag::find_label(const std::string& name) const {
    auto it = label_index_.find(name);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

NodeId Dag::resolve(const std::string& name) const {
    if (has_labels()) {
        if (auto v = find_label(name)) return *v;
        throw Error(errc::unknown_label, "unknown node \"" + name + "\"");
    }
    try {
        std::size_t pos = 0;
        int v = std::stoi(name, &pos);
        if (pos == name.size() && v >= 0 && v < n_) return v;
    } catch (const std::exception&) {
    }
    throw Error(errc::unknown_label, "unknown node \"" + name + "\"");
}

} // namespace dagtrails
