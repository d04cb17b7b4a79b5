#ifndef DAGTRAILS_DAG_HPP
#define DAGTRAILS_DAG_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dagtrails/errors.hpp"

namespace dagtrails {

using Arc = std::pair<NodeId, NodeId>; // first -> second

/// Set of node indices over a fixed universe [0, n), bitset-backed.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(int universe)
        : n_(universe), words_((universe + 63) / 64, 0) {}

    static NodeSet of(int universe, std::initializer_list<NodeId> ids) {
        NodeSet s(universe);
        for (NodeId v : ids) s.insert(v);
        return s;
    }
    static NodeSet full(int universe) {
        NodeSet s(universe);
        for (NodeId v = 0; v < universe; ++v) s.insert(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(NodeId v) const {
        assert(v >= 0 && v < n_);
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }
    void insert(NodeId v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] |= std::uint64_t(1) << (v & 63);
    }
    void erase(NodeId v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
    }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }
    bool intersects(const NodeSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const NodeSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    NodeSet& operator|=(const NodeSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    NodeSet& operator&=(const NodeSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    NodeSet& subtract(const NodeSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    NodeSet complement() const {
        NodeSet s(n_);
        for (NodeId v = 0; v < n_; ++v)
            if (!contains(v)) s.insert(v);
        return s;
    }

    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a.subtract(b); }
    bool operator==(const NodeSet&) const = default;

    std::vector<NodeId> to_vector() const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < n_; ++v)
            if (contains(v)) out.push_back(v);
        return out;
    }

    // ascending iteration over members
    class iterator {
    public:
        iterator(const NodeSet* s, NodeId v) : s_(s), v_(v) { advance(); }
        NodeId operator*() const { return v_; }
        iterator& operator++() { ++v_; advance(); return *this; }
        bool operator!=(const iterator& o) const { return v_ != o.v_; }
    private:
        void advance() {
            while (v_ < s_->n_ && !s_->contains(v_)) ++v_;
        }
        const NodeSet* s_;
        NodeId v_;
    };
    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, n_); }

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Immutable directed acyclic graph over dense node indices, with an
/// optional label table used only at the I/O boundary. All queries are
/// read-only and safe to share across threads.
class Dag {
public:
    /// Validates and builds. Throws Error with one of: cycle_detected
    /// (witness attached), self_loop, duplicate_arc, antiparallel_arcs,
    /// node_out_of_range, duplicate_label.
    static Dag build(int n, std::vector<Arc> arcs,
                     std::vector<std::string> labels = {});

    int node_count() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool has_arc(NodeId u, NodeId v) const { return children_bits_[u].contains(v); }
    bool adjacent(NodeId u, NodeId v) const { return has_arc(u, v) || has_arc(v, u); }

    const std::vector<NodeId>& parents_of(NodeId v) const { return parents_[v]; }
    const std::vector<NodeId>& children_of(NodeId v) const { return children_[v]; }
    /// Skeleton neighbours, ascending.
    const std::vector<NodeId>& neighbors_of(NodeId v) const { return neighbors_[v]; }

    const NodeSet& parents(NodeId v) const { return parents_bits_[v]; }
    const NodeSet& children(NodeId v) const { return children_bits_[v]; }
    /// an(v)/de(v) exclude v itself.
    const NodeSet& ancestors(NodeId v) const { return ancestors_bits_[v]; }
    const NodeSet& descendants(NodeId v) const { return descendants_bits_[v]; }

    /// ({v} ∪ de(v)) ∩ z ≠ ∅
    bool self_or_descendant_in(NodeId v, const NodeSet& z) const {
        return z.contains(v) || descendants_bits_[v].intersects(z);
    }

    /// Kahn's order with smallest-index-first tie-breaking.
    const std::vector<NodeId>& topological_order() const { return topo_; }

    /// Keeps exactly the arcs with both endpoints in `keep`, renumbered
    /// densely in ascending old-index order. mapping[old] = new or -1.
    std::pair<Dag, std::vector<NodeId>> induced_subgraph(const NodeSet& keep) const;

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(NodeId v) const { return labels_[v]; }
    /// Label if present, otherwise the index rendered as decimal.
    std::string display(NodeId v) const {
        return has_labels() ? labels_[v] : std::to_string(v);
    }
    /// Resolves a label (or, for unlabeled graphs, a decimal index).
    NodeId resolve(const std::string& name) const;
    std::optional<NodeId> find_label(const std::string& name) const;

private:
    Dag() = default;

    int n_ = 0;
    std::vector<Arc> arcs_; // sorted
    std::vector<std::vector<NodeId>> parents_, children_, neighbors_;
    std::vector<NodeSet> parents_bits_, children_bits_;
    std::vector<NodeSet> ancestors_bits_, descendants_bits_;
    std::vector<NodeId> topo_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_index_;
};

} // namespace dagtrails

#endif
