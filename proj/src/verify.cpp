#include "dagtrails/verify.hpp"

#include <algorithm>
#include <sstream>

#include "dagtrails/graph_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dagtrails {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

bool is_acyclic(int n, const std::vector<Arc>& arcs) {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<NodeId>> children(n);
    for (const Arc& a : arcs) {
        children[a.first].push_back(a.second);
        ++indeg[a.second];
    }
    std::vector<NodeId> stack;
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int done = 0;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        ++done;
        for (NodeId c : children[v])
            if (--indeg[c] == 0) stack.push_back(c);
    }
    return done == n;
}

} // namespace

GraphGenerator::GraphGenerator(GenSpec spec)
    : spec_(spec), rng_state_(spec.seed) {
    if (spec_.n < 1)
        throw Error(errc::invalid_query, "generator needs n >= 1");
    if (spec_.mode == GenSpec::Mode::random &&
        (spec_.p < 0.0 || spec_.p > 1.0))
        throw Error(errc::invalid_query, "arc probability outside [0, 1]");
    trits_.assign(spec_.n * (spec_.n - 1) / 2, 0);
}

std::optional<Dag> GraphGenerator::next_candidate() {
    const int n = spec_.n;
    if (spec_.mode == GenSpec::Mode::exhaustive) {
        for (;;) {
            if (exhausted_) return std::nullopt;
            if (!first_) {
                // odometer over {none, forward, backward} per unordered pair
                int i = static_cast<int>(trits_.size()) - 1;
                while (i >= 0 && trits_[i] == 2) trits_[i--] = 0;
                if (i < 0) {
                    exhausted_ = true;
                    return std::nullopt;
                }
                ++trits_[i];
            }
            first_ = false;
            std::vector<Arc> arcs;
            int idx = 0;
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v, ++idx) {
                    if (trits_[idx] == 1) arcs.emplace_back(u, v);
                    if (trits_[idx] == 2) arcs.emplace_back(v, u);
                }
            if (!is_acyclic(n, arcs)) continue;
            return Dag::build(n, std::move(arcs));
        }
    }

    if (produced_ >= spec_.count) return std::nullopt;
    // acyclic by construction: arcs only point down a random order
    std::vector<NodeId> perm(n);
    for (NodeId v = 0; v < n; ++v) perm[v] = v;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(splitmix64(rng_state_) % (i + 1));
        std::swap(perm[i], perm[j]);
    }
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double u = (splitmix64(rng_state_) >> 11) * 0x1.0p-53;
            if (u < spec_.p) arcs.emplace_back(perm[i], perm[j]);
        }
    return Dag::build(n, std::move(arcs));
}

std::optional<Dag> GraphGenerator::next() {
    for (;;) {
        std::optional<Dag> d = next_candidate();
        if (!d) return std::nullopt;
        if (spec_.mode == GenSpec::Mode::random) ++produced_;
        if (spec_.require_no_active_cycle && has_active_cycle(*d)) continue;
        ++emitted_;
        return d;
    }
}

void CheckReport::merge(const CheckReport& other) {
    if (check.empty()) check = other.check;
    graphs += other.graphs;
    skipped += other.skipped;
    instances += other.instances;
    failures.insert(failures.end(), other.failures.begin(),
                    other.failures.end());
}

namespace {

void add_failure(CheckReport& r, const Dag& d, std::uint64_t serial,
                 std::string query, std::string clause) {
    r.failures.push_back(
        {serial, to_json(d), std::move(query), std::move(clause)});
}

// Every simple trail between one node pair with per-trail facts shared by
// several checks.
struct PairTrails {
    std::vector<Trail> trails;
    std::vector<char> empty_activated;
    std::vector<NodeSet> interior;
};

PairTrails collect_pair_trails(const Dag& d, NodeId a, NodeId b) {
    PairTrails out;
    NodeSet empty(d.node_count());
    for_each_trail(d, a, b, [&](const Trail& t) {
        out.trails.push_back(t);
        out.empty_activated.push_back(is_activated(d, t, empty));
        NodeSet in(d.node_count());
        for (int i = 1; i <= t.node_count() - 2; ++i) in.insert(t.nodes[i]);
        out.interior.push_back(std::move(in));
        return true;
    });
    return out;
}

std::string describe_query(const Dag& d, NodeId x, NodeId y, const NodeSet& z) {
    std::ostringstream out;
    out << "x=" << d.display(x) << " y=" << d.display(y) << " z={";
    bool first = true;
    for (NodeId v : z) {
        if (!first) out << ",";
        out << d.display(v);
        first = false;
    }
    out << "}";
    return out.str();
}

// Ordered singleton pairs; Z runs over all subsets of the remainder for
// n <= 5 and over 16 salt-seeded samples otherwise.
template <typename F>
void for_each_query(const Dag& d, std::uint64_t serial, F f) {
    const int n = d.node_count();
    for (NodeId x = 0; x < n; ++x)
        for (NodeId y = 0; y < n; ++y) {
            if (x == y) continue;
            std::vector<NodeId> others;
            for (NodeId v = 0; v < n; ++v)
                if (v != x && v != y) others.push_back(v);
            if (n <= 5) {
                for (std::uint32_t mask = 0; mask < (1u << others.size());
                     ++mask) {
                    NodeSet z(n);
                    for (std::size_t i = 0; i < others.size(); ++i)
                        if ((mask >> i) & 1) z.insert(others[i]);
                    f(x, y, z);
                }
            } else {
                std::uint64_t state =
                    serial * 0x100000001B3ull + (std::uint64_t(x) << 32) + y;
                for (int s = 0; s < 16; ++s) {
                    std::uint64_t bits = splitmix64(state);
                    NodeSet z(n);
                    for (std::size_t i = 0; i < others.size(); ++i)
                        if ((bits >> i) & 1) z.insert(others[i]);
                    f(x, y, z);
                }
            }
        }
}

} // namespace

CheckReport check_activation_lemma(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "activation-lemma";
    r.graphs = 1;
    NodeSet empty(d.node_count());
    for (NodeId a = 0; a < d.node_count(); ++a)
        for (NodeId b = a + 1; b < d.node_count(); ++b)
            for_each_trail(d, a, b, [&](const Trail& t) {
                ++r.instances;
                if (is_activated(d, t, empty) == has_converging(t))
                    add_failure(r, d, serial, render_trail(d, t),
                                "activation by the empty set must equal "
                                "converging-freeness");
                return true;
            });
    return r;
}

CheckReport check_no_chords(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "no-chords";
    if (has_active_cycle(d)) {
        r.skipped = 1;
        return r;
    }
    r.graphs = 1;
    for (NodeId a = 0; a < d.node_count(); ++a)
        for (NodeId b = a + 1; b < d.node_count(); ++b) {
            PairTrails pt = collect_pair_trails(d, a, b);
            int best = INT32_MAX;
            for (std::size_t i = 0; i < pt.trails.size(); ++i)
                if (pt.empty_activated[i])
                    best = std::min(best, pt.trails[i].node_count());
            if (best == INT32_MAX) continue;
            ++r.instances;
            for (std::size_t i = 0; i < pt.trails.size(); ++i)
                if (pt.empty_activated[i] &&
                    pt.trails[i].node_count() == best &&
                    !chords(d, pt.trails[i]).empty())
                    add_failure(r, d, serial, render_trail(d, pt.trails[i]),
                                "shortest trail activated by the empty set "
                                "has a chord");
        }
    return r;
}

CheckReport check_common_children(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "common-children";
    if (has_active_cycle(d)) {
        r.skipped = 1;
        return r;
    }
    r.graphs = 1;
    const int n = d.node_count();

    std::vector<NodeSet> ks;
    ks.push_back(NodeSet::full(n));
    for (NodeId v = 0; v < n; ++v) {
        NodeSet k = NodeSet::full(n);
        k.erase(v);
        ks.push_back(k);
    }
    std::uint64_t state = serial ^ 0xA5A5A5A5A5A5A5A5ull;
    for (int s = 0; s < 3; ++s) {
        std::uint64_t bits = splitmix64(state);
        NodeSet k(n);
        for (NodeId v = 0; v < n; ++v)
            if ((bits >> v) & 1) k.insert(v);
        ks.push_back(k);
    }

    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) {
            PairTrails pt = collect_pair_trails(d, a, b);
            NodeSet common = d.children(a) & d.children(b);
            for (const NodeSet& k : ks) {
                int best = INT32_MAX;
                for (std::size_t i = 0; i < pt.trails.size(); ++i)
                    if (pt.empty_activated[i] && pt.interior[i].is_subset_of(k))
                        best = std::min(best, pt.trails[i].node_count());
                if (best == INT32_MAX) continue;
                ++r.instances;
                for (std::size_t i = 0; i < pt.trails.size(); ++i) {
                    if (!pt.empty_activated[i] ||
                        !pt.interior[i].is_subset_of(k) ||
                        pt.trails[i].node_count() != best)
                        continue;
                    const Trail& t = pt.trails[i];
                    for (int pos = 1; pos <= t.node_count() - 2; ++pos) {
                        NodeId xi = t.nodes[pos];
                        if (common.contains(xi))
                            add_failure(r, d, serial, render_trail(d, t),
                                        "(ii) trail node is a common child "
                                        "of the endpoints");
                        if (!common.is_subset_of(d.children(xi)))
                            add_failure(r, d, serial, render_trail(d, t),
                                        "(i) common child of the endpoints "
                                        "is not a child of every trail node");
                    }
                }
            }
        }
    return r;
}

namespace {

bool chain_after_first(const Trail& t) {
    if (t.dirs.front() != Direction::backward) return false;
    for (std::size_t i = 1; i < t.dirs.size(); ++i)
        if (t.dirs[i] != Direction::forward) return false;
    return true;
}

bool chain_before_last(const Trail& t) {
    if (t.dirs.back() != Direction::forward) return false;
    for (std::size_t i = 0; i + 1 < t.dirs.size(); ++i)
        if (t.dirs[i] != Direction::backward) return false;
    return true;
}

// Fan pattern of the first subgraph theorem: a <- t1 -> t2 -> ... -> tn -> b
// with a -> b and a -> tj for j in 2..n.
bool matches_fan_from_left(const Dag& d, const Trail& t) {
    NodeId a = t.front(), b = t.back();
    if (!d.has_arc(a, b) || !chain_after_first(t)) return false;
    for (int i = 2; i <= t.node_count() - 2; ++i)
        if (!d.has_arc(a, t.nodes[i])) return false;
    return true;
}

// Mirror image: a <- t1 <- ... <- tn -> b with b -> a and b -> tj, j < n.
bool matches_fan_from_right(const Dag& d, const Trail& t) {
    NodeId a = t.front(), b = t.back();
    if (!d.has_arc(b, a) || !chain_before_last(t)) return false;
    for (int i = 1; i <= t.node_count() - 3; ++i)
        if (!d.has_arc(b, t.nodes[i])) return false;
    return true;
}

} // namespace

CheckReport check_subgraph_theorems(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "subgraph-theorems";
    if (has_active_cycle(d)) {
        r.skipped = 1;
        return r;
    }
    r.graphs = 1;

    // first theorem: v1 -> v2 plus a shortest empty-activated trail
    // starting against an arc forces the left fan
    for (const Arc& arc : d.arcs()) {
        NodeId v1 = arc.first, v2 = arc.second;
        PairTrails pt = collect_pair_trails(d, v1, v2);
        for (bool constrain_last : {false, true}) {
            int best = INT32_MAX;
            for (std::size_t i = 0; i < pt.trails.size(); ++i) {
                const Trail& t = pt.trails[i];
                if (!pt.empty_activated[i]) continue;
                if (t.dirs.front() != Direction::backward) continue;
                if (constrain_last && t.dirs.back() != Direction::forward)
                    continue;
                best = std::min(best, t.node_count());
            }
            if (best == INT32_MAX) continue;
            ++r.instances;
            for (std::size_t i = 0; i < pt.trails.size(); ++i) {
                const Trail& t = pt.trails[i];
                if (!pt.empty_activated[i] || t.node_count() != best) continue;
                if (t.dirs.front() != Direction::backward) continue;
                if (constrain_last && t.dirs.back() != Direction::forward)
                    continue;
                if (!matches_fan_from_left(d, t))
                    add_failure(r, d, serial,
                                "arc " + d.display(v1) + "->" + d.display(v2) +
                                    ", trail " + render_trail(d, t),
                                "first subgraph theorem: chain or fan arc "
                                "missing");
            }
        }
    }

    // second theorem: v1, v2 parents of v3, trail avoiding pa(v3) and
    // ending into v2 forces the right fan
    for (NodeId v3 = 0; v3 < d.node_count(); ++v3) {
        const auto& parents = d.parents_of(v3);
        for (NodeId v1 : parents)
            for (NodeId v2 : parents) {
                if (v1 == v2) continue;
                PairTrails pt = collect_pair_trails(d, v1, v2);
                int best = INT32_MAX;
                auto qualifies = [&](std::size_t i) {
                    const Trail& t = pt.trails[i];
                    return pt.empty_activated[i] &&
                           t.dirs.back() == Direction::forward &&
                           !pt.interior[i].intersects(d.parents(v3));
                };
                for (std::size_t i = 0; i < pt.trails.size(); ++i)
                    if (qualifies(i))
                        best = std::min(best, pt.trails[i].node_count());
                if (best == INT32_MAX || best == 2) continue; // n >= 1 needed
                ++r.instances;
                for (std::size_t i = 0; i < pt.trails.size(); ++i) {
                    if (!qualifies(i) || pt.trails[i].node_count() != best)
                        continue;
                    if (!matches_fan_from_right(d, pt.trails[i]))
                        add_failure(r, d, serial,
                                    "v3=" + d.display(v3) + ", trail " +
                                        render_trail(d, pt.trails[i]),
                                    "second subgraph theorem: chain or fan "
                                    "arc missing");
                }
            }
    }
    return r;
}

CheckReport check_minimal_trail_theorem(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "minimal-trails";
    if (has_active_cycle(d)) {
        r.skipped = 1;
        return r;
    }
    r.graphs = 1;
    const int n = d.node_count();
    for_each_query(d, serial, [&](NodeId x, NodeId y, const NodeSet& z) {
        MinimalTrails mt = minimal_trails(d, NodeSet::of(n, {x}),
                                          NodeSet::of(n, {y}), z);
        if (mt.empty()) return;
        ++r.instances;
        std::string query = describe_query(d, x, y, z);
        for (const Trail& t : mt.trails) {
            TrailDecomposition dec = decompose(d, t, z);
            const int c_count = dec.converging_count();

            // (i) subtrail interiors and descendant-path interiors avoid
            // X, Y and Z
            for (const Trail& st : dec.subtrails)
                for (int i = 1; i <= st.node_count() - 2; ++i) {
                    NodeId u = st.nodes[i];
                    if (u == x || u == y || z.contains(u))
                        add_failure(r, d, serial, query,
                                    "(i) subtrail node inside X, Y or Z");
                }
            for (const ActivationWitness& w : dec.witnesses)
                if (w.path)
                    for (NodeId u : w.path->interior)
                        if (u == x || u == y || z.contains(u))
                            add_failure(r, d, serial, query,
                                        "(i) descendant-path node inside "
                                        "X, Y or Z");

            // (ii) chordless descendant paths and trimmed subtrails
            for (const ActivationWitness& w : dec.witnesses) {
                if (!w.path) continue;
                Trail dp;
                dp.nodes.push_back(w.path->source);
                dp.nodes.insert(dp.nodes.end(), w.path->interior.begin(),
                                w.path->interior.end());
                dp.nodes.push_back(w.path->target);
                dp.dirs.assign(dp.nodes.size() - 1, Direction::forward);
                if (dp.node_count() >= 3 && !chords(d, dp).empty())
                    add_failure(r, d, serial, query,
                                "(ii) descendant path has a chord");
            }
            for (int si = 0; si < static_cast<int>(dec.subtrails.size());
                 ++si) {
                const Trail& st = dec.subtrails[si];
                int lo = 0, hi = st.node_count() - 1;
                if (si > 0) ++lo;                  // drop leading c_i
                if (si < c_count) --hi;            // drop trailing c_{i+1}
                if (hi - lo >= 2) {
                    Trail trimmed = st.slice(lo, hi);
                    if (!chords(d, trimmed).empty())
                        add_failure(r, d, serial, query,
                                    "(ii) subtrail has a chord");
                }
            }

            // (iii)/(iv) consecutive converging nodes and Z membership
            for (int i = 0; i + 1 < c_count; ++i) {
                NodeId ci = dec.converging[i], cj = dec.converging[i + 1];
                if (d.has_arc(ci, cj) && z.contains(cj) && !z.contains(ci))
                    add_failure(r, d, serial, query,
                                "(iii) c_i -> c_{i+1} in Z forces c_i in Z");
                if (d.has_arc(cj, ci) && z.contains(ci) && !z.contains(cj))
                    add_failure(r, d, serial, query,
                                "(iv) c_i <- c_{i+1} with c_i in Z forces "
                                "c_{i+1} in Z");
            }

            // (v) subtrails are shortest among constrained trails. A
            // replacement must keep the whole trail simple, so the
            // competitor's interior may reuse the subtrail's own interior
            // but no other trail node.
            NodeSet trail_nodes(d.node_count());
            for (NodeId v : t.nodes) trail_nodes.insert(v);
            auto allowed_for = [&](const Trail& st) {
                NodeSet blocked = trail_nodes;
                for (int p = 1; p <= st.node_count() - 2; ++p)
                    blocked.erase(st.nodes[p]);
                NodeSet allowed = z.complement();
                allowed.subtract(blocked);
                return allowed;
            };
            for (int i = 1; i < c_count; ++i) {
                TrailConstraints cons;
                cons.no_converging = true;
                cons.allowed_interior = allowed_for(dec.subtrails[i]);
                cons.first_dir = Direction::backward;
                cons.last_dir = Direction::forward;
                auto ms = shortest_constrained_trails(
                    d, dec.converging[i - 1], dec.converging[i], cons);
                if (ms.empty() ||
                    ms.front().node_count() != dec.subtrails[i].node_count())
                    add_failure(r, d, serial, query,
                                "(v) middle subtrail is not a shortest "
                                "constrained trail");
            }
            if (c_count > 0) {
                TrailConstraints cons;
                cons.no_converging = true;
                cons.allowed_interior = allowed_for(dec.subtrails[c_count]);
                cons.first_dir = Direction::backward;
                auto ms = shortest_constrained_trails(
                    d, dec.converging[c_count - 1], y, cons);
                if (ms.empty() ||
                    ms.front().node_count() !=
                        dec.subtrails[c_count].node_count())
                    add_failure(r, d, serial, query,
                                "(v) final subtrail is not a shortest "
                                "constrained trail");
            }
        }
    });
    return r;
}

CheckReport check_local_rel_theorem(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "local-minimal-trails";
    if (has_active_cycle(d)) {
        r.skipped = 1;
        return r;
    }
    r.graphs = 1;
    const int n = d.node_count();
    for_each_query(d, serial, [&](NodeId x, NodeId y, const NodeSet& z) {
        NodeSet yz = z;
        yz.insert(y);
        if (!has_local_relationships(d, yz)) return;
        MinimalTrails mt = minimal_trails(d, NodeSet::of(n, {x}),
                                          NodeSet::of(n, {y}), z);
        if (mt.empty()) return;
        ++r.instances;
        std::string query = describe_query(d, x, y, z);
        for (const Trail& t : mt.trails) {
            TrailDecomposition dec = decompose(d, t, z);
            const int c_count = dec.converging_count();
            if (c_count == 0) continue;
            const auto& cs = dec.converging;

            if (!z.contains(cs[c_count - 1]))
                add_failure(r, d, serial, query,
                            "(i) final converging node outside Z");
            for (int i = 0; i + 1 < c_count; ++i)
                if (!z.contains(cs[i]) && !z.contains(cs[i + 1]))
                    add_failure(r, d, serial, query,
                                "(ii) neither c_i nor c_{i+1} in Z");
            for (int i = 0; i + 1 < c_count; ++i)
                if (!d.adjacent(cs[i], cs[i + 1]))
                    add_failure(r, d, serial, query,
                                "(iii) consecutive converging nodes not "
                                "adjacent");
            if (!d.adjacent(cs[c_count - 1], y))
                add_failure(r, d, serial, query,
                            "(iii) final converging node not adjacent to y");

            // (iv): each inter-converging subtrail (and the last one to y)
            // embeds one of the two fan subgraphs
            for (int i = 1; i <= c_count; ++i) {
                const Trail& st = dec.subtrails[i];
                if (st.node_count() < 3) continue;
                if (!matches_fan_from_left(d, st) &&
                    !matches_fan_from_right(d, st))
                    add_failure(r, d, serial, query,
                                "(iv) subtrail matches neither fan subgraph");
            }

            // corollary
            bool all_forward = true, all_backward = true;
            for (int i = 0; i + 1 < c_count; ++i) {
                if (!d.has_arc(cs[i], cs[i + 1])) all_forward = false;
                if (!d.has_arc(cs[i + 1], cs[i])) all_backward = false;
            }
            if (all_forward)
                for (int i = 0; i < c_count; ++i)
                    if (!z.contains(cs[i]))
                        add_failure(r, d, serial, query,
                                    "corollary (i) forward converging chain "
                                    "must lie in Z");
            if (all_backward && z.contains(cs[0]))
                for (int i = 0; i < c_count; ++i)
                    if (!z.contains(cs[i]))
                        add_failure(r, d, serial, query,
                                    "corollary (ii) backward converging "
                                    "chain from c_1 in Z must lie in Z");
            for (int i = 1; i + 1 < c_count; ++i) {
                bool converging_among_cs =
                    d.has_arc(cs[i - 1], cs[i]) && d.has_arc(cs[i + 1], cs[i]);
                if (!converging_among_cs && !z.contains(cs[i]))
                    add_failure(r, d, serial, query,
                                "corollary (iii) non-converging c_i must "
                                "lie in Z");
            }
        }
    });
    return r;
}

CheckReport check_dsep_equivalence(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "dsep-equivalence";
    r.graphs = 1;
    const int n = d.node_count();
    for_each_query(d, serial, [&](NodeId x, NodeId y, const NodeSet& z) {
        if (x > y) return; // the query is symmetric in x and y
        ++r.instances;
        NodeSet xs = NodeSet::of(n, {x}), ys = NodeSet::of(n, {y});
        if (d_separated_by_enumeration(d, xs, ys, z) !=
            d_separated(d, xs, ys, z))
            add_failure(r, d, serial, describe_query(d, x, y, z),
                        "enumeration and reachability verdicts differ");
    });
    return r;
}

CheckReport check_node_removal(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "node-removal";
    if (has_active_cycle(d)) {
        r.skipped = 1;
        return r;
    }
    r.graphs = 1;
    for (NodeId v = 0; v < d.node_count(); ++v) {
        ++r.instances;
        NodeSet keep = NodeSet::full(d.node_count());
        keep.erase(v);
        if (has_active_cycle(d.induced_subgraph(keep).first))
            add_failure(r, d, serial, "removed " + d.display(v),
                        "node removal introduced an active cycle");
    }
    return r;
}

CheckReport check_local_removal(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "local-removal";
    r.graphs = 1;
    for (NodeId v = 0; v < d.node_count(); ++v) {
        ++r.instances;
        NodeSet rest = NodeSet::full(d.node_count());
        rest.erase(v);
        if (local_after_removal(d, v) !=
            has_local_relationships(d, rest).local)
            add_failure(r, d, serial, "removed " + d.display(v),
                        "neighbour-pair characterization disagrees with "
                        "local relationships of V minus v");
    }
    return r;
}

CheckReport check_local_partition(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "local-partition";
    r.graphs = 1;
    const int n = d.node_count();

    std::vector<NodeSet> ks;
    if (n <= 5) {
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            NodeSet k(n);
            for (NodeId v = 0; v < n; ++v)
                if ((mask >> v) & 1) k.insert(v);
            ks.push_back(k);
        }
    } else {
        std::uint64_t state = serial ^ 0x0F0F0F0F0F0F0F0Full;
        for (int s = 0; s < 16; ++s) {
            std::uint64_t bits = splitmix64(state);
            NodeSet k(n);
            for (NodeId v = 0; v < n; ++v)
                if ((bits >> v) & 1) k.insert(v);
            if (!k.empty()) ks.push_back(k);
        }
    }

    NodeSet empty(n);
    for (const NodeSet& k : ks) {
        if (!has_local_relationships(d, k)) continue;
        ++r.instances;
        Partition part = decompose_local(d, k);
        std::string query = "K of size " + std::to_string(k.count());

        NodeSet collected(n);
        for (const NodeSet& block : part.blocks) {
            if (block.empty())
                add_failure(r, d, serial, query, "proposition: empty block");
            if (block.intersects(collected))
                add_failure(r, d, serial, query,
                            "proposition: blocks not disjoint");
            collected |= block;

            // connected: BFS within the block from its first member
            std::vector<NodeId> members = block.to_vector();
            NodeSet seen(n);
            std::vector<NodeId> stack{members.front()};
            seen.insert(members.front());
            while (!stack.empty()) {
                NodeId v = stack.back();
                stack.pop_back();
                for (NodeId w : d.neighbors_of(v))
                    if (block.contains(w) && !seen.contains(w)) {
                        seen.insert(w);
                        stack.push_back(w);
                    }
            }
            if (!(seen == block))
                add_failure(r, d, serial, query,
                            "proposition: block not connected");
            if (!has_local_relationships(d, block).local)
                add_failure(r, d, serial, query,
                            "proposition: block lacks local relationships");
        }
        if (!(collected == k))
            add_failure(r, d, serial, query,
                        "proposition: blocks do not cover K");
        for (std::size_t i = 0; i < part.blocks.size(); ++i)
            for (std::size_t j = i + 1; j < part.blocks.size(); ++j)
                if (!d_separated(d, part.blocks[i], part.blocks[j], empty))
                    add_failure(r, d, serial, query,
                                "proposition: blocks not d-separated by "
                                "the empty set");
    }
    return r;
}

CheckReport check_order_minimality(const Dag& d, std::uint64_t serial) {
    CheckReport r;
    r.check = "order-minimality";
    r.graphs = 1;
    const int n = d.node_count();
    for_each_query(d, serial, [&](NodeId x, NodeId y, const NodeSet& z) {
        NodeSet xs = NodeSet::of(n, {x}), ys = NodeSet::of(n, {y});
        std::vector<Trail> ts = trails_xyz(d, xs, ys, z);
        MinimalTrails mt = minimal_trails(d, xs, ys, z);
        if (ts.empty()) {
            if (!mt.empty())
                add_failure(r, d, serial, describe_query(d, x, y, z),
                            "minimal set nonempty while TRAILS is empty");
            return;
        }
        ++r.instances;
        std::string query = describe_query(d, x, y, z);
        if (mt.empty()) {
            add_failure(r, d, serial, query,
                        "minimal set empty while TRAILS is nonempty");
            return;
        }
        std::vector<TrailKey> keys;
        keys.reserve(ts.size());
        for (const Trail& t : ts) keys.push_back(trail_key(d, t, z));

        // dominance-minimal elements, found pairwise
        std::vector<char> minimal(ts.size(), 1);
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = 0; j < ts.size(); ++j)
                if (compare(keys[j], keys[i]) == OrderResult::less)
                    minimal[i] = 0;
        std::vector<Trail> dominance_minimal;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (minimal[i]) dominance_minimal.push_back(ts[i]);

        if (dominance_minimal != mt.trails)
            add_failure(r, d, serial, query,
                        "dominance-minimal set differs from the minimum-key "
                        "set");
        for (const Trail& t : mt.trails)
            if (!is_activated(d, t, z))
                add_failure(r, d, serial, query,
                            "returned minimal trail is not activated");
    });
    return r;
}

const std::vector<CheckDef>& all_checks() {
    static const std::vector<CheckDef> defs = {
        {"activation-lemma",
         "empty-set activation coincides with converging-freeness",
         check_activation_lemma},
        {"no-chords", "shortest empty-activated trails are chordless",
         check_no_chords},
        {"common-children",
         "common children of the endpoints are children of every node on a "
         "shortest K-interior trail",
         check_common_children},
        {"subgraph-theorems", "both forced-fan subgraph theorems",
         check_subgraph_theorems},
        {"minimal-trails", "minimal-trail structure theorem, clauses (i)-(v)",
         check_minimal_trail_theorem},
        {"local-minimal-trails",
         "minimal trails under local relationships, clauses (i)-(iv) plus "
         "corollary",
         check_local_rel_theorem},
        {"dsep-equivalence",
         "enumeration- and reachability-based d-separation agree",
         check_dsep_equivalence},
        {"order-minimality",
         "dominance-minimal trails equal the minimum-key trails",
         check_order_minimality},
        {"node-removal", "deleting a node never introduces an active cycle",
         check_node_removal},
        {"local-removal",
         "neighbour-pair test equals local relationships after removal",
         check_local_removal},
        {"local-partition",
         "decomposition blocks are connected, local and pairwise d-separated",
         check_local_partition},
    };
    return defs;
}

const CheckDef& find_check(const std::string& name) {
    for (const CheckDef& def : all_checks())
        if (def.name == name) return def;
    throw Error(errc::unknown_check, "unknown check \"" + name + "\"");
}

namespace {

std::vector<CheckReport> run_graph(const Dag& d, std::uint64_t serial,
                                   const std::vector<CheckDef>& checks) {
    std::vector<CheckReport> out;
    out.reserve(checks.size());
    for (const CheckDef& def : checks) {
        try {
            out.push_back(def.fn(d, serial));
        } catch (const std::exception& e) {
            CheckReport r;
            r.check = def.name;
            r.graphs = 1;
            r.failures.push_back({serial, to_json(d), "",
                                  std::string("exception: ") + e.what()});
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace

std::vector<CheckReport> run_suite(const GenSpec& spec,
                                   const std::vector<CheckDef>& checks,
                                   int threads) {
    std::vector<CheckReport> agg(checks.size());
    for (std::size_t i = 0; i < checks.size(); ++i)
        agg[i].check = checks[i].name;

    GraphGenerator gen(spec);
    std::uint64_t serial = 0;

#ifdef _OPENMP
    if (threads > 1) {
        constexpr int batch_size = 256;
        for (;;) {
            std::vector<Dag> batch;
            batch.reserve(batch_size);
            while (static_cast<int>(batch.size()) < batch_size) {
                std::optional<Dag> d = gen.next();
                if (!d) break;
                batch.push_back(std::move(*d));
            }
            if (batch.empty()) break;
            std::vector<std::vector<CheckReport>> results(batch.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
            for (int i = 0; i < static_cast<int>(batch.size()); ++i)
                results[i] = run_graph(batch[i], serial + i, checks);
            for (const auto& per_graph : results)
                for (std::size_t c = 0; c < checks.size(); ++c)
                    agg[c].merge(per_graph[c]);
            serial += batch.size();
        }
        return agg;
    }
#else
    (void)threads;
#endif

    while (std::optional<Dag> d = gen.next()) {
        std::vector<CheckReport> per_graph = run_graph(*d, serial, checks);
        for (std::size_t c = 0; c < checks.size(); ++c)
            agg[c].merge(per_graph[c]);
        ++serial;
    }
    return agg;
}

std::vector<CheckReport> run_suite(const GenSpec& spec,
                                   const std::vector<std::string>& names,
                                   int threads) {
    std::vector<CheckDef> checks;
    if (names.empty()) {
        checks = all_checks();
    } else {
        for (const std::string& name : names) checks.push_back(find_check(name));
    }
    return run_suite(spec, checks, threads);
}

} // namespace dagtrails
