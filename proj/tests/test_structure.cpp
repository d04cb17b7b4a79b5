#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dagtrails/verify.hpp"
#include "helpers.hpp"

using namespace dagtrails;
using namespace dagtrails::testing;

namespace {

// Independent re-validation of an active-cycle witness straight from the
// definition: distinct parents, n >= 1, converging-free connector,
// chordless closed trail.
bool witness_is_valid(const Dag& d, const ActiveCycle& c) {
    if (c.parent_left == c.parent_right) return false;
    if (!d.has_arc(c.parent_left, c.apex) || !d.has_arc(c.parent_right, c.apex))
        return false;
    const Trail& t = c.connector;
    if (t.front() != c.parent_left || t.back() != c.parent_right) return false;
    if (t.node_count() < 3) return false; // n >= 1
    for (int i = 1; i <= t.node_count() - 2; ++i) {
        if (t.nodes[i] == c.apex) return false;
        if (connection_at(t, i) == ConnectionKind::converging) return false;
    }
    std::vector<NodeId> circle = c.cycle_nodes();
    const int k = static_cast<int>(circle.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
            if (!consecutive && d.adjacent(circle[i], circle[j])) return false;
        }
    return true;
}

// Oracle for local relationships: full trail enumeration.
bool local_by_enumeration(const Dag& d, const NodeSet& k) {
    for (NodeId v1 : k)
        for (NodeId v2 : k) {
            if (v2 <= v1 || d.adjacent(v1, v2)) continue;
            bool violated = false;
            for_each_trail(d, v1, v2, [&](const Trail& t) {
                if (has_converging(t)) return true;
                for (int i = 1; i <= t.node_count() - 2; ++i)
                    if (k.contains(t.nodes[i])) return true;
                violated = true;
                return false;
            });
            if (violated) return false;
        }
    return true;
}

} // namespace

TEST_CASE("the five-node graph contains exactly one active cycle") {
    Dag d = fig3();
    auto cycles = find_active_cycles(d, false);
    REQUIRE(cycles.size() == 1);
    const ActiveCycle& c = cycles[0];
    CHECK(d.display(c.apex) == "v5");
    CHECK(d.display(c.parent_left) == "v2");
    CHECK(d.display(c.parent_right) == "v4");
    CHECK(render_cycle(d, c) == "v5 <- v2 <- v1 -> v4 -> v5");
    CHECK(witness_is_valid(d, c));
    CHECK(has_active_cycle(d));
}

TEST_CASE("graphs without active cycles") {
    CHECK(find_active_cycles(fig1(), false).empty());

    // forest skeleton
    Dag tree = Dag::build(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});
    CHECK(find_active_cycles(tree, false).empty());
}

TEST_CASE("every reported witness re-validates independently") {
    GraphGenerator gen(GenSpec::exhaustive(4));
    std::uint64_t with_cycles = 0;
    while (auto d = gen.next()) {
        auto cycles = find_active_cycles(*d, false);
        for (const ActiveCycle& c : cycles) CHECK(witness_is_valid(*d, c));
        if (!cycles.empty()) {
            ++with_cycles;
            CHECK(has_active_cycle(*d));
            auto first = find_active_cycles(*d, true);
            REQUIRE(first.size() == 1);
            CHECK(witness_is_valid(*d, first[0]));
        }
    }
    CHECK(with_cycles > 0);
}

TEST_CASE("local relationships on the section-five remark graph") {
    Dag d = remark5();
    auto res = has_local_relationships(d, set_of(d, {"1", "2", "3", "4"}));
    REQUIRE(!res.local);
    CHECK(d.display(res.v1) == "1");
    CHECK(d.display(res.v2) == "4");
    REQUIRE(res.witness.has_value());
    CHECK(trail_str(d, *res.witness) == "1 -> 5 -> 4");
}

TEST_CASE("full node set and singletons always have local relationships") {
    for (const Dag& d : {fig1(), fig3(), remark5(), necessity()}) {
        CHECK(has_local_relationships(d, NodeSet::full(d.node_count())).local);
        for (NodeId v = 0; v < d.node_count(); ++v)
            CHECK(has_local_relationships(
                      d, NodeSet::of(d.node_count(), {v}))
                      .local);
    }
}

TEST_CASE("state search matches the enumeration oracle on all small DAGs") {
    GraphGenerator gen(GenSpec::exhaustive(4));
    while (auto d = gen.next()) {
        for (std::uint32_t mask = 1; mask < 16; ++mask) {
            NodeSet k(4);
            for (NodeId v = 0; v < 4; ++v)
                if ((mask >> v) & 1) k.insert(v);
            CHECK(has_local_relationships(*d, k).local ==
                  local_by_enumeration(*d, k));
        }
    }
}

TEST_CASE("decomposition into connectivity blocks") {
    // a -- b adjacent, c isolated from them
    Dag d = Dag::build(4, {{0, 1}, {2, 3}});
    Partition p = decompose_local(d, NodeSet::of(4, {0, 1, 2}));
    REQUIRE(p.blocks.size() == 2);
    CHECK(p.blocks[0] == NodeSet::of(4, {0, 1}));
    CHECK(p.blocks[1] == NodeSet::of(4, {2}));

    Partition single = decompose_local(d, NodeSet::of(4, {3}));
    REQUIRE(single.blocks.size() == 1);
    CHECK(single.blocks[0] == NodeSet::of(4, {3}));
}

TEST_CASE("decomposition rejects sets without local relationships") {
    Dag d = fig1();
    // v4 <- v2 -> v5 is converging-free with interior outside {v4, v5}
    CHECK(!has_local_relationships(d, set_of(d, {"v4", "v5"})).local);
    CHECK_THROWS_AS(decompose_local(d, set_of(d, {"v4", "v5"})), Error);
}

TEST_CASE("partition blocks satisfy the proposition on all small DAGs") {
    GraphGenerator gen(GenSpec::exhaustive(4));
    NodeSet empty(4);
    while (auto d = gen.next()) {
        for (std::uint32_t mask = 1; mask < 16; ++mask) {
            NodeSet k(4);
            for (NodeId v = 0; v < 4; ++v)
                if ((mask >> v) & 1) k.insert(v);
            if (!has_local_relationships(*d, k)) continue;
            Partition p = decompose_local(*d, k);
            NodeSet all(4);
            for (const NodeSet& block : p.blocks) {
                CHECK(!block.empty());
                CHECK(!block.intersects(all));
                all |= block;
                CHECK(has_local_relationships(*d, block).local);
            }
            CHECK(all == k);
            for (std::size_t i = 0; i < p.blocks.size(); ++i)
                for (std::size_t j = i + 1; j < p.blocks.size(); ++j)
                    CHECK(d_separated(*d, p.blocks[i], p.blocks[j], empty));
        }
    }
}

TEST_CASE("the proposition holds as an equivalence on all small DAGs") {
    // when K lacks local relationships, no partition of K into connected,
    // local, pairwise-separated blocks exists
    GraphGenerator gen(GenSpec::exhaustive(3));
    NodeSet empty(3);
    while (auto d = gen.next()) {
        for (std::uint32_t mask = 1; mask < 8; ++mask) {
            NodeSet k(3);
            for (NodeId v = 0; v < 3; ++v)
                if ((mask >> v) & 1) k.insert(v);
            if (has_local_relationships(*d, k)) continue;
            std::vector<NodeId> members = k.to_vector();
            const int m = static_cast<int>(members.size());
            // enumerate partitions by block assignment vectors
            std::vector<int> assign(m, 0);
            bool any_valid = false;
            for (;;) {
                int blocks = 1 + *std::max_element(assign.begin(), assign.end());
                std::vector<NodeSet> part(blocks, NodeSet(3));
                for (int i = 0; i < m; ++i) part[assign[i]].insert(members[i]);
                bool ok = true;
                for (const NodeSet& block : part) {
                    if (block.empty() ||
                        !has_local_relationships(*d, block).local) {
                        ok = false;
                        break;
                    }
                    // connectivity in the skeleton restricted to the block
                    auto vs = block.to_vector();
                    NodeSet seen(3);
                    std::vector<NodeId> stack{vs[0]};
                    seen.insert(vs[0]);
                    while (!stack.empty()) {
                        NodeId v = stack.back();
                        stack.pop_back();
                        for (NodeId w : d->neighbors_of(v))
                            if (block.contains(w) && !seen.contains(w)) {
                                seen.insert(w);
                                stack.push_back(w);
                            }
                    }
                    if (!(seen == block)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    for (std::size_t i = 0; ok && i < part.size(); ++i)
                        for (std::size_t j = i + 1; ok && j < part.size(); ++j)
                            if (!d_separated(*d, part[i], part[j], empty))
                                ok = false;
                if (ok) any_valid = true;
                // next restricted-growth string
                int pos = m - 1;
                while (pos > 0) {
                    int cap = 1 + *std::max_element(assign.begin(),
                                                    assign.begin() + pos);
                    if (assign[pos] < cap) {
                        ++assign[pos];
                        std::fill(assign.begin() + pos + 1, assign.end(), 0);
                        break;
                    }
                    --pos;
                }
                if (pos == 0) break;
            }
            CHECK(!any_valid);
        }
    }
}

TEST_CASE("local relationships after node removal") {
    // v with no children
    Dag sink = Dag::build(3, {{0, 2}, {1, 2}});
    CHECK(local_after_removal(sink, 2));

    // serial chain with non-adjacent ends
    Dag chain = Dag::build(3, {{0, 1}, {1, 2}});
    CHECK(!local_after_removal(chain, 1));

    // only converging connections at v
    Dag collider = Dag::build(3, {{0, 2}, {1, 2}});
    CHECK(local_after_removal(collider, 2));
}

TEST_CASE("removal characterization matches the direct check on small DAGs") {
    GraphGenerator gen(GenSpec::exhaustive(4));
    while (auto d = gen.next()) {
        for (NodeId v = 0; v < 4; ++v) {
            NodeSet rest = NodeSet::full(4);
            rest.erase(v);
            CHECK(local_after_removal(*d, v) ==
                  has_local_relationships(*d, rest).local);
        }
    }
}

TEST_CASE("connected-or-separated dichotomy") {
    Dag d = Dag::build(4, {{0, 1}, {2, 3}});
    NodeSet k = NodeSet::of(4, {0, 1, 2});
    CHECK(connected_or_dsep(d, k, 0, 1) == PairVerdict::connected_in_k);
    CHECK(connected_or_dsep(d, k, 0, 2) == PairVerdict::d_separated_by_empty);

    Dag f = fig1();
    CHECK_THROWS_AS(connected_or_dsep(f, set_of(f, {"v4", "v5"}),
                                      f.resolve("v4"), f.resolve("v5")),
                    Error);

    // counter-example graph: c1 and c3 within Y + Z
    Dag nec = necessity();
    NodeSet yz = set_of(nec, {"y", "c1", "d1", "c3"});
    REQUIRE(has_local_relationships(nec, yz).local);
    CHECK(connected_or_dsep(nec, yz, nec.resolve("c1"), nec.resolve("c3")) ==
          PairVerdict::connected_in_k);
}

TEST_CASE("verdicts are consistent with the corollary on all small DAGs") {
    GraphGenerator gen(GenSpec::exhaustive(4));
    NodeSet empty(4);
    while (auto d = gen.next()) {
        for (std::uint32_t mask = 1; mask < 16; ++mask) {
            NodeSet k(4);
            for (NodeId v = 0; v < 4; ++v)
                if ((mask >> v) & 1) k.insert(v);
            if (!has_local_relationships(*d, k)) continue;
            auto members = k.to_vector();
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    PairVerdict verdict =
                        connected_or_dsep(*d, k, members[i], members[j]);
                    if (verdict == PairVerdict::d_separated_by_empty)
                        CHECK(d_separated(*d, NodeSet::of(4, {members[i]}),
                                          NodeSet::of(4, {members[j]}), empty));
                }
        }
    }
}
