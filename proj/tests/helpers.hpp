#ifndef DAGTRAILS_TEST_HELPERS_HPP
#define DAGTRAILS_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "dagtrails/dag.hpp"
#include "dagtrails/graph_io.hpp"

namespace dagtrails::testing {

// Figure fixtures, indices in label order.

// Seven-node example graph: v1..v7 at indices 0..6.
inline Dag fig1() {
    return Dag::build(7,
                      {{0, 3}, {0, 1}, {0, 6}, {1, 3}, {1, 4}, {1, 6},
                       {2, 4}, {2, 5}, {5, 6}},
                      {"v1", "v2", "v3", "v4", "v5", "v6", "v7"});
}

// Five-node graph containing the active cycle v5 <- v2 <- v1 -> v4 -> v5.
inline Dag fig3() {
    return Dag::build(5,
                      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {1, 4},
                       {2, 4}, {3, 4}},
                      {"v1", "v2", "v3", "v4", "v5"});
}

// Diamond with the horizontal chord 2 -> 3; labels "1".."4".
inline Dag diamond() {
    return Dag::build(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {1, 2}},
                      {"1", "2", "3", "4"});
}

// 1 -> 2 -> 3 -> 4 plus 1 -> 5 -> 4; labels "1".."5".
inline Dag remark5() {
    return Dag::build(5, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 3}},
                      {"1", "2", "3", "4", "5"});
}

// Counter-example graph around x -> c1 <- t1 -> c2 <- t2 -> c3 <- y.
// Indices: x=0 c1=1 t1=2 c2=3 t2=4 c3=5 d1=6 y=7.
inline Dag necessity() {
    return Dag::build(8,
                      {{0, 1}, {1, 3}, {5, 3}, {7, 5}, {2, 1}, {2, 3},
                       {4, 3}, {4, 5}, {1, 6}, {3, 6}, {5, 6}},
                      {"x", "c1", "t1", "c2", "t2", "c3", "d1", "y"});
}

inline std::string trail_str(const Dag& d, const Trail& t) {
    return render_trail(d, t);
}

inline std::vector<std::string> trail_strs(const Dag& d,
                                           const std::vector<Trail>& ts) {
    std::vector<std::string> out;
    for (const Trail& t : ts) out.push_back(render_trail(d, t));
    return out;
}

inline NodeSet set_of(const Dag& d, std::initializer_list<const char*> names) {
    NodeSet s(d.node_count());
    for (const char* name : names) s.insert(d.resolve(name));
    return s;
}

} // namespace dagtrails::testing

#endif
