#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace dagtrails;
using namespace dagtrails::testing;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return errc::invalid_query;
}

} // namespace

TEST_CASE("json graph documents parse") {
    std::string doc = R"({
        "nodes": ["v1","v2","v3","v4","v5","v6","v7"],
        "edges": [["v1","v4"],["v1","v2"],["v1","v7"],["v2","v4"],
                  ["v2","v5"],["v2","v7"],["v3","v5"],["v3","v6"],
                  ["v6","v7"]]
    })";
    Dag d = parse_graph(doc, GraphFormat::json);
    CHECK(d.node_count() == 7);
    CHECK(d.arcs() == fig1().arcs());
    CHECK(d.label(0) == "v1");
}

TEST_CASE("json documents are validated") {
    CHECK(code_of([] { parse_graph("{not json", GraphFormat::json); }) ==
          errc::parse_error);
    CHECK(code_of([] { parse_graph(R"({"nodes": ["a"]})", GraphFormat::json); }) ==
          errc::parse_error);
    CHECK(code_of([] {
              parse_graph(R"({"nodes": ["a"], "edges": [["a","b"]]})",
                          GraphFormat::json);
          }) == errc::parse_error);
    CHECK(code_of([] {
              parse_graph(R"({"nodes": ["a","a"], "edges": []})",
                          GraphFormat::json);
          }) == errc::duplicate_label);
    CHECK(code_of([] {
              parse_graph(
                  R"({"nodes": ["a","b"], "edges": [["a","b"],["b","a"]]})",
                  GraphFormat::json);
          }) == errc::antiparallel_arcs);
}

TEST_CASE("cycle errors surface with labels") {
    try {
        parse_graph(
            R"({"nodes": ["a","b","c"], "edges": [["a","b"],["b","c"],["c","a"]]})",
            GraphFormat::json);
        FAIL("cycle accepted");
    } catch (const Error& e) {
        CHECK(e.code() == errc::cycle_detected);
        CHECK(std::string(e.what()).find("a") != std::string::npos);
    }
}

TEST_CASE("dot subset parses") {
    Dag d = parse_graph("digraph g { a -> b; }", GraphFormat::dot);
    CHECK(d.node_count() == 2);
    CHECK(d.has_arc(d.resolve("a"), d.resolve("b")));

    Dag chainy = parse_graph(
        "digraph { a -> b -> c [weight=2]; d; b -> d; }", GraphFormat::dot);
    CHECK(chainy.node_count() == 4);
    CHECK(chainy.arcs().size() == 3);

    Dag quoted = parse_graph("digraph g { \"x 1\" -> y; }", GraphFormat::dot);
    CHECK(quoted.resolve("x 1") == 0);
}

TEST_CASE("dot errors carry positions") {
    CHECK(code_of([] { parse_graph("digraph g { a -> a; }", GraphFormat::dot); }) ==
          errc::self_loop);
    try {
        parse_graph("digraph g {\n a -> ; }", GraphFormat::dot);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK(code_of([] { parse_graph("graph g { a; }", GraphFormat::dot); }) ==
          errc::parse_error);
}

TEST_CASE("json round trip is the identity on labels and arcs") {
    for (const Dag& d : {fig1(), fig3(), diamond(), remark5(), necessity()}) {
        Dag back = parse_graph(to_json(d), GraphFormat::json);
        CHECK(back.node_count() == d.node_count());
        CHECK(back.arcs() == d.arcs());
        for (NodeId v = 0; v < d.node_count(); ++v)
            CHECK(back.label(v) == d.label(v));
    }
}

TEST_CASE("unlabeled graphs serialize with index names") {
    Dag d = Dag::build(3, {{0, 2}});
    Dag back = parse_graph(to_json(d), GraphFormat::json);
    CHECK(back.arcs() == d.arcs());
    CHECK(back.resolve("2") == 2);
}

TEST_CASE("trail rendering round trips") {
    Dag d = fig1();
    for (NodeId x = 0; x < 7; ++x)
        for (NodeId y = 0; y < 7; ++y) {
            if (x == y) continue;
            for (const Trail& t : enumerate_trails(d, x, y))
                CHECK(parse_trail(d, render_trail(d, t)) == t);
        }
    CHECK_THROWS_AS(parse_trail(d, "v1 -> v3"), Error); // no such arc
    CHECK_THROWS_AS(parse_trail(d, "v1 ->"), Error);
    CHECK_THROWS_AS(parse_trail(d, "v1 => v2"), Error);
}

TEST_CASE("label list helpers") {
    CHECK(split_labels("").empty());
    CHECK(split_labels("a") == std::vector<std::string>{"a"});
    CHECK(split_labels("a, b,c") == std::vector<std::string>{"a", "b", "c"});

    Dag d = fig1();
    CHECK(resolve_labels(d, {"v1", "v7"}) == set_of(d, {"v1", "v7"}));
    CHECK_THROWS_AS(resolve_labels(d, {"nope"}), Error);
}
