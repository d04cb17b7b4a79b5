#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dagtrails/graph_io.hpp"
#include "dagtrails/order.hpp"
#include "dagtrails/structure.hpp"
#include "dagtrails/verify.hpp"

using namespace dagtrails;
using nlohmann::json;

namespace {

// exit codes: 0 ok / separated / no cycles / all checks pass
constexpr int exit_not_separated = 10;
constexpr int exit_cycles_found = 11;
constexpr int exit_verify_failed = 12;
constexpr int exit_usage = 64;
constexpr int exit_data = 65;
constexpr int exit_noinput = 66;
constexpr int exit_internal = 70;

struct GraphInput {
    std::string path;
    std::string format = "auto"; // auto | json | dot
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(exit_noinput);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Dag load_graph(const GraphInput& input) {
    GraphFormat format = GraphFormat::json;
    if (input.format == "dot") {
        format = GraphFormat::dot;
    } else if (input.format == "auto") {
        auto dot = input.path.ends_with(".dot") || input.path.ends_with(".gv");
        format = dot ? GraphFormat::dot : GraphFormat::json;
    }
    return parse_graph(slurp(input.path), format);
}

void add_graph_arg(CLI::App* cmd, GraphInput& input) {
    cmd->add_option("graph", input.path, "graph file (JSON or DOT), - for stdin")
        ->required();
    cmd->add_option("--format", input.format, "input format")
        ->check(CLI::IsMember({"auto", "json", "dot"}));
}

json key_json(const TrailKey& k) {
    auto a = k.to_array();
    return json::array({a[0], a[1], a[2], a[3]});
}

std::string key_str(const TrailKey& k) {
    auto a = k.to_array();
    std::ostringstream out;
    out << "(" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << ")";
    return out.str();
}

json names_json(const Dag& d, const NodeSet& s) {
    json out = json::array();
    for (NodeId v : s) out.push_back(d.display(v));
    return out;
}

json decomposition_json(const Dag& d, const TrailDecomposition& dec) {
    json out;
    out["converging"] = json::array();
    for (std::size_t i = 0; i < dec.converging.size(); ++i) {
        json w;
        w["node"] = d.display(dec.converging[i]);
        const ActivationWitness& witness = dec.witnesses[i];
        if (witness.in_z()) {
            w["witness"] = "in-z";
            w["path"] = nullptr;
        } else {
            w["witness"] = "descendant-path";
            Trail p;
            p.nodes.push_back(witness.path->source);
            p.nodes.insert(p.nodes.end(), witness.path->interior.begin(),
                           witness.path->interior.end());
            p.nodes.push_back(witness.path->target);
            p.dirs.assign(p.nodes.size() - 1, Direction::forward);
            w["path"] = render_trail(d, p);
        }
        out["converging"].push_back(w);
    }
    out["subtrails"] = json::array();
    for (const Trail& s : dec.subtrails)
        out["subtrails"].push_back(render_trail(d, s));
    return out;
}

void print_decomposition_text(const Dag& d, const TrailDecomposition& dec) {
    std::cout << "  converging nodes: " << dec.converging.size() << "\n";
    for (std::size_t i = 0; i < dec.converging.size(); ++i) {
        std::cout << "    " << d.display(dec.converging[i]) << ": ";
        if (dec.witnesses[i].in_z()) {
            std::cout << "in Z\n";
        } else {
            const DescendantPath& p = *dec.witnesses[i].path;
            Trail t;
            t.nodes.push_back(p.source);
            t.nodes.insert(t.nodes.end(), p.interior.begin(), p.interior.end());
            t.nodes.push_back(p.target);
            t.dirs.assign(t.nodes.size() - 1, Direction::forward);
            std::cout << "descendant path " << render_trail(d, t) << "\n";
        }
    }
    std::cout << "  subtrails:\n";
    for (const Trail& s : dec.subtrails)
        std::cout << "    " << render_trail(d, s) << "\n";
}

struct QueryArgs {
    std::string x, y, z;
};

void add_query_args(CLI::App* cmd, QueryArgs& q, bool need_z_option = true) {
    cmd->add_option("--x", q.x, "comma-separated X labels")->required();
    cmd->add_option("--y", q.y, "comma-separated Y labels")->required();
    if (need_z_option)
        cmd->add_option("--z", q.z,
                        "comma-separated Z labels (empty string for the "
                        "empty set)");
}

int run_validate(const GraphInput& input, const std::string& output) {
    Dag d = load_graph(input);
    if (output == "json") {
        json out;
        out["nodes"] = d.node_count();
        out["arcs"] = d.arcs().size();
        out["topological_order"] = json::array();
        for (NodeId v : d.topological_order())
            out["topological_order"].push_back(d.display(v));
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "nodes: " << d.node_count() << "\n"
                  << "arcs: " << d.arcs().size() << "\n"
                  << "topological order:";
        for (NodeId v : d.topological_order()) std::cout << " " << d.display(v);
        std::cout << "\n";
    }
    return 0;
}

int run_dsep(const GraphInput& input, const QueryArgs& q,
             const std::string& output) {
    Dag d = load_graph(input);
    NodeSet x = resolve_labels(d, split_labels(q.x));
    NodeSet y = resolve_labels(d, split_labels(q.y));
    NodeSet z = resolve_labels(d, split_labels(q.z));
    bool separated = d_separated(d, x, y, z);
    std::optional<Trail> witness;
    if (!separated) witness = find_activated_trail(d, x, y, z);
    if (output == "json") {
        json out;
        out["separated"] = separated;
        out["witness"] = witness ? json(render_trail(d, *witness)) : json();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "separated: " << (separated ? "true" : "false") << "\n";
        if (witness)
            std::cout << "activated trail: " << render_trail(d, *witness)
                      << "\n";
        else
            std::cout << "every trail between X and Y is blocked by Z\n";
    }
    return separated ? 0 : exit_not_separated;
}

int run_trails(const GraphInput& input, const QueryArgs& q, long limit,
               const std::string& output) {
    Dag d = load_graph(input);
    NodeSet x = resolve_labels(d, split_labels(q.x));
    NodeSet y = resolve_labels(d, split_labels(q.y));
    NodeSet z = resolve_labels(d, split_labels(q.z));
    std::vector<Trail> ts = trails_xyz(d, x, y, z);
    bool truncated = limit >= 0 && static_cast<long>(ts.size()) > limit;
    std::size_t shown = truncated ? static_cast<std::size_t>(limit) : ts.size();
    if (output == "json") {
        json out;
        out["count"] = ts.size();
        out["truncated"] = truncated;
        out["trails"] = json::array();
        for (std::size_t i = 0; i < shown; ++i) {
            json item;
            item["trail"] = render_trail(d, ts[i]);
            item["key"] = key_json(trail_key(d, ts[i], z));
            out["trails"].push_back(item);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < shown; ++i)
            std::cout << render_trail(d, ts[i]) << "  key="
                      << key_str(trail_key(d, ts[i], z)) << "\n";
        std::cout << "count: " << ts.size()
                  << (truncated ? " (truncated)" : "") << "\n";
    }
    return 0;
}

int run_minimal(const GraphInput& input, const QueryArgs& q,
                const std::string& output) {
    Dag d = load_graph(input);
    NodeSet x = resolve_labels(d, split_labels(q.x));
    NodeSet y = resolve_labels(d, split_labels(q.y));
    NodeSet z = resolve_labels(d, split_labels(q.z));
    MinimalTrails mt = minimal_trails(d, x, y, z);
    if (output == "json") {
        json out;
        out["min_key"] = mt.key ? key_json(*mt.key) : json();
        out["minimizers"] = json::array();
        for (const Trail& t : mt.trails) {
            json item;
            item["trail"] = render_trail(d, t);
            item["decomposition"] = decomposition_json(d, decompose(d, t, z));
            out["minimizers"].push_back(item);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (mt.empty()) {
            std::cout << "no activated trails: X and Y are d-separated by Z\n";
        } else {
            std::cout << "min key: " << key_str(*mt.key) << "\n"
                      << "minimizers: " << mt.trails.size() << "\n";
            for (const Trail& t : mt.trails) {
                std::cout << render_trail(d, t) << "\n";
                print_decomposition_text(d, decompose(d, t, z));
            }
        }
    }
    return 0;
}

int run_cycles(const GraphInput& input, bool all, const std::string& output) {
    Dag d = load_graph(input);
    std::vector<ActiveCycle> cycles = find_active_cycles(d, !all);
    if (output == "json") {
        json out;
        out["count"] = cycles.size();
        out["cycles"] = json::array();
        for (const ActiveCycle& c : cycles) {
            json item;
            item["apex"] = d.display(c.apex);
            item["parents"] =
                json::array({d.display(c.parent_left), d.display(c.parent_right)});
            item["cycle"] = render_cycle(d, c);
            out["cycles"].push_back(item);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (cycles.empty()) {
            std::cout << "no active cycles\n";
        } else {
            for (const ActiveCycle& c : cycles)
                std::cout << "active cycle: " << render_cycle(d, c) << "\n";
            if (!all) std::cout << "(stopped at the first witness)\n";
        }
    }
    return cycles.empty() ? 0 : exit_cycles_found;
}

int run_localrel(const GraphInput& input, const std::string& k_csv,
                 bool want_partition, const std::string& output) {
    Dag d = load_graph(input);
    NodeSet k = resolve_labels(d, split_labels(k_csv));
    LocalRelResult res = has_local_relationships(d, k);
    std::optional<Partition> partition;
    if (res.local && want_partition) partition = decompose_local(d, k);
    if (output == "json") {
        json out;
        out["local"] = res.local;
        if (res.local) {
            out["witness"] = nullptr;
        } else {
            json w;
            w["v1"] = d.display(res.v1);
            w["v2"] = d.display(res.v2);
            w["trail"] = render_trail(d, *res.witness);
            out["witness"] = w;
        }
        if (partition) {
            out["partition"] = json::array();
            for (const NodeSet& block : partition->blocks)
                out["partition"].push_back(names_json(d, block));
        } else {
            out["partition"] = nullptr;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "local relationships: " << (res.local ? "true" : "false")
                  << "\n";
        if (!res.local)
            std::cout << "violating pair: " << d.display(res.v1) << ", "
                      << d.display(res.v2) << "\n"
                      << "witness trail: " << render_trail(d, *res.witness)
                      << "\n";
        if (partition) {
            std::cout << "partition:\n";
            for (const NodeSet& block : partition->blocks) {
                std::cout << " ";
                for (NodeId v : block) std::cout << " " << d.display(v);
                std::cout << "\n";
            }
        }
    }
    return 0;
}

int run_verify(const std::string& mode, int n, double p, std::uint64_t seed,
               int count, const std::string& checks_csv, int threads,
               const std::string& output) {
    GenSpec spec = mode == "random" ? GenSpec::random(n, p, seed, count)
                                    : GenSpec::exhaustive(n);
    std::vector<std::string> names = split_labels(checks_csv);
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    if (threads <= 0) threads = 1;
#endif
    std::vector<CheckReport> reports = run_suite(spec, names, threads);
    bool ok = true;
    for (const CheckReport& r : reports) ok = ok && r.passed();
    if (output == "json") {
        json out;
        out["ok"] = ok;
        out["reports"] = json::array();
        for (const CheckReport& r : reports) {
            json item;
            item["check"] = r.check;
            item["graphs"] = r.graphs;
            item["skipped"] = r.skipped;
            item["instances"] = r.instances;
            item["failures"] = json::array();
            for (const CheckFailure& f : r.failures) {
                json fail;
                fail["serial"] = f.serial;
                fail["graph"] = json::parse(f.graph_json);
                fail["query"] = f.query;
                fail["clause"] = f.clause;
                item["failures"].push_back(fail);
            }
            out["reports"].push_back(item);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%-22s %10s %8s %12s %9s\n", "check", "graphs", "skipped",
                    "instances", "failures");
        for (const CheckReport& r : reports)
            std::printf("%-22s %10llu %8llu %12llu %9zu  %s\n",
                        r.check.c_str(),
                        static_cast<unsigned long long>(r.graphs),
                        static_cast<unsigned long long>(r.skipped),
                        static_cast<unsigned long long>(r.instances),
                        r.failures.size(), r.passed() ? "pass" : "FAIL");
        for (const CheckReport& r : reports)
            for (const CheckFailure& f : r.failures)
                std::cout << "failure in " << r.check << " [serial "
                          << f.serial << "] " << f.query << ": " << f.clause
                          << "\n  graph: " << f.graph_json << "\n";
        std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"d-separation, minimal activated trails and active-cycle "
                 "analysis for DAGs"};
    app.require_subcommand(1);

    std::string output = "text";
    app.add_option("--output", output, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    GraphInput g_validate, g_dsep, g_trails, g_minimal, g_cycles, g_localrel;
    QueryArgs q_dsep, q_trails, q_minimal;
    long limit = -1;
    bool all_cycles = false;
    std::string k_csv;
    bool want_partition = false;
    std::string mode = "exhaustive", checks_csv;
    int n = 4, count = 100, threads = 0;
    double p = 0.3;
    std::uint64_t seed = 0;

    CLI::App* validate = app.add_subcommand("validate", "parse and summarize");
    add_graph_arg(validate, g_validate);

    CLI::App* dsep = app.add_subcommand("dsep", "d-separation query");
    add_graph_arg(dsep, g_dsep);
    add_query_args(dsep, q_dsep);

    CLI::App* trails = app.add_subcommand("trails", "activated trails");
    add_graph_arg(trails, g_trails);
    add_query_args(trails, q_trails);
    trails->add_option("--limit", limit, "print at most N trails");

    CLI::App* minimal = app.add_subcommand("minimal", "minimal activated trails");
    add_graph_arg(minimal, g_minimal);
    add_query_args(minimal, q_minimal);

    CLI::App* cycles = app.add_subcommand("cycles", "active-cycle detection");
    add_graph_arg(cycles, g_cycles);
    cycles->add_flag("--all", all_cycles, "report every witness");

    CLI::App* localrel = app.add_subcommand("localrel", "local relationships");
    add_graph_arg(localrel, g_localrel);
    localrel->add_option("--k", k_csv, "comma-separated K labels")->required();
    localrel->add_flag("--decompose", want_partition,
                       "also print the partition into blocks");

    CLI::App* verify = app.add_subcommand("verify", "run the check suite");
    verify->add_option("--mode", mode, "graph stream")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    verify->add_option("--n", n, "node count")->required();
    verify->add_option("--p", p, "arc probability (random mode)");
    verify->add_option("--seed", seed, "seed (random mode)");
    verify->add_option("--count", count, "graph count (random mode)");
    verify->add_option("--checks", checks_csv,
                       "comma-separated check names (default: all)");
    verify->add_option("--threads", threads, "worker threads (0 = auto)");

    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*validate) return run_validate(g_validate, output);
        if (*dsep) return run_dsep(g_dsep, q_dsep, output);
        if (*trails) return run_trails(g_trails, q_trails, limit, output);
        if (*minimal) return run_minimal(g_minimal, q_minimal, output);
        if (*cycles) return run_cycles(g_cycles, all_cycles, output);
        if (*localrel)
            return run_localrel(g_localrel, k_csv, want_partition, output);
        if (*verify)
            return run_verify(mode, n, p, seed, count, checks_csv, threads,
                              output);
    } catch (const Error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what()
                  << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}
