#ifndef DAGTRAILS_VERIFY_HPP
#define DAGTRAILS_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "dagtrails/order.hpp"
#include "dagtrails/structure.hpp"

namespace dagtrails {

/// Graph stream description. Exhaustive(n) walks the 3^(n(n-1)/2)
/// orientation maps over unordered pairs and keeps the acyclic ones;
/// Random is seed-reproducible via an arc-probability draw below a
/// random topological order.
struct GenSpec {
    enum class Mode { exhaustive, random };
    Mode mode = Mode::exhaustive;
    int n = 1;
    double p = 0.0;
    std::uint64_t seed = 0;
    int count = 0;
    bool require_no_active_cycle = false;

    static GenSpec exhaustive(int n) {
        GenSpec s;
        s.mode = Mode::exhaustive;
        s.n = n;
        return s;
    }
    static GenSpec random(int n, double p, std::uint64_t seed, int count) {
        GenSpec s;
        s.mode = Mode::random;
        s.n = n;
        s.p = p;
        s.seed = seed;
        s.count = count;
        return s;
    }
};

/// Pull-based generator; emits graphs in a deterministic order.
class GraphGenerator {
public:
    explicit GraphGenerator(GenSpec spec);
    std::optional<Dag> next();
    std::uint64_t emitted() const { return emitted_; }

private:
    std::optional<Dag> next_candidate();

    GenSpec spec_;
    std::vector<std::uint8_t> trits_; // exhaustive odometer, one per pair
    bool exhausted_ = false;
    bool first_ = true;
    std::uint64_t rng_state_;
    int produced_ = 0;
    std::uint64_t emitted_ = 0;
};

struct CheckFailure {
    std::uint64_t serial = 0;
    std::string graph_json;
    std::string query;
    std::string clause;
};

struct CheckReport {
    std::string check;
    std::uint64_t graphs = 0;   // graphs whose hypotheses held
    std::uint64_t skipped = 0;  // graphs excluded by the check's hypotheses
    std::uint64_t instances = 0; // non-vacuous (graph, query) tuples
    std::vector<CheckFailure> failures;

    bool passed() const { return failures.empty(); }
    void merge(const CheckReport& other);
};

using CheckFn = CheckReport (*)(const Dag&, std::uint64_t serial);

struct CheckDef {
    std::string name;
    std::string summary;
    CheckFn fn;
};

/// Built-in registry, in report order.
const std::vector<CheckDef>& all_checks();
/// Throws unknown_check.
const CheckDef& find_check(const std::string& name);

// One CheckReport per graph; serial seeds any sampling the check does.
CheckReport check_activation_lemma(const Dag& d, std::uint64_t serial);
CheckReport check_no_chords(const Dag& d, std::uint64_t serial);
CheckReport check_common_children(const Dag& d, std::uint64_t serial);
CheckReport check_subgraph_theorems(const Dag& d, std::uint64_t serial);
CheckReport check_minimal_trail_theorem(const Dag& d, std::uint64_t serial);
CheckReport check_local_rel_theorem(const Dag& d, std::uint64_t serial);
CheckReport check_dsep_equivalence(const Dag& d, std::uint64_t serial);
CheckReport check_node_removal(const Dag& d, std::uint64_t serial);
CheckReport check_local_removal(const Dag& d, std::uint64_t serial);
CheckReport check_local_partition(const Dag& d, std::uint64_t serial);
CheckReport check_order_minimality(const Dag& d, std::uint64_t serial);

/// Runs the named checks (all when empty) over the generated stream and
/// returns one aggregated report per check. `threads` > 1 fans graphs
/// out across OpenMP workers; the merged reports are identical to the
/// serial ones. An injectable registry keeps the runner testable.
std::vector<CheckReport> run_suite(const GenSpec& spec,
                                   const std::vector<std::string>& names = {},
                                   int threads = 1);
std::vector<CheckReport> run_suite(const GenSpec& spec,
                                   const std::vector<CheckDef>& checks,
                                   int threads);

} // namespace dagtrails

#endif
