#ifndef DAGTRAILS_GRAPH_IO_HPP
#define DAGTRAILS_GRAPH_IO_HPP

#include <string>
#include <vector>

#include "dagtrails/structure.hpp"
#include "dagtrails/trails.hpp"

namespace dagtrails {

enum class GraphFormat { json, dot };

/// JSON: {"nodes": ["a", ...], "edges": [["a","b"], ...]}.
/// DOT subset: digraph NAME { a -> b [ignored]; c; }.
/// Throws parse_error (with line/column for DOT) or the underlying
/// build errors, reported with labels.
Dag parse_graph(const std::string& text, GraphFormat format);

/// Canonical JSON document for a graph; parse_graph inverts it.
std::string to_json(const Dag& d);

/// Arrow notation, e.g. "v1 -> v2 <- v3".
std::string render_trail(const Dag& d, const Trail& t);
/// Inverse of render_trail; validates every step against the graph.
Trail parse_trail(const Dag& d, const std::string& text);

/// Closed-trail rendering "v <- w ... z -> v".
std::string render_cycle(const Dag& d, const ActiveCycle& c);

/// Comma-separated labels; the empty string denotes the empty set.
std::vector<std::string> split_labels(const std::string& csv);
NodeSet resolve_labels(const Dag& d, const std::vector<std::string>& names);

} // namespace dagtrails

#endif
