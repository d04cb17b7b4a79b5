#include "dagtrails/graph_io.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace dagtrails {

namespace {

Dag build_from_document(const std::vector<std::string>& nodes,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
    std::unordered_map<std::string, NodeId> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!index.emplace(nodes[i], static_cast<NodeId>(i)).second)
            throw Error(errc::duplicate_label,
                        "duplicate label \"" + nodes[i] + "\"");
    }
    std::vector<Arc> arcs;
    for (const auto& [from, to] : edges) {
        auto f = index.find(from), t = index.find(to);
        if (f == index.end())
            throw Error(errc::parse_error,
                        "edge endpoint \"" + from + "\" is not a declared node");
        if (t == index.end())
            throw Error(errc::parse_error,
                        "edge endpoint \"" + to + "\" is not a declared node");
        arcs.emplace_back(f->second, t->second);
    }
    try {
        return Dag::build(static_cast<int>(nodes.size()), std::move(arcs), nodes);
    } catch (const Error& e) {
        if (e.code() == errc::cycle_detected) {
            std::string msg = "cycle:";
            for (NodeId v : e.witness()) msg += " " + nodes[v];
            throw Error(errc::cycle_detected, msg, e.witness());
        }
        if (e.code() == errc::self_loop || e.code() == errc::duplicate_arc ||
            e.code() == errc::antiparallel_arcs) {
            // re-raise with the offending labels instead of indices
            throw Error(e.code(), std::string(errc_name(e.code())) +
                                      " in input graph: " + e.what());
        }
        throw;
    }
}

Dag parse_json_graph(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(errc::parse_error, e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw Error(errc::parse_error,
                    "expected an object with \"nodes\" and \"edges\"");
    std::vector<std::string> nodes;
    for (const auto& n : doc["nodes"]) {
        if (!n.is_string())
            throw Error(errc::parse_error, "node labels must be strings");
        nodes.push_back(n.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
            !e[1].is_string())
            throw Error(errc::parse_error,
                        "edges must be [from, to] label pairs");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return build_from_document(nodes, edges);
}

// Minimal DOT tokenizer with line/column tracking.
class DotLexer {
public:
    struct Token {
        enum Kind { ident, arrow, lbrace, rbrace, semi, end } kind;
        std::string text;
        int line, col;
    };

    explicit DotLexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_space_and_comments();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) return {Token::end, "", line, col};
        char c = s_[pos_];
        if (c == '{') { advance(); return {Token::lbrace, "{", line, col}; }
        if (c == '}') { advance(); return {Token::rbrace, "}", line, col}; }
        if (c == ';') { advance(); return {Token::semi, ";", line, col}; }
        if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
            advance();
            advance();
            return {Token::arrow, "->", line, col};
        }
        if (c == '[') { // attribute list, ignored
            while (pos_ < s_.size() && s_[pos_] != ']') advance();
            if (pos_ >= s_.size()) fail("unterminated attribute list", line, col);
            advance();
            return next();
        }
        if (c == '"') {
            advance();
            std::string text;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                text += s_[pos_];
                advance();
            }
            if (pos_ >= s_.size()) fail("unterminated string", line, col);
            advance();
            return {Token::ident, text, line, col};
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                    s_[pos_] == '_')) {
                text += s_[pos_];
                advance();
            }
            return {Token::ident, text, line, col};
        }
        fail(std::string("unexpected character '") + c + "'", line, col);
        return {};
    }

    [[noreturn]] static void fail(const std::string& msg, int line, int col) {
        throw Error(errc::parse_error, "line " + std::to_string(line) +
                                           ", column " + std::to_string(col) +
                                           ": " + msg);
    }

private:
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space_and_comments() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

Dag parse_dot_graph(const std::string& text) {
    using Token = DotLexer::Token;
    DotLexer lex(text);

    auto expect = [&](Token::Kind kind, const char* what) {
        Token t = lex.next();
        if (t.kind != kind)
            DotLexer::fail(std::string("expected ") + what, t.line, t.col);
        return t;
    };

    Token t = expect(Token::ident, "\"digraph\"");
    if (t.text != "digraph")
        DotLexer::fail("expected \"digraph\"", t.line, t.col);
    t = lex.next(); // optional graph name
    if (t.kind == Token::ident) t = lex.next();
    if (t.kind != Token::lbrace) DotLexer::fail("expected '{'", t.line, t.col);

    std::vector<std::string> nodes;
    std::unordered_map<std::string, bool> seen;
    auto declare = [&](const std::string& name) {
        if (seen.emplace(name, true).second) nodes.push_back(name);
    };
    std::vector<std::pair<std::string, std::string>> edges;

    for (;;) {
        t = lex.next();
        if (t.kind == Token::rbrace) break;
        if (t.kind == Token::end)
            DotLexer::fail("unexpected end of input", t.line, t.col);
        if (t.kind != Token::ident)
            DotLexer::fail("expected a node identifier", t.line, t.col);
        std::string from = t.text;
        declare(from);
        t = lex.next();
        while (t.kind == Token::arrow) {
            Token to = lex.next();
            if (to.kind != Token::ident)
                DotLexer::fail("expected a node identifier after '->'", to.line,
                               to.col);
            declare(to.text);
            edges.emplace_back(from, to.text);
            from = to.text;
            t = lex.next();
        }
        if (t.kind != Token::semi)
            DotLexer::fail("expected ';'", t.line, t.col);
    }
    t = lex.next();
    if (t.kind != Token::end)
        DotLexer::fail("trailing content after '}'", t.line, t.col);
    return build_from_document(nodes, edges);
}

} // namespace

Dag parse_graph(const std::string& text, GraphFormat format) {
    return format == GraphFormat::json ? parse_json_graph(text)
                                       : parse_dot_graph(text);
}

std::string to_json(const Dag& d) {
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    for (NodeId v = 0; v < d.node_count(); ++v)
        doc["nodes"].push_back(d.display(v));
    doc["edges"] = nlohmann::json::array();
    for (const Arc& a : d.arcs())
        doc["edges"].push_back({d.display(a.first), d.display(a.second)});
    return doc.dump();
}

std::string render_trail(const Dag& d, const Trail& t) {
    std::ostringstream out;
    out << d.display(t.nodes[0]);
    for (std::size_t i = 0; i < t.dirs.size(); ++i)
        out << (t.dirs[i] == Direction::forward ? " -> " : " <- ")
            << d.display(t.nodes[i + 1]);
    return out.str();
}

Trail parse_trail(const Dag& d, const std::string& text) {
    std::istringstream in(text);
    std::string token;
    Trail t;
    bool want_node = true;
    while (in >> token) {
        if (want_node) {
            t.nodes.push_back(d.resolve(token));
        } else {
            if (token == "->")
                t.dirs.push_back(Direction::forward);
            else if (token == "<-")
                t.dirs.push_back(Direction::backward);
            else
                throw Error(errc::parse_error,
                            "expected an arrow, got \"" + token + "\"");
        }
        want_node = !want_node;
    }
    if (t.nodes.size() < 2 || t.dirs.size() != t.nodes.size() - 1)
        throw Error(errc::parse_error, "malformed trail \"" + text + "\"");
    for (std::size_t i = 0; i < t.dirs.size(); ++i) {
        NodeId u = t.nodes[i], v = t.nodes[i + 1];
        bool ok = t.dirs[i] == Direction::forward ? d.has_arc(u, v)
                                                  : d.has_arc(v, u);
        if (!ok)
            throw Error(errc::parse_error,
                        "no such arc between " + d.display(u) + " and " +
                            d.display(v));
    }
    return t;
}

std::string render_cycle(const Dag& d, const ActiveCycle& c) {
    std::ostringstream out;
    out << d.display(c.apex) << " <- " << render_trail(d, c.connector) << " -> "
        << d.display(c.apex);
    return out.str();
}

std::vector<std::string> split_labels(const std::string& csv) {
    std::vector<std::string> out;
    if (csv.empty()) return out;
    std::string::size_type start = 0;
    for (;;) {
        auto comma = csv.find(',', start);
        std::string item = csv.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        // trim surrounding blanks
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string()
                                             : item.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

NodeSet resolve_labels(const Dag& d, const std::vector<std::string>& names) {
    NodeSet s(d.node_count());
    for (const std::string& name : names) s.insert(d.resolve(name));
    return s;
}

} // namespace dagtrails
