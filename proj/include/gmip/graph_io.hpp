#pragma once

#include "gmip/graph.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmip {

/// Input error carrying the 1-based line it was found on (0 when not line-specific).
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& source, int line, const std::string& what)
        : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

struct ParsedGraph
{
    Graph graph;
    std::optional<LayeredGraph> layered;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline int parse_int(const std::string& tok, const std::string& source, int line)
{
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParseError(source, line, "expected an integer, got '" + tok + "'");
    }
}

inline Rational parse_weight(const std::string& tok, const std::string& source, int line)
{
    try {
        return parse_rational(tok);
    } catch (const std::exception&) {
        throw ParseError(source, line, "expected a number, got '" + tok + "'");
    }
}

inline std::string strip_comment(const std::string& line)
{
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

} // namespace detail

/// Parses the line-based graph format:
///   p graph <n> <m> <directed|undirected> [selfloops]
///   e <u> <v> [w]
///   l <layer-index> <node-id ...>
inline ParsedGraph parse_graph(const std::string& text, const std::string& source = "<graph>")
{
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_header = false;
    int n = 0;
    int declared_m = 0;
    Directedness dir = Directedness::undirected;
    bool loops = false;
    std::vector<Edge> edges;
    std::map<int, std::vector<NodeId>> layers;

    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = detail::split_ws(detail::strip_comment(raw));
        if (toks.empty()) continue;
        const auto& kind = toks[0];
        if (kind == "p") {
            if (have_header) throw ParseError(source, lineno, "duplicate header");
            if (toks.size() < 5 || toks.size() > 6 || toks[1] != "graph")
                throw ParseError(source, lineno, "header must be 'p graph <n> <m> <directed|undirected> [selfloops]'");
            n = detail::parse_int(toks[2], source, lineno);
            declared_m = detail::parse_int(toks[3], source, lineno);
            if (n < 0 || declared_m < 0) throw ParseError(source, lineno, "negative size in header");
            if (toks[4] == "directed")
                dir = Directedness::directed;
            else if (toks[4] != "undirected")
                throw ParseError(source, lineno, "expected 'directed' or 'undirected', got '" + toks[4] + "'");
            if (toks.size() == 6) {
                if (toks[5] != "selfloops") throw ParseError(source, lineno, "unknown header flag '" + toks[5] + "'");
                loops = true;
            }
            have_header = true;
        } else if (kind == "e") {
            if (!have_header) throw ParseError(source, lineno, "edge before header");
            if (toks.size() < 3 || toks.size() > 4) throw ParseError(source, lineno, "edge line must be 'e <u> <v> [w]'");
            Edge e{detail::parse_int(toks[1], source, lineno), detail::parse_int(toks[2], source, lineno), 1};
            if (toks.size() == 4) e.w = detail::parse_weight(toks[3], source, lineno);
            if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
                throw ParseError(source, lineno, "edge endpoint out of range 1.." + std::to_string(n));
            edges.push_back(e);
        } else if (kind == "l") {
            if (!have_header) throw ParseError(source, lineno, "layer before header");
            if (toks.size() < 2) throw ParseError(source, lineno, "layer line must be 'l <index> <node ...>'");
            int idx = detail::parse_int(toks[1], source, lineno);
            if (layers.count(idx)) throw ParseError(source, lineno, "duplicate layer " + std::to_string(idx));
            auto& nodes = layers[idx];
            for (std::size_t i = 2; i < toks.size(); ++i) nodes.push_back(detail::parse_int(toks[i], source, lineno));
        } else {
            throw ParseError(source, lineno, "unknown line type '" + kind + "'");
        }
    }
    if (!have_header) throw ParseError(source, 0, "missing 'p graph' header");
    if (static_cast<int>(edges.size()) != declared_m)
        throw ParseError(source, 0,
                         "header declares " + std::to_string(declared_m) + " edges, found " + std::to_string(edges.size()));

    ParsedGraph out;
    try {
        out.graph = Graph(n, dir, edges, loops);
        if (!layers.empty()) {
            std::vector<std::vector<NodeId>> ordered;
            int expect = layers.begin()->first;
            for (auto& [idx, nodes] : layers) {
                if (idx != expect) throw std::invalid_argument("layer indices must be consecutive");
                ++expect;
                ordered.push_back(nodes);
            }
            std::vector<std::pair<NodeId, NodeId>> arcs;
            for (const auto& e : out.graph.edges()) arcs.emplace_back(e.u, e.v);
            LayeredGraph lg(std::move(ordered), std::move(arcs));
            if (lg.node_count() != n) throw std::invalid_argument("layers must cover all nodes exactly once");
            out.layered = std::move(lg);
        }
    } catch (const std::invalid_argument& ex) {
        throw ParseError(source, 0, ex.what());
    }
    return out;
}

inline ParsedGraph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), path);
}

inline std::string format_graph(const Graph& g)
{
    std::ostringstream out;
    out << "p graph " << g.node_count() << ' ' << g.edge_count() << ' '
        << (g.is_directed() ? "directed" : "undirected") << (g.allows_self_loops() ? " selfloops" : "") << '\n';
    for (const auto& e : g.edges()) {
        out << "e " << e.u << ' ' << e.v;
        if (e.w != 1) out << ' ' << to_string(e.w);
        out << '\n';
    }
    return out.str();
}

} // namespace gmip
