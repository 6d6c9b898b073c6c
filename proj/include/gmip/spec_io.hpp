#pragma once

#include "gmip/graph_io.hpp"
#include "gmip/problem.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

namespace gmip {

/// Parses a problem spec. Lines are either `key = value` or table rows:
///   c u u' value        node cost (framework, mwscp, mlp)
///   d u v u' v' value   edge cost (framework)
///   t u v tau ...       forbidden values (framework, fsfa)
///   p u v tau value     penalty (framework); `p u v value` prices every forbidden value (fsfa)
///   w u value           node weight (wvcp)
///   D u' v' value       label distance (mlp)
///   L u u' ...          allowed targets of u
/// Graph paths are resolved through load, which receives them verbatim.
inline ProblemSpec parse_spec(const std::string& text, const std::string& source,
                              const std::function<ParsedGraph(const std::string&)>& load)
{
    using detail::parse_int;
    using detail::parse_weight;
    ProblemSpec s;
    bool have_problem = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& what) { throw ParseError(source, lineno, what); };

    while (std::getline(in, raw)) {
        ++lineno;
        auto line = detail::strip_comment(raw);
        if (auto eq = line.find('='); eq != std::string::npos) {
            auto key_toks = detail::split_ws(line.substr(0, eq));
            auto val_toks = detail::split_ws(line.substr(eq + 1));
            if (key_toks.size() != 1 || val_toks.size() != 1) fail("expected 'key = value'");
            const auto& key = key_toks[0];
            const auto& val = val_toks[0];
            auto num = [&] { return parse_int(val, source, lineno); };
            if (key == "problem") {
                auto p = parse_problem(val);
                if (!p) fail("unknown problem '" + val + "'");
                s.problem = *p;
                have_problem = true;
            } else if (key == "mode") {
                if (val == "optimize")
                    s.optimize = true;
                else if (val == "feasibility")
                    s.optimize = false;
                else
                    fail("mode must be optimize or feasibility");
            } else if (key == "K") {
                s.K = num();
            } else if (key == "k") {
                s.k = num();
            } else if (key == "m") {
                s.m = num();
            } else if (key == "n") {
                s.marks = num();
            } else if (key == "labels") {
                auto dots = val.find("..");
                if (dots == std::string::npos) fail("labels must be 'lo..hi'");
                s.labels = std::pair(parse_int(val.substr(0, dots), source, lineno), parse_int(val.substr(dots + 2), source, lineno));
            } else if (key == "graph" || key == "graph2") {
                ParsedGraph pg;
                try {
                    pg = load(val);
                } catch (const ParseError&) {
                    throw;
                } catch (const std::exception& ex) {
                    fail(ex.what());
                }
                if (key == "graph") {
                    s.g = pg.graph;
                    s.layered = pg.layered;
                } else {
                    s.g2 = pg.graph;
                }
            } else if (key == "variant") {
                if (val != "A" && val != "B" && val != "C") fail("variant must be A, B or C");
                s.variant = val[0];
            } else if (key == "objective") {
                auto f = parse_form(val);
                if (!f) fail("objective must be P1..P7");
                s.form = *f;
            } else if (key == "output") {
                s.output = num();
                if (s.output < 1 || s.output > 3) fail("output must be 1, 2 or 3");
            } else if (key == "regime") {
                auto r = parse_regime(val);
                if (!r) fail("unknown regime '" + val + "'");
                s.regime = *r;
            } else if (key == "induced") {
                if (val != "true" && val != "false") fail("induced must be true or false");
                s.induced = val == "true";
            } else if (key == "Zstar") {
                s.zstar = parse_weight(val, source, lineno);
            } else {
                fail("unknown key '" + key + "'");
            }
            continue;
        }

        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        const auto& kind = toks[0];
        auto arity = [&](std::size_t n, const char* form) {
            if (toks.size() != n) fail(std::string("expected '") + form + "'");
        };
        auto node = [&](std::size_t i) { return parse_int(toks[i], source, lineno); };
        auto value = [&](std::size_t i) { return parse_weight(toks[i], source, lineno); };
        if (kind == "c") {
            arity(4, "c <u> <u'> <value>");
            s.node_cost[{node(1), node(2)}] = value(3);
        } else if (kind == "d") {
            arity(6, "d <u> <v> <u'> <v'> <value>");
            s.edge_cost[{node(1), node(2), node(3), node(4)}] = value(5);
        } else if (kind == "t") {
            if (toks.size() < 3) fail("expected 't <u> <v> <int ...>'");
            auto& taus = s.forbidden[{std::min(node(1), node(2)), std::max(node(1), node(2))}];
            for (std::size_t i = 3; i < toks.size(); ++i) taus.insert(node(i));
        } else if (kind == "p") {
            if (toks.size() == 4)
                s.edge_penalty[{std::min(node(1), node(2)), std::max(node(1), node(2))}] = value(3);
            else if (toks.size() == 5)
                s.penalty[{node(1), node(2), node(3)}] = value(4);
            else
                fail("expected 'p <u> <v> [tau] <value>'");
        } else if (kind == "w") {
            arity(3, "w <u> <value>");
            s.node_weight[node(1)] = value(2);
        } else if (kind == "D") {
            arity(4, "D <u'> <v'> <value>");
            s.label_dist[{std::min(node(1), node(2)), std::max(node(1), node(2))}] = value(3);
        } else if (kind == "L") {
            if (toks.size() < 3) fail("expected 'L <u> <u'> ...'");
            auto& list = s.allow[node(1)];
            for (std::size_t i = 2; i < toks.size(); ++i) list.push_back(node(i));
        } else {
            fail("unknown line type '" + kind + "'");
        }
    }
    lineno = 0;
    if (!have_problem) fail("missing 'problem = ...'");
    return s;
}

inline ProblemSpec load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    auto dir = std::filesystem::path(path).parent_path();
    return parse_spec(buf.str(), path, [&](const std::string& rel) {
        auto p = std::filesystem::path(rel);
        return load_graph((p.is_absolute() ? p : dir / p).string());
    });
}

} // namespace gmip
