#pragma once

#include "gmip/framework.hpp"
#include "gmip/graph.hpp"
#include "gmip/model.hpp"
#include "gmip/problem.hpp"
#include "gmip/table2.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmip {

namespace enc_detail {

inline std::string nm(std::initializer_list<int> ids)
{
    std::string s;
    for (int v : ids) {
        if (!s.empty()) s += '_';
        s += std::to_string(v);
    }
    return s;
}

inline VarId x(const IPModel& m, NodeId u, NodeId up)
{
    auto v = m.find(Tag::x(u, up));
    if (!v) throw std::logic_error("missing x_" + std::to_string(u) + "_" + std::to_string(up));
    return *v;
}

/// The "<= K" side of a bounded problem: a continuous K under Min K, or the constant K in feasibility mode.
class Bound
{
public:
    Bound(IPModel& m, const ProblemSpec& s, Rational ub, Tag tag = Tag::bound()) : m_(m)
    {
        if (s.optimize) {
            var_ = m.continuous(tag, 0, std::max(ub, Rational(0)));
            m.set_objective(Sense::minimize, LinExpr{{*var_, 1}});
        } else {
            if (!s.K) throw std::invalid_argument("feasibility mode needs K");
            if (*s.K < 0) throw std::invalid_argument("K must be nonnegative");
            rhs_ = *s.K;
        }
    }

    void row(const std::string& name, LinExpr e)
    {
        if (var_) {
            e.add(*var_, -1);
            m_.add_constraint(name, std::move(e), Relation::le, 0);
        } else {
            m_.add_constraint(name, std::move(e), Relation::le, rhs_);
        }
    }

private:
    IPModel& m_;
    std::optional<VarId> var_;
    Rational rhs_ = 0;
};

inline Graph forward_digraph(int n, int max_gap)
{
    std::vector<Edge> arcs;
    for (NodeId a = 1; a <= n; ++a)
        for (NodeId b = a + 1; b <= n && b - a <= max_gap; ++b) arcs.push_back({a, b, Rational(b - a)});
    return Graph(n, Directedness::directed, std::move(arcs));
}

inline Graph stretch_graph(int n, int max_gap)
{
    std::vector<Edge> edges;
    for (NodeId a = 1; a <= n; ++a)
        for (NodeId b = a + 1; b <= n && b - a <= max_gap; ++b) edges.push_back({a, b, Rational(b - a)});
    return Graph(n, Directedness::undirected, std::move(edges));
}

inline Graph complete_with_loops(int n)
{
    std::vector<Edge> edges;
    for (NodeId a = 1; a <= n; ++a)
        for (NodeId b = a; b <= n; ++b) edges.push_back({a, b, 1});
    return Graph(n, Directedness::undirected, std::move(edges), true);
}

inline void need(bool ok, const std::string& what)
{
    if (!ok) throw std::invalid_argument(what);
}

inline void need_directed(const Graph& g, bool directed, const char* problem)
{
    need(g.is_directed() == directed, std::string(problem) + (directed ? " needs a directed graph" : " needs an undirected graph"));
}

inline void nonnegative_weights(const Graph& g, const char* problem)
{
    for (const auto& e : g.edges()) need(e.w >= 0, std::string(problem) + " needs nonnegative weights");
}

/// Rows y <= x + x keeping an unoriented y at 0 unless its edge really lands on {a,b}.
inline void y_exact(IPModel& m, VarId y, const std::string& name, NodeId u, NodeId v, NodeId a, NodeId b)
{
    m.add_constraint(name + "_1", LinExpr{{y, 1}, {x(m, u, a), -1}, {x(m, u, b), -1}}, Relation::le, 0);
    m.add_constraint(name + "_2", LinExpr{{y, 1}, {x(m, v, a), -1}, {x(m, v, b), -1}}, Relation::le, 0);
}

} // namespace enc_detail

inline IPModel encode_ktsp(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    need_directed(g, true, "k-TSP");
    const int n = g.node_count(), k = s.k;
    need(k >= 2 && k <= n, "k-TSP needs 2 <= k <= n");
    need(s.variant == 'A' || s.variant == 'B' || s.variant == 'C', "k-TSP variant must be A, B or C");
    if (s.variant != 'A') nonnegative_weights(g, "k-TSP");
    std::vector<Edge> arcs;
    for (NodeId a = 1; a < k; ++a) arcs.push_back({a, a + 1, 1});
    arcs.push_back({k, 1, 1});
    Graph circle(k, Directedness::directed, std::move(arcs));

    IPModel m;
    declare_all_x(m, n, k);
    add_table2_constraints(m, Table2::a2, g, circle);
    add_table2_constraints(m, Table2::b1, g, circle);
    // Whoever sits at position u' has an out-neighbour at the next position round the circle.
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId up = 1; up <= k; ++up) {
            LinExpr e{{x(m, u, up), 1}};
            for (NodeId v : g.neighbors(u)) e.add(x(m, v, up % k + 1), -1);
            m.add_constraint("succ_" + nm({u, up}), std::move(e), Relation::le, 0);
        }
    if (s.variant == 'A') return m;

    add_table2_constraints(m, Table2::g, g, circle);
    Rational total = 0, longest = 0;
    for (const auto& a : g.edges()) {
        total += a.w;
        longest = std::max(longest, a.w);
    }
    Bound K(m, s, s.variant == 'B' ? total : longest);
    if (s.variant == 'B') {
        LinExpr e;
        for (const auto& a : g.edges())
            for (const auto& ap : circle.edges()) e.add(*m.find(Tag::y(a.u, a.v, ap.u, ap.v)), a.w);
        K.row("dist", std::move(e));
    } else {
        for (const auto& a : g.edges())
            for (const auto& ap : circle.edges())
                K.row("bott_" + nm({a.u, a.v, ap.u, ap.v}), LinExpr{{*m.find(Tag::y(a.u, a.v, ap.u, ap.v)), a.w}});
    }
    return m;
}

inline IPModel encode_bandwidth(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    const int n = g.node_count();
    IPModel m;
    declare_all_x(m, n, n);
    if (!s.optimize) {
        need(s.K.has_value(), "bandwidth feasibility needs K");
        if (g.is_directed()) {
            Graph gp = forward_digraph(n, *s.K);
            add_table2_constraints(m, Table2::a1, g, gp);
            add_table2_constraints(m, Table2::a2, g, gp);
            add_table2_constraints(m, Table2::d1, g, gp);
            add_table2_constraints(m, Table2::e, g, gp, {ArcSemantics::homomorphism, ""});
        } else {
            Graph gp = stretch_graph(n, *s.K);
            add_table2_constraints(m, Table2::a1, g, gp);
            add_table2_constraints(m, Table2::a2, g, gp);
            add_table2_constraints(m, Table2::c1, g, gp);
        }
        return m;
    }
    Graph gp = g.is_directed() ? forward_digraph(n, n) : stretch_graph(n, n);
    add_table2_constraints(m, Table2::a1, g, gp);
    add_table2_constraints(m, Table2::a2, g, gp);
    if (g.is_directed()) {
        add_table2_constraints(m, Table2::e, g, gp, {ArcSemantics::homomorphism, ""});
        add_table2_constraints(m, Table2::g, g, gp);
    } else {
        add_table2_constraints(m, Table2::f, g, gp);
    }
    Bound K(m, s, n - 1);
    for (const auto& e : g.edges())
        for (const auto& ep : gp.edges())
            K.row("bw_" + nm({e.u, e.v, ep.u, ep.v}), LinExpr{{*m.find(Tag::y(e.u, e.v, ep.u, ep.v)), ep.w}});
    return m;
}

inline IPModel encode_arrangement(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    const int n = g.node_count();
    const bool directed = s.problem == Problem::dlap;
    need_directed(g, directed, problem_tag(s.problem));
    Graph gp = directed ? forward_digraph(n, n) : stretch_graph(n, n);
    IPModel m;
    declare_all_x(m, n, n);
    add_table2_constraints(m, Table2::a1, g, gp);
    add_table2_constraints(m, Table2::a2, g, gp);
    if (directed) {
        add_table2_constraints(m, Table2::e, g, gp, {ArcSemantics::homomorphism, ""});
        add_table2_constraints(m, Table2::g, g, gp);
    } else {
        add_table2_constraints(m, Table2::f, g, gp);
    }
    auto y = [&](const Edge& e, const Edge& ep) { return *m.find(Tag::y(e.u, e.v, ep.u, ep.v)); };

    switch (s.problem) {
    case Problem::lap:
    case Problem::dlap: {
        nonnegative_weights(g, problem_tag(s.problem));
        Rational ub = 0;
        for (const auto& e : g.edges()) ub += e.w * (n - 1);
        Bound K(m, s, ub);
        LinExpr total;
        for (const auto& e : g.edges())
            for (const auto& ep : gp.edges()) total.add(y(e, ep), e.w * ep.w);
        K.row("cost", std::move(total));
        break;
    }
    case Problem::pmp: {
        // c(u,u') = u', d({u,v},{u',v'}) = -min(u',v'); each y counted once per edge.
        LinExpr obj;
        for (NodeId u = 1; u <= n; ++u) {
            auto Ku = m.continuous(Tag::bound_u(u), 0, n);
            obj.add(Ku, 1);
            for (NodeId v : g.neighbors(u)) {
                LinExpr e;
                for (NodeId up = 1; up <= n; ++up) e.add(x(m, u, up), up);
                for (const auto& ep : gp.edges())
                    e.add(*m.find(Tag::y(std::min(u, v), std::max(u, v), ep.u, ep.v)), -std::min(ep.u, ep.v));
                e.add(Ku, -1);
                m.add_constraint("prof_" + nm({u, v}), std::move(e), Relation::le, 0);
            }
        }
        // Negative edge costs would let a spurious y lower K_u.
        for (const auto& e : g.edges())
            for (const auto& ep : gp.edges()) y_exact(m, y(e, ep), "yx_" + nm({e.u, e.v, ep.u, ep.v}), e.u, e.v, ep.u, ep.v);
        if (s.optimize) {
            m.set_objective(Sense::minimize, std::move(obj));
        } else {
            need(s.K.has_value(), "profile feasibility needs K");
            m.add_constraint("profile", std::move(obj), Relation::le, *s.K);
        }
        break;
    }
    case Problem::mclap: {
        Bound K(m, s, static_cast<long long>(g.edge_count()));
        for (NodeId i = 1; i < n; ++i) {
            LinExpr cut;
            for (const auto& e : g.edges())
                for (const auto& ep : gp.edges())
                    if (ep.u <= i && i < ep.v) cut.add(y(e, ep), 1);
            K.row("cut_" + std::to_string(i), std::move(cut));
        }
        break;
    }
    default: throw std::logic_error("not an arrangement problem");
    }
    return m;
}

inline IPModel encode_isomorphism(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    const Graph& h = s.g2;
    need_directed(g, false, "isomorphism");
    need_directed(h, false, "isomorphism");
    if (s.problem == Problem::gi)
        need(g.node_count() == h.node_count(), "graph isomorphism needs equal node counts");
    else
        need(g.node_count() >= h.node_count(), "subgraph isomorphism needs |V| >= |V'|");
    IPModel m;
    declare_all_x(m, g.node_count(), h.node_count());
    if (s.problem == Problem::gi) {
        add_table2_constraints(m, Table2::a1, g, h);
        add_table2_constraints(m, Table2::a2, g, h);
        add_table2_constraints(m, Table2::c1, g, h);
        add_table2_constraints(m, Table2::c2, g, h);
        return m;
    }
    add_table2_constraints(m, Table2::a2, g, h);
    add_table2_constraints(m, Table2::b1, g, h);
    if (s.problem == Problem::isi) add_table2_constraints(m, Table2::c1, g, h);
    add_table2_constraints(m, Table2::c2, g, h);
    return m;
}

inline IPModel encode_common_subgraph(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    const Graph& h = s.g2;
    const bool directed = s.problem == Problem::mism || s.problem == Problem::msm;
    need_directed(g, directed, problem_tag(s.problem));
    need_directed(h, directed, problem_tag(s.problem));
    const int n = g.node_count(), np = h.node_count();
    IPModel m;
    declare_all_x(m, n, np);
    LinExpr obj;
    auto le = [&](const std::string& name, VarId a, VarId b) {
        m.add_constraint(name, LinExpr{{a, 1}, {b, -1}}, Relation::le, 0);
    };
    switch (s.problem) {
    case Problem::lcs:
        add_table2_constraints(m, Table2::b1, g, h);
        add_table2_constraints(m, Table2::b2, g, h);
        for (const auto& e : g.edges())
            for (const auto& ep : h.edges()) {
                auto y = m.binary(Tag::y(e.u, e.v, ep.u, ep.v));
                auto z = m.binary(Tag::z(e.u, e.v, ep.u, ep.v));
                auto id = nm({e.u, e.v, ep.u, ep.v});
                le("ly1_" + id, y, x(m, e.u, ep.u));
                le("ly2_" + id, y, x(m, e.v, ep.v));
                le("lz1_" + id, z, x(m, e.u, ep.v));
                le("lz2_" + id, z, x(m, e.v, ep.u));
                obj.add(y, 1).add(z, 1);
            }
        break;
    case Problem::mism:
        add_table2_constraints(m, Table2::b1, g, h);
        add_table2_constraints(m, Table2::b2, g, h);
        [[fallthrough]];
    case Problem::msm:
        add_table2_constraints(m, Table2::d1, g, h);
        add_table2_constraints(m, Table2::d2, g, h);
        add_table2_constraints(m, Table2::e, g, h, {ArcSemantics::iff, ""});
        if (s.problem == Problem::msm) {
            add_table2_constraints(m, Table2::h2, g, h);
            add_table2_constraints(m, Table2::i2, g, h);
        }
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId up = 1; up <= np; ++up) obj.add(x(m, u, up), 1);
        break;
    case Problem::cmp:
        add_table2_constraints(m, Table2::b1, g, h);
        add_table2_constraints(m, Table2::b2, g, h);
        // No two alignments cross.
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId v = u + 1; v <= n; ++v)
                for (NodeId a = 1; a <= np; ++a)
                    for (NodeId b = a + 1; b <= np; ++b)
                        m.add_constraint("nc_" + nm({u, v, a, b}), LinExpr{{x(m, u, b), 1}, {x(m, v, a), 1}}, Relation::le, 1);
        for (const auto& e : g.edges())
            for (const auto& ep : h.edges()) {
                auto y = m.binary(Tag::y(e.u, e.v, ep.u, ep.v));
                auto id = nm({e.u, e.v, ep.u, ep.v});
                le("ly1_" + id, y, x(m, e.u, ep.u));
                le("ly2_" + id, y, x(m, e.v, ep.v));
                obj.add(y, 1);
            }
        break;
    default: throw std::logic_error("not a common-subgraph problem");
    }
    m.set_objective(Sense::maximize, std::move(obj));
    return m;
}

inline IPModel encode_coloring(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    const int n = g.node_count();
    need_directed(g, s.problem == Problem::dgh, problem_tag(s.problem));
    IPModel m;
    auto colors = [&]() {
        int K = s.K ? *s.K : n;
        need(K >= 1, "at least one color is needed");
        return K;
    };
    switch (s.problem) {
    case Problem::gkc:
    case Problem::gc:
    case Problem::wvcp: {
        need(s.problem != Problem::gkc || s.K.has_value(), "K-colorability needs K");
        const int K = colors();
        Graph gp = Graph::complete(K);
        declare_all_x(m, n, K);
        add_table2_constraints(m, Table2::a1, g, gp);
        add_table2_constraints(m, Table2::i1, g, gp);
        if (s.problem == Problem::gc) {
            auto Kv = m.continuous(Tag::bound(), 0, K);
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId up = 1; up <= K; ++up)
                    m.add_constraint("top_" + nm({u, up}), LinExpr{{x(m, u, up), up}, {Kv, -1}}, Relation::le, 0);
            m.set_objective(Sense::minimize, LinExpr{{Kv, 1}});
        } else if (s.problem == Problem::wvcp) {
            Rational heaviest = 0;
            for (NodeId u = 1; u <= n; ++u) {
                need(s.weight_of(u) >= 0, "weighted vertex coloring needs nonnegative weights");
                heaviest = std::max(heaviest, s.weight_of(u));
            }
            LinExpr obj;
            for (NodeId up = 1; up <= K; ++up) {
                auto Kp = m.continuous(Tag::bound_up(up), 0, heaviest);
                obj.add(Kp, 1);
                for (NodeId u = 1; u <= n; ++u)
                    m.add_constraint("wt_" + nm({u, up}), LinExpr{{x(m, u, up), s.weight_of(u)}, {Kp, -1}}, Relation::le, 0);
            }
            m.set_objective(Sense::minimize, std::move(obj));
        }
        return m;
    }
    case Problem::gh:
        need_directed(s.g2, false, "graph homomorphism");
        declare_all_x(m, n, s.g2.node_count());
        add_table2_constraints(m, Table2::a1, g, s.g2);
        add_table2_constraints(m, Table2::c1, g, s.g2);
        add_table2_constraints(m, Table2::i1, g, s.g2);
        return m;
    case Problem::dgh:
        need_directed(s.g2, true, "directed graph homomorphism");
        declare_all_x(m, n, s.g2.node_count());
        add_table2_constraints(m, Table2::a1, g, s.g2);
        add_table2_constraints(m, Table2::d1, g, s.g2);
        add_table2_constraints(m, Table2::e, g, s.g2, {ArcSemantics::homomorphism, ""});
        add_table2_constraints(m, Table2::i2, g, s.g2);
        return m;
    case Problem::mwscp_a:
    case Problem::mwscp_b: {
        need(s.K.has_value(), "weight subset coloring needs K");
        const int K = colors();
        Graph gp = Graph::complete(K);
        declare_all_x(m, n, K);
        add_table2_constraints(m, Table2::b1, g, gp);
        add_table2_constraints(m, Table2::i1, g, gp);
        LinExpr z;
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId up = 1; up <= K; ++up) z.add(x(m, u, up), s.cost_of(u, up));
        if (s.problem == Problem::mwscp_a) {
            m.set_objective(Sense::maximize, std::move(z));
            return m;
        }
        need(s.zstar.has_value(), "mwscp-b needs Zstar");
        auto l = m.continuous(Tag::bound(), 0, K);
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId up = 1; up <= K; ++up)
                m.add_constraint("top_" + nm({u, up}), LinExpr{{x(m, u, up), up}, {l, -1}}, Relation::le, 0);
        m.add_constraint("weight", std::move(z), Relation::eq, *s.zstar);
        m.set_objective(Sense::minimize, LinExpr{{l, 1}});
        return m;
    }
    case Problem::mcp:
    case Problem::mwis: {
        const int K = s.problem == Problem::mwis ? 1 : colors();
        std::vector<Edge> loops;
        for (NodeId a = 1; a <= K; ++a) loops.push_back({a, a, 1});
        Graph gp(K, Directedness::undirected, std::move(loops), true);
        declare_all_x(m, n, K);
        add_table2_constraints(m, s.problem == Problem::mwis ? Table2::b1 : Table2::a1, g, gp);
        Graph holes = complement(g);
        for (const auto& h : holes.edges())
            for (NodeId a = 1; a <= K; ++a)
                m.add_constraint("ce_" + nm({h.u, h.v, a}), LinExpr{{x(m, h.u, a), 1}, {x(m, h.v, a), 1}}, Relation::le, 1);
        LinExpr obj;
        for (const auto& e : g.edges())
            for (NodeId a = 1; a <= K; ++a) {
                auto y = m.binary(Tag::y(e.u, e.v, a, a));
                auto id = nm({e.u, e.v, a});
                m.add_constraint("ly1_" + id, LinExpr{{y, 1}, {x(m, e.u, a), -1}}, Relation::le, 0);
                m.add_constraint("ly2_" + id, LinExpr{{y, 1}, {x(m, e.v, a), -1}}, Relation::le, 0);
                // A negative weight would otherwise be dodged by leaving y at 0.
                if (e.w < 0)
                    m.add_constraint("ly3_" + id, LinExpr{{x(m, e.u, a), 1}, {x(m, e.v, a), 1}, {y, -1}}, Relation::le, 1);
                obj.add(y, e.w);
            }
        m.set_objective(Sense::maximize, std::move(obj));
        return m;
    }
    default: throw std::logic_error("not a coloring problem");
    }
}

inline IPModel encode_labeling(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    need_directed(g, false, problem_tag(s.problem));
    need(s.labels.has_value(), "labeling needs labels = lo..hi");
    const auto [lo, hi] = *s.labels;
    need(lo <= hi, "empty label range");
    const int n = g.node_count(), L = hi - lo + 1;
    auto label = [&](NodeId id) { return lo + id - 1; };

    if (s.problem == Problem::fsfa) {
        MatchingInstance inst;
        inst.g = g;
        inst.gp = complete_with_loops(L);
        inst.regime = Regime::many_to_one;
        for (const auto& e : g.edges()) {
            int t = s.threshold(e.u, e.v);
            if (t < 0) continue;
            auto& taus = inst.forbidden[{e.u, e.v}];
            for (int tau = 0; tau <= t; ++tau) {
                taus.insert(tau);
                inst.penalty[{e.u, e.v, tau}] = s.fsfa_penalty(e.u, e.v);
            }
            for (const auto& ep : inst.gp.edges())
                if (ep.u != ep.v) inst.edge_cost[{e.u, e.v, ep.u, ep.v}] = std::abs(label(ep.u) - label(ep.v));
        }
        return build_output3(inst);
    }

    need(s.m >= s.k && s.k >= 0, "labeling needs m >= k >= 0");
    Graph gp = stretch_graph(L, L);
    IPModel m;
    declare_all_x(m, n, L);
    add_table2_constraints(m, Table2::a1, g, gp);
    auto separate = [&](const std::string& tag, NodeId u, NodeId v, int sep) {
        for (NodeId a = 1; a <= L; ++a)
            for (NodeId b = a; b <= L; ++b) {
                if (b - a >= sep) continue;
                if (a == b) {
                    m.add_constraint(tag + "s_" + nm({u, v, a}), LinExpr{{x(m, u, a), 1}, {x(m, v, a), 1}}, Relation::le, 1);
                    continue;
                }
                auto id = nm({u, v, a, b});
                m.add_constraint(tag + "_" + id + "_1", LinExpr{{x(m, u, a), 1}, {x(m, v, b), 1}}, Relation::le, 1);
                m.add_constraint(tag + "_" + id + "_2", LinExpr{{x(m, u, b), 1}, {x(m, v, a), 1}}, Relation::le, 1);
            }
    };
    for (const auto& e : g.edges()) separate("adj", e.u, e.v, s.m);
    for (auto [u, v] : distance_two_pairs(g)) separate("d2", u, v, s.k);
    if (s.optimize) {
        auto lam = m.continuous(Tag::bound(), 0, std::max(hi, 0));
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId a = 1; a <= L; ++a)
                m.add_constraint("span_" + nm({u, a}), LinExpr{{x(m, u, a), label(a)}, {lam, -1}}, Relation::le, 0);
        m.set_objective(Sense::minimize, LinExpr{{lam, 1}});
    }
    return m;
}

inline MatchingInstance metric_labeling_instance(const ProblemSpec& s)
{
    using namespace enc_detail;
    need_directed(s.g, false, "metric labeling");
    need(s.labels.has_value() && s.labels->first == 1, "metric labeling needs labels = 1..L");
    need(s.form == ObjectiveForm::P2 || s.form == ObjectiveForm::P4, "metric labeling objective must be P2 or P4");
    const int L = s.labels->second;
    MatchingInstance inst;
    inst.g = s.g;
    inst.gp = complete_with_loops(L);
    inst.regime = Regime::many_to_one;
    inst.allow.assign(static_cast<std::size_t>(s.g.node_count() + 1), {});
    for (const auto& [u, list] : s.allow) {
        need(u >= 1 && u <= s.g.node_count(), "allow set for unknown node");
        inst.allow[u] = list;
    }
    inst.node_cost = s.node_cost;
    for (const auto& [key, val] : s.label_dist)
        need(key.first >= 1 && key.second <= L, "label distance names a label outside 1..L");
    for (const auto& e : s.g.edges())
        for (const auto& ep : inst.gp.edges()) {
            Rational d = e.w * s.dist_of(ep.u, ep.v);
            if (d != 0) inst.edge_cost[{e.u, e.v, ep.u, ep.v}] = d;
        }
    return inst;
}

inline IPModel encode_metric_labeling(const ProblemSpec& s)
{
    return build_output2(metric_labeling_instance(s), s.form);
}

inline IPModel encode_golomb(const ProblemSpec& s)
{
    using namespace enc_detail;
    need(s.K.has_value(), "Golomb ruler needs K");
    const int n = s.marks, K = *s.K;
    need(n >= 1, "Golomb ruler needs at least one mark");
    need(n <= K + 1, "Golomb ruler needs n <= K + 1");
    // Marks 1..n against positions 0..K, stored as target ids 1..K+1.
    Graph g = forward_digraph(n, n);
    Graph gp = forward_digraph(K + 1, K + 1);
    IPModel m;
    declare_all_x(m, n, K + 1);
    add_table2_constraints(m, Table2::a1, g, gp);
    add_table2_constraints(m, Table2::b2, g, gp);
    add_table2_constraints(m, Table2::g, g, gp);
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId v = u + 1; v <= n; ++v)
            for (NodeId a = 1; a <= K + 1; ++a)
                for (NodeId b = a + 1; b <= K + 1; ++b)
                    m.add_constraint("nc_" + nm({u, v, a, b}), LinExpr{{x(m, u, b), 1}, {x(m, v, a), 1}}, Relation::le, 1);
    for (int k = 1; k <= K; ++k) {
        LinExpr e;
        for (const auto& a : g.edges())
            for (const auto& ap : gp.edges())
                if (ap.v - ap.u == k) e.add(*m.find(Tag::y(a.u, a.v, ap.u, ap.v)), 1);
        if (!e.empty()) m.add_constraint("diff_" + std::to_string(k), std::move(e), Relation::le, 1);
    }
    m.add_constraint("anchor", LinExpr{{x(m, 1, 1), 1}}, Relation::eq, 1);
    if (s.optimize) {
        auto len = m.continuous(Tag::bound(), 0, K);
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId a = 2; a <= K + 1; ++a)
                m.add_constraint("len_" + nm({u, a}), LinExpr{{x(m, u, a), a - 1}, {len, -1}}, Relation::le, 0);
        m.set_objective(Sense::minimize, LinExpr{{len, 1}});
    }
    return m;
}

inline bool connected(const Graph& g)
{
    const int n = g.node_count();
    if (n == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
    std::deque<NodeId> q{1};
    seen[1] = 1;
    int count = 1;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop_front();
        for (NodeId v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push_back(v);
            }
    }
    return count == n;
}

inline IPModel encode_igc(const ProblemSpec& s)
{
    using namespace enc_detail;
    const Graph& g = s.g;
    need_directed(g, false, "interval graph completion");
    need(connected(g), "interval graph completion needs a connected graph");
    const int n = g.node_count();
    Graph gp = Graph::complete(n);
    IPModel m;
    declare_all_x(m, n, n);
    add_table2_constraints(m, Table2::a1, g, gp);
    add_table2_constraints(m, Table2::a2, g, gp);
    // y_e = 1 puts the non-edge e into the fill set F.
    LinExpr obj;
    Graph holes = complement(g);
    for (const auto& h : holes.edges()) obj.add(m.binary(Tag::ye(h.u, h.v)), 1);
    for (const auto& e : g.edges())
        for (auto [u, v] : {std::pair(e.u, e.v), std::pair(e.v, e.u)})
            for (NodeId z = 1; z <= n; ++z) {
                if (z == u || z == v || g.has_edge(z, v)) continue;
                auto y = *m.find(Tag::ye(std::min(z, v), std::max(z, v)));
                for (NodeId a = 1; a <= n; ++a)
                    for (NodeId c = a + 1; c <= n; ++c)
                        for (NodeId b = c + 1; b <= n; ++b)
                            m.add_constraint("fill_" + nm({u, v, z, a, c, b}),
                                             LinExpr{{x(m, u, a), 1}, {x(m, v, b), 1}, {x(m, z, c), 1}, {y, -1}}, Relation::le, 2);
            }
    m.set_objective(Sense::minimize, std::move(obj));
    return m;
}

inline IPModel encode_mlcm(const ProblemSpec& s)
{
    using namespace enc_detail;
    need(s.layered.has_value(), "crossing minimisation needs a layered graph");
    const LayeredGraph& lg = *s.layered;
    IPModel m;
    for (int l = 0; l < lg.layer_count(); ++l) {
        const auto& layer = lg.layer(l);
        const int nl = static_cast<int>(layer.size());
        for (NodeId u : layer)
            for (int i = 1; i <= nl; ++i) m.binary(Tag::x(u, i));
        for (NodeId u : layer) {
            LinExpr e;
            for (int i = 1; i <= nl; ++i) e.add(x(m, u, i), 1);
            m.add_constraint("pos_" + std::to_string(u), std::move(e), Relation::eq, 1);
        }
        for (int i = 1; i <= nl; ++i) {
            LinExpr e;
            for (NodeId u : layer) e.add(x(m, u, i), 1);
            m.add_constraint("slot_" + nm({l + 1, i}), std::move(e), Relation::eq, 1);
        }
    }
    LinExpr obj;
    for (int l = 0; l + 1 < lg.layer_count(); ++l) {
        auto arcs = lg.arcs_from_layer(l);
        const int nl = static_cast<int>(lg.layer(l).size()), nn = static_cast<int>(lg.layer(l + 1).size());
        for (std::size_t p = 0; p < arcs.size(); ++p)
            for (std::size_t q = p + 1; q < arcs.size(); ++q) {
                auto [u, up] = arcs[p];
                auto [v, vp] = arcs[q];
                // Arcs sharing an endpoint never cross.
                if (u == v || up == vp) continue;
                auto y = m.binary(Tag::y(u, up, v, vp));
                obj.add(y, 1);
                auto id = nm({u, up, v, vp});
                for (int i = 1; i <= nl; ++i)
                    for (int j = i + 1; j <= nl; ++j)
                        for (int ip = 1; ip <= nn; ++ip)
                            for (int jp = ip + 1; jp <= nn; ++jp) {
                                auto at = "_" + nm({i, j, ip, jp});
                                m.add_constraint("cr1_" + id + at,
                                                 LinExpr{{x(m, u, i), 1}, {x(m, v, j), 1}, {x(m, vp, ip), 1}, {x(m, up, jp), 1}, {y, -1}},
                                                 Relation::le, 3);
                                m.add_constraint("cr2_" + id + at,
                                                 LinExpr{{x(m, v, i), 1}, {x(m, u, j), 1}, {x(m, up, ip), 1}, {x(m, vp, jp), 1}, {y, -1}},
                                                 Relation::le, 3);
                            }
            }
    }
    m.set_objective(Sense::minimize, std::move(obj));
    return m;
}

inline IPModel encode_framework(const ProblemSpec& s)
{
    auto inst = to_instance(s);
    switch (s.output) {
    case 1: return build_output1(inst);
    case 2: return build_output2(inst, s.form);
    case 3: return build_output3(inst);
    }
    throw std::invalid_argument("output must be 1, 2 or 3");
}

/// Compiles any named problem.
inline IPModel encode(const ProblemSpec& s)
{
    switch (s.problem) {
    case Problem::ktsp: return encode_ktsp(s);
    case Problem::bandwidth: return encode_bandwidth(s);
    case Problem::lap:
    case Problem::dlap:
    case Problem::pmp:
    case Problem::mclap: return encode_arrangement(s);
    case Problem::gi:
    case Problem::si:
    case Problem::isi: return encode_isomorphism(s);
    case Problem::lcs:
    case Problem::mism:
    case Problem::msm:
    case Problem::cmp: return encode_common_subgraph(s);
    case Problem::gkc:
    case Problem::gc:
    case Problem::gh:
    case Problem::dgh:
    case Problem::mwscp_a:
    case Problem::mwscp_b:
    case Problem::wvcp:
    case Problem::mcp:
    case Problem::mwis: return encode_coloring(s);
    case Problem::gl:
    case Problem::fsfa: return encode_labeling(s);
    case Problem::mlp: return encode_metric_labeling(s);
    case Problem::golomb: return encode_golomb(s);
    case Problem::igc: return encode_igc(s);
    case Problem::mlcm: return encode_mlcm(s);
    case Problem::framework: return encode_framework(s);
    }
    throw std::logic_error("unknown problem");
}

/// Reads the matching (or relation) back out of a 0/1 point in the problem's own numbering.
inline Witness decode_witness(const ProblemSpec& s, const IPModel& m, const Assignment& a)
{
    Witness w;
    if (s.problem == Problem::msm) {
        for (std::size_t j = 0; j < m.var_count(); ++j) {
            const auto& v = m.variable(static_cast<VarId>(j));
            if (v.tag.kind == Tag::Kind::x && a[j] == 1) w.relation.emplace_back(v.tag.idx[0], v.tag.idx[1]);
        }
        return w;
    }
    const int n = s.problem == Problem::golomb ? s.marks
                  : s.problem == Problem::mlcm ? s.layered->node_count()
                                               : s.g.node_count();
    int shift = 0;
    if (s.problem == Problem::golomb) shift = -1;
    if ((s.problem == Problem::gl || s.problem == Problem::fsfa) && s.labels) shift = s.labels->first - 1;
    auto f = decode(m, a, n);
    w.f.assign(f.size(), std::nullopt);
    for (std::size_t u = 1; u < f.size(); ++u)
        if (f[u]) w.f[u] = *f[u] + shift;
    return w;
}

} // namespace gmip
