#pragma once

#include "gmip/graph.hpp"
#include "gmip/model.hpp"

#include <string>

namespace gmip {

/// The reusable assignment constraint families.
enum class Table2 { a1, a2, b1, b2, c1, c2, d1, d2, e, f, g, h1, h2, i1, i2 };

inline const char* table2_name(Table2 k)
{
    switch (k) {
    case Table2::a1: return "a1";
    case Table2::a2: return "a2";
    case Table2::b1: return "b1";
    case Table2::b2: return "b2";
    case Table2::c1: return "c1";
    case Table2::c2: return "c2";
    case Table2::d1: return "d1";
    case Table2::d2: return "d2";
    case Table2::e: return "e";
    case Table2::f: return "f";
    case Table2::g: return "g";
    case Table2::h1: return "h1";
    case Table2::h2: return "h2";
    case Table2::i1: return "i1";
    case Table2::i2: return "i2";
    }
    return "?";
}

/// How (e) treats antiparallel arc pairs.
///   plain: every (u,v) in A, (u',v') in A' gets x_uv' + x_vu' <= 1.
///   homomorphism: skipped when (v',u') is also in A' (the reversed image is then an arc).
///   iff: skipped when (v,u) in A and (v',u') in A' (the reversed pairing preserves arcs both ways).
enum class ArcSemantics { plain, homomorphism, iff };

struct Table2Options
{
    ArcSemantics arcs = ArcSemantics::plain;
    std::string prefix; ///< prepended to row names so a family can be emitted twice
};

namespace detail {

inline std::string pair_name(int a, int b) { return std::to_string(a) + "_" + std::to_string(b); }

inline std::string quad_name(int u, int v, int up, int vp) { return pair_name(u, v) + "__" + pair_name(up, vp); }

inline VarId need_x(const IPModel& m, NodeId u, NodeId up)
{
    auto id = m.find(Tag::x(u, up));
    if (!id) throw ModelError("missing variable " + tag_name(Tag::x(u, up)));
    return *id;
}

inline void need_undirected(const Graph& g, const char* what)
{
    if (g.is_directed()) throw ModelError(std::string(what) + " needs undirected graphs");
}

inline void need_directed(const Graph& g, const char* what)
{
    if (!g.is_directed()) throw ModelError(std::string(what) + " needs directed graphs");
}

} // namespace detail

/// Appends one constraint family over pattern g and target gp.
/// All x_{uu'} for u in V, u' in V' must already be declared; y variables of (f)/(g) are declared here.
inline void add_table2_constraints(IPModel& m, Table2 kind, const Graph& g, const Graph& gp,
                                   const Table2Options& opt = {})
{
    using detail::need_x;
    using detail::quad_name;
    const int n = g.node_count();
    const int np = gp.node_count();
    const std::string base = opt.prefix + table2_name(kind) + "_";
    auto pair_row = [&](const std::string& name, VarId a, VarId b) {
        m.add_constraint(name, LinExpr{{a, 1}, {b, 1}}, Relation::le, 1);
    };
    auto link_row = [&](const std::string& name, VarId a, VarId b, VarId y) {
        m.add_constraint(name, LinExpr{{a, 1}, {b, 1}, {y, -1}}, Relation::le, 1);
    };

    switch (kind) {
    case Table2::a1:
    case Table2::b1:
        for (NodeId u = 1; u <= n; ++u) {
            LinExpr e;
            for (NodeId up = 1; up <= np; ++up) e.add(need_x(m, u, up), 1);
            m.add_constraint(base + std::to_string(u), std::move(e), kind == Table2::a1 ? Relation::eq : Relation::le, 1);
        }
        break;
    case Table2::a2:
    case Table2::b2:
        for (NodeId up = 1; up <= np; ++up) {
            LinExpr e;
            for (NodeId u = 1; u <= n; ++u) e.add(need_x(m, u, up), 1);
            m.add_constraint(base + std::to_string(up), std::move(e), kind == Table2::a2 ? Relation::eq : Relation::le, 1);
        }
        break;
    case Table2::c1:
    case Table2::c2: {
        detail::need_undirected(g, "(c1)/(c2)");
        detail::need_undirected(gp, "(c1)/(c2)");
        // (c1) pattern edges against target non-edges; (c2) pattern non-edges against target edges.
        Graph src = kind == Table2::c1 ? g : complement(g);
        Graph dst = kind == Table2::c1 ? complement(gp) : gp;
        for (const auto& e : src.edges())
            for (const auto& ep : dst.edges()) {
                auto nm = base + quad_name(e.u, e.v, ep.u, ep.v);
                if (ep.u == ep.v) {
                    pair_row(nm, need_x(m, e.u, ep.u), need_x(m, e.v, ep.u));
                    continue;
                }
                pair_row(nm + "_1", need_x(m, e.u, ep.u), need_x(m, e.v, ep.v));
                pair_row(nm + "_2", need_x(m, e.u, ep.v), need_x(m, e.v, ep.u));
            }
        break;
    }
    case Table2::d1:
    case Table2::d2: {
        detail::need_directed(g, "(d1)/(d2)");
        detail::need_directed(gp, "(d1)/(d2)");
        // Arcs on one side against unordered pairs carrying no arc on the other.
        if (kind == Table2::d1) {
            Graph holes = complement(gp);
            for (const auto& a : g.edges())
                for (const auto& h : holes.edges()) {
                    auto nm = base + quad_name(a.u, a.v, h.u, h.v);
                    pair_row(nm + "_1", need_x(m, a.u, h.u), need_x(m, a.v, h.v));
                    pair_row(nm + "_2", need_x(m, a.u, h.v), need_x(m, a.v, h.u));
                }
        } else {
            Graph holes = complement(g);
            for (const auto& h : holes.edges())
                for (const auto& a : gp.edges()) {
                    auto nm = base + quad_name(h.u, h.v, a.u, a.v);
                    pair_row(nm + "_1", need_x(m, h.u, a.u), need_x(m, h.v, a.v));
                    pair_row(nm + "_2", need_x(m, h.u, a.v), need_x(m, h.v, a.u));
                }
        }
        break;
    }
    case Table2::e:
        detail::need_directed(g, "(e)");
        detail::need_directed(gp, "(e)");
        for (const auto& a : g.edges())
            for (const auto& ap : gp.edges()) {
                bool rev_p = gp.has_edge(ap.v, ap.u);
                if (opt.arcs == ArcSemantics::homomorphism && rev_p) continue;
                if (opt.arcs == ArcSemantics::iff && rev_p && g.has_edge(a.v, a.u)) continue;
                pair_row(base + quad_name(a.u, a.v, ap.u, ap.v), need_x(m, a.u, ap.v), need_x(m, a.v, ap.u));
            }
        break;
    case Table2::f:
        detail::need_undirected(g, "(f)");
        detail::need_undirected(gp, "(f)");
        for (const auto& e : g.edges())
            for (const auto& ep : gp.edges()) {
                auto y = m.binary(Tag::y(e.u, e.v, ep.u, ep.v));
                auto nm = base + quad_name(e.u, e.v, ep.u, ep.v);
                if (ep.u == ep.v) {
                    link_row(nm, need_x(m, e.u, ep.u), need_x(m, e.v, ep.u), y);
                    continue;
                }
                link_row(nm + "_1", need_x(m, e.u, ep.u), need_x(m, e.v, ep.v), y);
                link_row(nm + "_2", need_x(m, e.u, ep.v), need_x(m, e.v, ep.u), y);
            }
        break;
    case Table2::g:
        detail::need_directed(g, "(g)");
        detail::need_directed(gp, "(g)");
        for (const auto& a : g.edges())
            for (const auto& ap : gp.edges()) {
                auto y = m.binary(Tag::y(a.u, a.v, ap.u, ap.v));
                link_row(base + quad_name(a.u, a.v, ap.u, ap.v), need_x(m, a.u, ap.u), need_x(m, a.v, ap.v), y);
            }
        break;
    case Table2::h1:
    case Table2::h2:
        if (kind == Table2::h1)
            detail::need_undirected(gp, "(h1)");
        else
            detail::need_directed(gp, "(h2)");
        for (NodeId u = 1; u <= n; ++u)
            for (const auto& ep : gp.edges()) {
                if (ep.u == ep.v) continue;
                pair_row(base + std::to_string(u) + "__" + detail::pair_name(ep.u, ep.v), need_x(m, u, ep.u),
                         need_x(m, u, ep.v));
            }
        break;
    case Table2::i1:
    case Table2::i2:
        if (kind == Table2::i1)
            detail::need_undirected(g, "(i1)");
        else
            detail::need_directed(g, "(i2)");
        for (const auto& e : g.edges())
            for (NodeId up = 1; up <= np; ++up) {
                // A target self-loop is exactly the permission to put both endpoints on one node.
                if (gp.has_self_loop(up)) continue;
                pair_row(base + detail::pair_name(e.u, e.v) + "__" + std::to_string(up), need_x(m, e.u, up),
                         need_x(m, e.v, up));
            }
        break;
    }
}

/// Declares x_{uu'} for every u in 1..n, u' in 1..np (row-major order).
inline void declare_all_x(IPModel& m, int n, int np)
{
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId up = 1; up <= np; ++up) m.binary(Tag::x(u, up));
}

} // namespace gmip
