#pragma once

#include "gmip/instance.hpp"
#include "gmip/model.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace gmip {

namespace detail {

inline std::string fw_pair(int a, int b) { return std::to_string(a) + "_" + std::to_string(b); }

/// Shared scaffolding of the three outputs.
class FrameworkBuilder
{
public:
    FrameworkBuilder(const MatchingInstance& inst, IPModel& m) : inst_(inst), m_(m) { inst.validate(); }

    std::optional<VarId> x(NodeId u, NodeId up) const { return m_.find(Tag::x(u, up)); }

    /// Declares x for the allow sets and writes the one-target-per-node rows plus the regime's column rows.
    void assignment_rows()
    {
        const int n = inst_.g.node_count(), np = inst_.gp.node_count();
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId up : inst_.allow_set(u)) m_.binary(Tag::x(u, up));
        bool partial = inst_.regime == Regime::injective_partial;
        for (NodeId u = 1; u <= n; ++u) {
            LinExpr e;
            for (NodeId up : inst_.allow_set(u)) e.add(*x(u, up), 1);
            m_.add_constraint("o1_" + std::to_string(u), std::move(e), partial ? Relation::le : Relation::eq, 1);
        }
        if (inst_.regime == Regime::many_to_one) return;
        bool exact = inst_.regime == Regime::onto_total || inst_.regime == Regime::injective_partial;
        for (NodeId up = 1; up <= np; ++up) {
            LinExpr e;
            for (NodeId u = 1; u <= n; ++u)
                if (auto v = x(u, up)) e.add(*v, 1);
            m_.add_constraint((exact ? "onto_" : "inj_") + std::to_string(up), std::move(e),
                              exact ? Relation::eq : Relation::le, 1);
        }
    }

    /// x_a + x_b <= 1 when both variables exist.
    void exclude(const std::string& name, std::optional<VarId> a, std::optional<VarId> b)
    {
        if (a && b) m_.add_constraint(name, LinExpr{{*a, 1}, {*b, 1}}, Relation::le, 1);
    }

    /// Pattern edges may only land on target edges (or on a looped node).
    void edge_rows_undirected()
    {
        const auto& g = inst_.g;
        const auto& gp = inst_.gp;
        const int np = gp.node_count();
        for (const auto& e : g.edges())
            for (NodeId a = 1; a <= np; ++a)
                for (NodeId b = a; b <= np; ++b) {
                    if (gp.has_edge(a, b)) continue;
                    auto nm = fw_pair(e.u, e.v) + "__" + fw_pair(a, b);
                    if (a == b) {
                        exclude("sn_" + nm, x(e.u, a), x(e.v, a));
                        continue;
                    }
                    exclude("ne_" + nm + "_1", x(e.u, a), x(e.v, b));
                    exclude("ne_" + nm + "_2", x(e.u, b), x(e.v, a));
                }
        if (inst_.induced) {
            Graph holes = complement(g);
            for (const auto& h : holes.edges())
                for (const auto& ep : gp.edges()) {
                    auto nm = fw_pair(h.u, h.v) + "__" + fw_pair(ep.u, ep.v);
                    if (ep.u == ep.v) {
                        exclude("ind_" + nm, x(h.u, ep.u), x(h.v, ep.u));
                        continue;
                    }
                    exclude("ind_" + nm + "_1", x(h.u, ep.u), x(h.v, ep.v));
                    exclude("ind_" + nm + "_2", x(h.u, ep.v), x(h.v, ep.u));
                }
        }
    }

    /// Edge assignments whose cost lies in the forbidden set.
    void forbidden_rows_undirected()
    {
        for (const auto& e : inst_.g.edges())
            for (const auto& ep : inst_.gp.edges()) {
                if (!inst_.hits_forbidden(e.u, e.v, ep.u, ep.v)) continue;
                auto nm = fw_pair(e.u, e.v) + "__" + fw_pair(ep.u, ep.v);
                if (ep.u == ep.v) {
                    exclude("fb_" + nm, x(e.u, ep.u), x(e.v, ep.u));
                    continue;
                }
                exclude("fb_" + nm + "_1", x(e.u, ep.u), x(e.v, ep.v));
                exclude("fb_" + nm + "_2", x(e.u, ep.v), x(e.v, ep.u));
            }
    }

    /// Linking rows x + x <= y + 1 for each orientation whose two x variables exist.
    /// Returns the variable, or nullopt when neither orientation is possible.
    std::optional<VarId> link(const Tag& tag, const std::string& name,
                              const std::vector<std::pair<std::optional<VarId>, std::optional<VarId>>>& orientations)
    {
        std::optional<VarId> y;
        int k = 0;
        for (const auto& [a, b] : orientations) {
            ++k;
            if (!a || !b) continue;
            if (!y) y = m_.binary(tag);
            auto nm = orientations.size() == 1 ? name : name + "_" + std::to_string(k);
            m_.add_constraint(nm, LinExpr{{*a, 1}, {*b, 1}, {*y, -1}}, Relation::le, 1);
        }
        return y;
    }

    /// Upper rows forcing y to 0 unless one of its orientations is realised.
    void exactness_rows(VarId y, const std::string& name, NodeId u, NodeId v, NodeId a, NodeId b)
    {
        auto upper = [&](const std::string& nm, std::initializer_list<std::optional<VarId>> xs) {
            LinExpr e{{y, 1}};
            for (auto xv : xs)
                if (xv) e.add(*xv, -1);
            m_.add_constraint(nm, std::move(e), Relation::le, 0);
        };
        if (a == b) {
            upper(name + "_1", {x(u, a)});
            upper(name + "_2", {x(v, a)});
            return;
        }
        upper(name + "_1", {x(u, a), x(u, b)});
        upper(name + "_2", {x(v, a), x(v, b)});
        // Both endpoints on one node is never an edge image.
        auto same = [&](const std::string& nm, std::optional<VarId> p, std::optional<VarId> q) {
            if (!p || !q) return;
            m_.add_constraint(nm, LinExpr{{y, 1}, {*p, 1}, {*q, 1}}, Relation::le, 2);
        };
        same(name + "_3", x(u, a), x(v, a));
        same(name + "_4", x(u, b), x(v, b));
    }

    /// A valid upper bound on every objective functional of the instance.
    Rational big_m() const
    {
        Rational bc = 0, bd = 0;
        int maxdeg = 1;
        for (NodeId u = 1; u <= inst_.g.node_count(); ++u) {
            Rational best = 0;
            for (NodeId up : inst_.allow_set(u)) best = std::max(best, abs(inst_.c(u, up)));
            bc += best;
            maxdeg = std::max(maxdeg, static_cast<int>(inst_.g.neighbors(u).size()));
        }
        for (const auto& e : inst_.g.edges()) {
            Rational best = 0;
            for (const auto& ep : inst_.gp.edges()) best = std::max(best, abs(inst_.d(e.u, e.v, ep.u, ep.v)));
            bd += best;
        }
        return Rational(maxdeg) * bc + bd;
    }

private:
    const MatchingInstance& inst_;
    IPModel& m_;
};

} // namespace detail

/// Output 1: a feasibility model for the T-coloring style contract.
inline IPModel build_output1(const MatchingInstance& inst)
{
    IPModel m;
    detail::FrameworkBuilder b(inst, m);
    b.assignment_rows();
    const auto& g = inst.g;
    const auto& gp = inst.gp;
    if (!g.is_directed()) {
        b.edge_rows_undirected();
        b.forbidden_rows_undirected();
        return m;
    }
    if (inst.induced) throw std::invalid_argument("induced exclusions are only defined for undirected instances");
    using detail::fw_pair;
    const int np = gp.node_count();
    for (const auto& a : g.edges()) {
        for (NodeId p = 1; p <= np; ++p) {
            // Endpoints of an arc on one target node: digraphs carry no loops.
            b.exclude("sn_" + fw_pair(a.u, a.v) + "__" + fw_pair(p, p), b.x(a.u, p), b.x(a.v, p));
            for (NodeId q = p + 1; q <= np; ++q) {
                if (gp.has_edge(p, q) || gp.has_edge(q, p)) continue;
                // No arc either way between the images.
                auto nm = fw_pair(a.u, a.v) + "__" + fw_pair(p, q);
                b.exclude("ne_" + nm + "_1", b.x(a.u, p), b.x(a.v, q));
                b.exclude("ne_" + nm + "_2", b.x(a.u, q), b.x(a.v, p));
            }
        }
        for (const auto& ap : gp.edges()) {
            auto nm = fw_pair(a.u, a.v) + "__" + fw_pair(ap.u, ap.v);
            // The reversed pairing is only acceptable when the reversed arc exists too.
            if (!gp.has_edge(ap.v, ap.u)) b.exclude("rev_" + nm, b.x(a.u, ap.v), b.x(a.v, ap.u));
            if (inst.hits_forbidden(a.u, a.v, ap.u, ap.v)) b.exclude("fb_" + nm, b.x(a.u, ap.u), b.x(a.v, ap.v));
        }
    }
    return m;
}

/// Output 2 with one of the objective forms P1..P7 (undirected instances).
inline IPModel build_output2(const MatchingInstance& inst, ObjectiveForm form)
{
    if (inst.g.is_directed()) throw std::invalid_argument("Output 2 is built for undirected instances");
    using detail::fw_pair;
    IPModel m;
    detail::FrameworkBuilder b(inst, m);
    b.assignment_rows();
    b.edge_rows_undirected();
    b.forbidden_rows_undirected();
    const auto& g = inst.g;
    const auto& gp = inst.gp;
    const int n = g.node_count(), np = gp.node_count();

    // P7 with node costs needs to know which endpoint sits left of the cut.
    bool oriented = false;
    if (form == ObjectiveForm::P7)
        for (const auto& [key, val] : inst.node_cost)
            if (val != 0) oriented = true;

    // ys[(u,v)] lists (target edge, y variable) for every admissible edge assignment.
    struct YEntry
    {
        NodeId a, b;
        VarId y;
    };
    std::map<std::pair<NodeId, NodeId>, std::vector<YEntry>> ys;
    bool negative = false;
    for (const auto& e : g.edges())
        for (const auto& ep : gp.edges()) {
            if (inst.hits_forbidden(e.u, e.v, ep.u, ep.v)) continue;
            if (inst.d(e.u, e.v, ep.u, ep.v) < 0) negative = true;
            if (oriented) continue;
            auto nm = "lk_" + fw_pair(e.u, e.v) + "__" + fw_pair(ep.u, ep.v);
            std::vector<std::pair<std::optional<VarId>, std::optional<VarId>>> orient{{b.x(e.u, ep.u), b.x(e.v, ep.v)}};
            if (ep.u != ep.v) orient.push_back({b.x(e.u, ep.v), b.x(e.v, ep.u)});
            if (auto y = b.link(Tag::y(e.u, e.v, ep.u, ep.v), nm, orient)) ys[{e.u, e.v}].push_back({ep.u, ep.v, *y});
        }
    if (negative && !oriented)
        for (const auto& [key, list] : ys)
            for (const auto& ye : list)
                b.exactness_rows(ye.y, "ex_" + fw_pair(key.first, key.second) + "__" + fw_pair(ye.a, ye.b), key.first,
                                 key.second, ye.a, ye.b);

    auto node_part = [&](LinExpr& e, NodeId u) {
        for (NodeId up : inst.allow_set(u)) e.add(*b.x(u, up), inst.c(u, up));
    };
    auto edge_part = [&](LinExpr& e, NodeId u, NodeId v) {
        auto key = u < v ? std::pair(u, v) : std::pair(v, u);
        auto it = ys.find(key);
        if (it == ys.end()) return;
        for (const auto& ye : it->second) e.add(ye.y, inst.d(u, v, ye.a, ye.b));
    };
    Rational M = b.big_m();
    auto bound_var = [&](const Tag& t) { return m.continuous(t, 0, M); };
    auto at_most = [&](const std::string& name, LinExpr e, VarId k) {
        e.add(k, -1);
        m.add_constraint(name, std::move(e), Relation::le, 0);
    };

    LinExpr obj;
    switch (form) {
    case ObjectiveForm::P1: {
        auto K = bound_var(Tag::bound());
        for (NodeId u = 1; u <= n; ++u) {
            auto nb = g.neighbors(u);
            if (nb.empty()) {
                LinExpr e;
                node_part(e, u);
                at_most("p1c_" + std::to_string(u), std::move(e), K);
            }
            for (NodeId v : nb) {
                LinExpr e;
                node_part(e, u);
                edge_part(e, u, v);
                at_most("p1_" + fw_pair(u, v), std::move(e), K);
            }
        }
        obj.add(K, 1);
        break;
    }
    case ObjectiveForm::P2:
        for (NodeId u = 1; u <= n; ++u) node_part(obj, u);
        for (const auto& e : g.edges()) edge_part(obj, e.u, e.v);
        break;
    case ObjectiveForm::P3:
        for (NodeId u = 1; u <= n; ++u) {
            auto Ku = bound_var(Tag::bound_u(u));
            for (NodeId v : g.neighbors(u)) {
                LinExpr e;
                node_part(e, u);
                edge_part(e, u, v);
                at_most("p3_" + fw_pair(u, v), std::move(e), Ku);
            }
            obj.add(Ku, 1);
        }
        break;
    case ObjectiveForm::P4: {
        auto K = bound_var(Tag::bound());
        for (NodeId a = 1; a <= np; ++a) {
            LinExpr e;
            for (NodeId u = 1; u <= n; ++u)
                if (auto xv = b.x(u, a)) e.add(*xv, inst.c(u, a));
            for (const auto& [key, list] : ys)
                for (const auto& ye : list)
                    if (ye.a == a || ye.b == a) e.add(ye.y, inst.d(key.first, key.second, ye.a, ye.b));
            at_most("p4_" + std::to_string(a), std::move(e), K);
        }
        obj.add(K, 1);
        break;
    }
    case ObjectiveForm::P5:
        for (NodeId a = 1; a <= np; ++a) {
            auto Ka = bound_var(Tag::bound_up(a));
            for (NodeId u = 1; u <= n; ++u) {
                auto xu = b.x(u, a);
                if (!xu) continue;
                LinExpr e;
                e.add(*xu, inst.c(u, a));
                Rational gate = 0;
                for (NodeId v : g.neighbors(u)) {
                    auto key = u < v ? std::pair(u, v) : std::pair(v, u);
                    auto it = ys.find(key);
                    if (it == ys.end()) continue;
                    for (const auto& ye : it->second)
                        if (ye.a == a || ye.b == a) {
                            auto dv = inst.d(u, v, ye.a, ye.b);
                            e.add(ye.y, dv);
                            if (dv > 0) gate += dv;
                        }
                }
                // An unoriented y also fires when u sits at the other end; gate the row on x_{ua}.
                if (gate > 0) e.add(*xu, gate);
                e.add(Ka, -1);
                m.add_constraint("p5_" + fw_pair(a, u), std::move(e), Relation::le, gate);
            }
            obj.add(Ka, 1);
        }
        break;
    case ObjectiveForm::P6: {
        auto K = bound_var(Tag::bound());
        for (NodeId u = 1; u <= n; ++u) {
            LinExpr e;
            node_part(e, u);
            for (NodeId v : g.neighbors(u)) edge_part(e, u, v);
            at_most("p6_" + std::to_string(u), std::move(e), K);
        }
        obj.add(K, 1);
        break;
    }
    case ObjectiveForm::P7: {
        auto K = bound_var(Tag::bound());
        // cut[i] collects the terms of the cut row at position i.
        std::vector<LinExpr> cut(static_cast<std::size_t>(np + 1));
        if (!oriented) {
            for (const auto& [key, list] : ys)
                for (const auto& ye : list)
                    for (NodeId i = ye.a; i < ye.b; ++i) cut[i].add(ye.y, inst.d(key.first, key.second, ye.a, ye.b));
        } else {
            for (const auto& e : g.edges())
                for (const auto& ep : gp.edges()) {
                    if (ep.u == ep.v || inst.hits_forbidden(e.u, e.v, ep.u, ep.v)) continue;
                    for (auto [l, r] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
                        auto xl = b.x(l, ep.u), xr = b.x(r, ep.v);
                        if (!xl || !xr) continue;
                        auto nm = "lko_" + fw_pair(l, r) + "__" + fw_pair(ep.u, ep.v);
                        auto y = *b.link(Tag::yo(l, r, ep.u, ep.v), nm, {{xl, xr}});
                        Rational w = inst.c(l, ep.u) + inst.c(r, ep.v) + inst.d(e.u, e.v, ep.u, ep.v);
                        if (w < 0) {
                            m.add_constraint(nm + "_x1", LinExpr{{y, 1}, {*xl, -1}}, Relation::le, 0);
                            m.add_constraint(nm + "_x2", LinExpr{{y, 1}, {*xr, -1}}, Relation::le, 0);
                        }
                        for (NodeId i = ep.u; i < ep.v; ++i) cut[i].add(y, w);
                    }
                }
        }
        for (NodeId i = 1; i <= np; ++i) at_most("p7_" + std::to_string(i), std::move(cut[i]), K);
        obj.add(K, 1);
        break;
    }
    }
    m.set_objective(Sense::minimize, std::move(obj));
    return m;
}

/// Output 3: minimum total penalty, forbidden values allowed at a price (undirected instances).
inline IPModel build_output3(const MatchingInstance& inst)
{
    if (inst.g.is_directed()) throw std::invalid_argument("Output 3 is built for undirected instances");
    using detail::fw_pair;
    IPModel m;
    detail::FrameworkBuilder b(inst, m);
    b.assignment_rows();
    b.edge_rows_undirected();
    LinExpr obj;
    for (const auto& e : inst.g.edges())
        for (const auto& ep : inst.gp.edges()) {
            if (!inst.hits_forbidden(e.u, e.v, ep.u, ep.v)) continue;
            int tau = static_cast<int>(inst.d(e.u, e.v, ep.u, ep.v).numerator());
            auto pen = inst.p(e.u, e.v, tau);
            auto nm = "pen_" + fw_pair(e.u, e.v) + "__" + fw_pair(ep.u, ep.v);
            std::vector<std::pair<std::optional<VarId>, std::optional<VarId>>> orient{{b.x(e.u, ep.u), b.x(e.v, ep.v)}};
            if (ep.u != ep.v) orient.push_back({b.x(e.u, ep.v), b.x(e.v, ep.u)});
            if (auto y = b.link(Tag::yt(e.u, e.v, ep.u, ep.v, tau), nm, orient)) obj.add(*y, pen);
        }
    m.set_objective(Sense::minimize, std::move(obj));
    return m;
}

/// f(u) = u' iff x_{uu'} = 1; index 0 unused, nullopt for unmapped nodes.
inline std::vector<std::optional<NodeId>> decode(const IPModel& m, const Assignment& a, int n)
{
    std::vector<std::optional<NodeId>> f(static_cast<std::size_t>(n + 1));
    for (std::size_t j = 0; j < m.var_count(); ++j) {
        const auto& v = m.variable(static_cast<VarId>(j));
        if (v.tag.kind != Tag::Kind::x || a[j] != 1) continue;
        NodeId u = v.tag.idx[0];
        if (u < 1 || u > n) continue;
        if (f[u]) throw std::logic_error("node " + std::to_string(u) + " assigned to two targets");
        f[u] = v.tag.idx[1];
    }
    return f;
}

} // namespace gmip
