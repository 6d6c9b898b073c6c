#pragma once

// Exhaustive 0/1 checks of single constraint families on one-edge-pair models.
// Each case states, independently of the builders, which points must be feasible.

#include "gmip/framework.hpp"
#include "gmip/table2.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gmip::testing {

/// Read access to a 0/1 point by variable tag.
class Point
{
public:
    Point(const IPModel& m, const Assignment& a) : m_(m), a_(a) {}
    bool operator()(const Tag& t) const
    {
        auto v = m_.find(t);
        if (!v) throw std::logic_error("no variable " + tag_name(t));
        return a_[*v] == 1;
    }
    bool x(NodeId u, NodeId up) const { return (*this)(Tag::x(u, up)); }

private:
    const IPModel& m_;
    const Assignment& a_;
};

struct SemanticsCase
{
    std::string name;
    std::function<IPModel()> build;
    std::function<bool(const Point&)> expect; ///< feasibility of a point, stated directly
};

/// Number of 0/1 points where the model and the stated rule disagree.
inline int disagreements(const SemanticsCase& c)
{
    IPModel m = c.build();
    const auto nv = m.var_count();
    if (nv > 20) throw std::logic_error(c.name + ": too many variables to enumerate");
    int bad = 0;
    Assignment a(nv);
    for (std::uint32_t mask = 0; mask < (1u << nv); ++mask) {
        for (std::size_t j = 0; j < nv; ++j) a[j] = (mask >> j) & 1u;
        Point p(m, a);
        if (evaluate(m, a).feasible() != c.expect(p)) ++bad;
    }
    return bad;
}

inline IPModel family(Table2 kind, const Graph& g, const Graph& gp, ArcSemantics arcs = ArcSemantics::plain)
{
    IPModel m;
    declare_all_x(m, g.node_count(), gp.node_count());
    add_table2_constraints(m, kind, g, gp, {arcs, ""});
    return m;
}

inline std::vector<SemanticsCase> semantics_cases()
{
    const Graph edge = Graph::undirected(2, {{1, 2}});
    const Graph hole = Graph::undirected(2, {});
    const Graph arc = Graph::directed(2, {{1, 2}});
    const Graph both = Graph::directed(2, {{1, 2}, {2, 1}});
    const Graph no_arc = Graph::directed(2, {});
    const Graph back = Graph::directed(2, {{2, 1}});
    const Graph single = Graph::undirected(1, {});
    const Graph single_d = Graph::directed(1, {});
    const Graph looped(2, Directedness::undirected, {{1, 1, 1}, {1, 2, 1}}, true);
    const Graph loop_only(2, Directedness::undirected, {{1, 1, 1}}, true);

    auto cross = [](const Point& p) { return (p.x(1, 1) && p.x(2, 2)) || (p.x(1, 2) && p.x(2, 1)); };
    auto straight = [](const Point& p) { return p.x(1, 1) && p.x(2, 2); };
    auto reversed = [](const Point& p) { return p.x(1, 2) && p.x(2, 1); };
    auto shared = [](const Point& p, NodeId a) { return p.x(1, a) && p.x(2, a); };
    auto y = [](const Point& p, NodeId a, NodeId b) { return p(Tag::y(1, 2, a, b)); };

    std::vector<SemanticsCase> cases;
    auto add = [&](std::string name, std::function<IPModel()> build, std::function<bool(const Point&)> expect) {
        cases.push_back({std::move(name), std::move(build), std::move(expect)});
    };

    // Exclusions: an edge may not land on a non-edge, a non-edge may not land on an edge.
    add("c1 edge onto non-edge", [=] { return family(Table2::c1, edge, hole); }, [=](const Point& p) { return !cross(p); });
    add("c1 edge onto edge", [=] { return family(Table2::c1, edge, edge); }, [](const Point&) { return true; });
    add("c2 non-edge onto edge", [=] { return family(Table2::c2, hole, edge); }, [=](const Point& p) { return !cross(p); });
    add("c2 edge onto edge", [=] { return family(Table2::c2, edge, edge); }, [](const Point&) { return true; });
    add("d1 arc onto hole", [=] { return family(Table2::d1, arc, no_arc); }, [=](const Point& p) { return !cross(p); });
    add("d1 arc onto reverse arc", [=] { return family(Table2::d1, arc, back); }, [](const Point&) { return true; });
    add("d2 hole onto arc", [=] { return family(Table2::d2, no_arc, arc); }, [=](const Point& p) { return !cross(p); });
    add("d2 arc onto arc", [=] { return family(Table2::d2, arc, arc); }, [](const Point&) { return true; });
    add("e plain reversal", [=] { return family(Table2::e, arc, arc); }, [=](const Point& p) { return !reversed(p); });
    add("e homomorphism two-way target", [=] { return family(Table2::e, arc, both, ArcSemantics::homomorphism); },
        [](const Point&) { return true; });
    add("e homomorphism one-way target", [=] { return family(Table2::e, arc, arc, ArcSemantics::homomorphism); },
        [=](const Point& p) { return !reversed(p); });
    add("e iff one-way pattern", [=] { return family(Table2::e, arc, both, ArcSemantics::iff); },
        [=](const Point& p) { return !cross(p); });
    add("e iff two-way both", [=] { return family(Table2::e, both, both, ArcSemantics::iff); },
        [](const Point&) { return true; });
    add("h1 node onto both ends", [=] { return family(Table2::h1, single, edge); },
        [](const Point& p) { return !(p.x(1, 1) && p.x(1, 2)); });
    add("h2 node onto both ends", [=] { return family(Table2::h2, single_d, arc); },
        [](const Point& p) { return !(p.x(1, 1) && p.x(1, 2)); });
    add("i1 edge onto one node", [=] { return family(Table2::i1, edge, hole); },
        [=](const Point& p) { return !shared(p, 1) && !shared(p, 2); });
    add("i1 self-loop permits", [=] { return family(Table2::i1, edge, loop_only); },
        [=](const Point& p) { return !shared(p, 2); });
    add("i2 arc onto one node", [=] { return family(Table2::i2, arc, no_arc); },
        [=](const Point& p) { return !shared(p, 1) && !shared(p, 2); });

    // Linking: y may be 0 only while its edge pair is not realised.
    add("f linking", [=] { return family(Table2::f, edge, edge); },
        [=](const Point& p) { return y(p, 1, 2) || !cross(p); });
    add("f linking on a self-loop", [=] { return family(Table2::f, edge, looped); },
        [=](const Point& p) { return (y(p, 1, 2) || !cross(p)) && (y(p, 1, 1) || !shared(p, 1)); });
    add("g linking", [=] { return family(Table2::g, arc, arc); },
        [=](const Point& p) { return y(p, 1, 2) || !straight(p); });
    add("g linking ignores reversal", [=] { return family(Table2::g, arc, both); },
        [=](const Point& p) { return (y(p, 1, 2) || !straight(p)) && (y(p, 2, 1) || !reversed(p)); });

    // Penalty linking: y^tau follows the forbidden pair {1,2} (d = 1 = tau); the rest of the
    // Output 3 model asks for one image per node and an edge image.
    add("y-tau penalty linking",
        [] {
            MatchingInstance inst;
            inst.g = Graph::undirected(2, {{1, 2}});
            inst.gp = Graph::undirected(3, {{1, 2}, {1, 3}, {2, 3}});
            inst.regime = Regime::many_to_one;
            inst.edge_cost[{1, 2, 1, 2}] = 1;
            inst.forbidden[{1, 2}] = {1};
            inst.penalty[{1, 2, 1}] = 5;
            return build_output3(inst);
        },
        [](const Point& p) {
            int f1 = 0, f2 = 0;
            for (NodeId a = 1; a <= 3; ++a) {
                if (p.x(1, a)) f1 = f1 ? -1 : a;
                if (p.x(2, a)) f2 = f2 ? -1 : a;
            }
            if (f1 <= 0 || f2 <= 0 || f1 == f2) return false;
            bool hit = (f1 == 1 && f2 == 2) || (f1 == 2 && f2 == 1);
            return p(Tag::yt(1, 2, 1, 2, 1)) || !hit;
        });
    return cases;
}

} // namespace gmip::testing
