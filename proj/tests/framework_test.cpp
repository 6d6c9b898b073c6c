#include "gmip/framework.hpp"
#include "gmip/oracles.hpp"
#include "gmip/solver.hpp"

#include "support/harness.hpp"

#include <gtest/gtest.h>

using namespace gmip;
namespace th = gmip::testing;

namespace {

std::optional<Rational> optimum(const IPModel& m)
{
    auto sol = solve(m);
    EXPECT_NE(sol.status, SolveStatus::limit_reached);
    return sol.objective;
}

// Two transmitters, frequencies 0..count-1 as target nodes 1..count, d = |u'-v'|,
// separations 0 and 1 unacceptable at price 7.
MatchingInstance fsfa(int count)
{
    MatchingInstance inst;
    inst.g = Graph::path(2);
    std::vector<Edge> edges;
    for (NodeId a = 1; a <= count; ++a)
        for (NodeId b = a; b <= count; ++b) edges.push_back({a, b, 1});
    inst.gp = Graph(count, Directedness::undirected, edges, true);
    for (const auto& e : edges) inst.edge_cost[{1, 2, e.u, e.v}] = e.v - e.u;
    inst.forbidden[{1, 2}] = {0, 1};
    inst.penalty[{1, 2, 0}] = 7;
    inst.penalty[{1, 2, 1}] = 7;
    return inst;
}

std::size_t continuous_count(const IPModel& m) { return m.var_count() - m.binary_count(); }

} // namespace

TEST(Output1, SingleNode)
{
    MatchingInstance inst;
    inst.g = Graph::undirected(1, {});
    inst.gp = Graph::undirected(2, {});
    inst.allow = {{}, {2}};
    auto m = build_output1(inst);
    ASSERT_EQ(m.var_count(), 1u);
    auto sol = solve(m);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    EXPECT_EQ(decode(m, sol.assignment, 1)[1], 2);
}

TEST(Output1, TriangleHasNoImageInAPath)
{
    MatchingInstance inst;
    inst.g = Graph::complete(3);
    inst.gp = Graph::path(3);
    EXPECT_EQ(solve(build_output1(inst)).status, SolveStatus::infeasible);
    EXPECT_FALSE(oracle_framework(inst, FrameworkOutput::output1).feasible);
}

TEST(Output1, ForbiddenZeroSeparation)
{
    // Looped K2 target with d = |u'-v'|: t = {0} rules out exactly the maps onto one node.
    MatchingInstance inst;
    inst.g = Graph::path(2);
    inst.gp = Graph(2, Directedness::undirected, {{1, 1, 1}, {1, 2, 1}, {2, 2, 1}}, true);
    inst.edge_cost[{1, 2, 1, 2}] = 1;
    inst.forbidden[{1, 2}] = {0};
    auto base = build_output1(inst);
    for (NodeId a = 1; a <= 2; ++a)
        for (NodeId b = 1; b <= 2; ++b) {
            auto m = base;
            m.add_constraint("pin1", LinExpr{{*m.find(Tag::x(1, a)), 1}}, Relation::eq, 1);
            m.add_constraint("pin2", LinExpr{{*m.find(Tag::x(2, b)), 1}}, Relation::eq, 1);
            EXPECT_EQ(solve(m).status == SolveStatus::optimal, a != b) << a << ' ' << b;
        }
}

TEST(Output1, DirectedArcsKeepOrientation)
{
    MatchingInstance inst;
    inst.g = Graph::directed(3, {{1, 2}, {2, 3}});
    inst.gp = Graph::directed(3, {{1, 2}, {2, 3}});
    inst.regime = Regime::one_to_one;
    auto m = build_output1(inst);
    auto sol = solve(m);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    auto f = decode(m, sol.assignment, 3);
    EXPECT_EQ(f[1], 1);
    EXPECT_EQ(f[2], 2);
    EXPECT_EQ(f[3], 3);
}

TEST(Output2, BottleneckAndTotalOnOneEdge)
{
    MatchingInstance inst;
    inst.g = Graph::path(2);
    inst.gp = Graph::path(3);
    inst.edge_cost[{1, 2, 1, 2}] = 3;
    inst.edge_cost[{1, 2, 2, 3}] = 5;
    EXPECT_EQ(optimum(build_output2(inst, ObjectiveForm::P1)), Rational(3));
    EXPECT_EQ(optimum(build_output2(inst, ObjectiveForm::P2)), Rational(3));
    EXPECT_EQ(oracle_framework(inst, FrameworkOutput::output2, ObjectiveForm::P1).value, 3);
}

TEST(Output2, MaxLoadOnOneTarget)
{
    for (int n = 1; n <= 4; ++n) {
        MatchingInstance inst;
        inst.g = Graph::path(n);
        inst.gp = Graph(1, Directedness::undirected, {{1, 1, 1}}, true);
        for (NodeId u = 1; u <= n; ++u) inst.node_cost[{u, 1}] = 1;
        EXPECT_EQ(optimum(build_output2(inst, ObjectiveForm::P4)), Rational(n));
    }
}

TEST(Output2, ContinuousVariablesPerForm)
{
    MatchingInstance inst;
    inst.g = Graph::path(3);
    inst.gp = Graph::cycle(4);
    const std::pair<ObjectiveForm, std::size_t> want[] = {
        {ObjectiveForm::P1, 1}, {ObjectiveForm::P2, 0}, {ObjectiveForm::P3, 3}, {ObjectiveForm::P4, 1},
        {ObjectiveForm::P5, 4}, {ObjectiveForm::P6, 1}, {ObjectiveForm::P7, 1}};
    for (auto [form, count] : want) {
        auto m = build_output2(inst, form);
        EXPECT_EQ(continuous_count(m), count) << form_name(form);
        EXPECT_EQ(m.objective().sense, Sense::minimize);
    }
    EXPECT_EQ(continuous_count(build_output1(inst)), 0u);
    EXPECT_TRUE(build_output1(inst).objective().expr.empty());
}

TEST(Output2, RejectsDirected)
{
    MatchingInstance inst;
    inst.g = Graph::directed(2, {{1, 2}});
    inst.gp = Graph::directed(2, {{1, 2}});
    EXPECT_THROW(build_output2(inst, ObjectiveForm::P2), std::invalid_argument);
    EXPECT_THROW(build_output3(inst), std::invalid_argument);
}

TEST(Output3, Penalties)
{
    MatchingInstance plain;
    plain.g = Graph::path(3);
    plain.gp = Graph::complete(3);
    EXPECT_EQ(optimum(build_output3(plain)), Rational(0));

    EXPECT_EQ(optimum(build_output3(fsfa(3))), Rational(0));
    EXPECT_EQ(optimum(build_output3(fsfa(2))), Rational(7));
    EXPECT_EQ(oracle_framework(fsfa(2), FrameworkOutput::output3).value, 7);
}

TEST(Output3, MissingPenaltyIsAnError)
{
    auto inst = fsfa(2);
    inst.penalty.erase({1, 2, 1});
    EXPECT_THROW(build_output3(inst), std::invalid_argument);
}

TEST(Instance, Validation)
{
    MatchingInstance inst;
    inst.g = Graph::path(2);
    inst.gp = Graph::directed(2, {{1, 2}});
    EXPECT_THROW(build_output1(inst), std::invalid_argument);
    inst.gp = Graph::path(2);
    inst.allow = {{}, {3}, {}};
    EXPECT_THROW(build_output1(inst), std::invalid_argument);
    inst.allow.clear();
    inst.edge_cost[{1, 2, 1, 1}] = 1;
    EXPECT_THROW(build_output1(inst), std::invalid_argument);
}

TEST(Decode, RejectsTwoTargets)
{
    MatchingInstance inst;
    inst.g = Graph::undirected(1, {});
    inst.gp = Graph::undirected(2, {});
    auto m = build_output1(inst);
    EXPECT_THROW(decode(m, Assignment(m.var_count(), 1), 1), std::logic_error);
}

TEST(Framework, RandomInstancesAgreeWithTheOracle)
{
    th::Rng rng(314);
    for (int i = 0; i < 60; ++i) {
        bool directed = i % 5 == 4;
        auto inst = th::random_instance(rng, directed, true);
        auto v = th::check_framework(inst, FrameworkOutput::output1);
        EXPECT_TRUE(v.ok) << "output 1 #" << i << ": " << v.detail;
        if (directed) continue;
        for (auto f : {ObjectiveForm::P1, ObjectiveForm::P3, ObjectiveForm::P5, ObjectiveForm::P7}) {
            v = th::check_framework(inst, FrameworkOutput::output2, f);
            EXPECT_TRUE(v.ok) << form_name(f) << " #" << i << ": " << v.detail;
        }
        v = th::check_framework(inst, FrameworkOutput::output3);
        EXPECT_TRUE(v.ok) << "output 3 #" << i << ": " << v.detail;
    }
}

TEST(Framework, DecodedPointsRespectTheRegime)
{
    th::Rng rng(2718);
    for (int i = 0; i < 80; ++i) {
        auto inst = th::random_instance(rng, false, false);
        auto m = build_output1(inst);
        auto sol = solve(m);
        if (sol.status != SolveStatus::optimal) continue;
        auto f = decode(m, sol.assignment, inst.g.node_count());
        std::set<NodeId> image;
        int mapped = 0;
        for (NodeId u = 1; u <= inst.g.node_count(); ++u) {
            if (inst.regime != Regime::injective_partial) ASSERT_TRUE(f[u].has_value());
            if (!f[u]) continue;
            ++mapped;
            image.insert(*f[u]);
            EXPECT_TRUE(inst.allowed(u, *f[u]));
        }
        if (inst.regime != Regime::many_to_one) EXPECT_EQ(static_cast<int>(image.size()), mapped);
        if (inst.regime == Regime::onto_total || inst.regime == Regime::injective_partial)
            EXPECT_EQ(static_cast<int>(image.size()), inst.gp.node_count());
        for (const auto& e : inst.g.edges())
            if (f[e.u] && f[e.v]) EXPECT_TRUE(inst.gp.has_edge(*f[e.u], *f[e.v]));
    }
}
