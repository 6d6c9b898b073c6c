#include "gmip/encoders.hpp"
#include "gmip/lp_format.hpp"
#include "gmip/solver.hpp"

#include "support/harness.hpp"

#include <gtest/gtest.h>

using namespace gmip;
namespace th = gmip::testing;

namespace {

// Plain enumeration over every 0/1 point; the reference the solver is held to.
struct Enumerated
{
    bool feasible = false;
    Rational best = 0;
};

Enumerated enumerate(const IPModel& m)
{
    Enumerated out;
    const auto n = m.var_count();
    Assignment a(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) a[j] = (mask >> j) & 1u;
        auto r = evaluate(m, a);
        if (!r.feasible()) continue;
        bool better = m.objective().sense == Sense::minimize ? r.objective < out.best : r.objective > out.best;
        if (!out.feasible || better) out.best = r.objective;
        out.feasible = true;
    }
    return out;
}

IPModel random_binary_model(th::Rng& rng)
{
    static const Rational coefs[] = {1, -1, 2, -2, 3, Rational(1, 2), Rational(-3, 2)};
    IPModel m;
    const int n = th::uniform(rng, 1, 12);
    for (int i = 1; i <= n; ++i) m.binary(Tag::x(1, i));
    auto expr = [&] {
        LinExpr e;
        for (int t = th::uniform(rng, 1, 5); t > 0; --t) e.add(th::uniform(rng, 0, n - 1), coefs[th::uniform(rng, 0, 6)]);
        return e;
    };
    static const Relation rels[] = {Relation::le, Relation::ge, Relation::eq};
    for (int r = th::uniform(rng, 0, 8); r > 0; --r)
        m.add_constraint("r" + std::to_string(r), expr(), rels[th::uniform(rng, 0, 2)], th::uniform(rng, -1, 3));
    m.set_objective(th::coin(rng) ? Sense::minimize : Sense::maximize, expr());
    return m;
}

IPModel pick_one()
{
    IPModel m;
    auto a = m.binary(Tag::x(1, 1)), b = m.binary(Tag::x(1, 2));
    m.add_constraint("one", LinExpr{{a, 1}, {b, 1}}, Relation::eq, 1);
    m.set_objective(Sense::minimize, LinExpr{{a, 1}});
    return m;
}

} // namespace

TEST(Solve, SmallExample)
{
    auto m = pick_one();
    auto sol = solve(m);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    EXPECT_EQ(*sol.objective, 0);
    EXPECT_EQ(sol.assignment[1], 1);
}

TEST(Solve, InfeasibleColoring)
{
    ProblemSpec s;
    s.problem = Problem::gkc;
    s.optimize = false;
    s.g = Graph::complete(3);
    s.K = 2;
    auto sol = solve(encode(s));
    EXPECT_EQ(sol.status, SolveStatus::infeasible);
    EXPECT_FALSE(sol.has_point());
}

TEST(Solve, MatchesEnumerationOnBinaryModels)
{
    th::Rng rng(41);
    int feasible = 0;
    for (int i = 0; i < 400; ++i) {
        auto m = random_binary_model(rng);
        auto want = enumerate(m);
        auto got = solve(m);
        ASSERT_EQ(got.status == SolveStatus::optimal, want.feasible) << emit_lp(m);
        if (!want.feasible) continue;
        ++feasible;
        EXPECT_EQ(*got.objective, want.best) << emit_lp(m);
        EXPECT_TRUE(evaluate(m, got.assignment).feasible());
    }
    EXPECT_GT(feasible, 100);
}

TEST(Solve, MatchesEnumerationOnEncoderModels)
{
    for (auto [op, name] : th::encoder_ops()) {
        th::Rng rng(900 + static_cast<int>(op));
        for (int i = 0; i < 10; ++i) {
            auto m = encode(th::random_spec(op, rng, i));
            bool pure = m.binary_count() == m.var_count();
            if (!pure || m.var_count() > 20) continue;
            auto want = enumerate(m);
            auto got = solve(m);
            ASSERT_EQ(got.status == SolveStatus::optimal, want.feasible) << name;
            if (want.feasible) EXPECT_EQ(*got.objective, want.best) << name;
        }
    }
}

TEST(Solve, BoundTraceIsValid)
{
    th::Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        auto m = random_binary_model(rng);
        auto sol = solve(m);
        if (sol.status != SolveStatus::optimal) continue;
        ASSERT_FALSE(sol.bound_trace.empty());
        EXPECT_EQ(sol.bound_trace.back(), *sol.objective);
        for (const auto& b : sol.bound_trace) {
            if (m.objective().sense == Sense::minimize)
                EXPECT_LE(b, *sol.objective);
            else
                EXPECT_GE(b, *sol.objective);
        }
    }
}

TEST(Solve, ThreadCountDoesNotChangeTheOptimum)
{
    th::Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        auto m = random_binary_model(rng);
        SolveConfig four;
        four.thread_count = 4;
        auto a = solve(m), b = solve(m, four);
        ASSERT_EQ(a.status, b.status);
        if (a.objective) EXPECT_EQ(*a.objective, *b.objective);
    }
}

TEST(Solve, SameInputSameAnswer)
{
    th::Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        auto m = random_binary_model(rng);
        auto a = solve(m), b = solve(m);
        EXPECT_EQ(a.assignment, b.assignment);
        EXPECT_EQ(a.stats.nodes, b.stats.nodes);
    }
}

TEST(Solve, NodeLimit)
{
    ProblemSpec s;
    s.problem = Problem::golomb;
    s.marks = 5;
    s.K = 12;
    SolveConfig cfg;
    cfg.node_limit = 1;
    auto sol = solve(encode(s), cfg);
    EXPECT_EQ(sol.status, SolveStatus::limit_reached);
    if (sol.has_point()) EXPECT_GE(*sol.objective, 11);
}

TEST(Solve, Continuous)
{
    IPModel m;
    auto a = m.binary(Tag::x(1, 1)), b = m.binary(Tag::x(2, 1));
    auto k = m.continuous(Tag::bound(), 0, 10);
    m.add_constraint("a", LinExpr{{a, 3}, {k, -1}}, Relation::le, 0);
    m.add_constraint("b", LinExpr{{b, Rational(5, 2)}, {k, -1}}, Relation::le, 0);
    m.add_constraint("pick", LinExpr{{a, 1}, {b, 1}}, Relation::eq, 1);
    m.set_objective(Sense::minimize, LinExpr{{k, 1}});
    auto sol = solve(m);
    ASSERT_EQ(sol.status, SolveStatus::optimal);
    EXPECT_EQ(*sol.objective, Rational(5, 2));
}

TEST(Solve, Errors)
{
    IPModel m;
    auto a = m.binary(Tag::x(1, 1));
    auto k = m.continuous(Tag::bound(), 0, 10);
    m.add_constraint("a", LinExpr{{a, 1}, {k, 2}}, Relation::le, 4);
    EXPECT_THROW(solve(m), ModelError);
    SolveConfig zero;
    zero.thread_count = 0;
    EXPECT_THROW(solve(pick_one(), zero), std::invalid_argument);
}

TEST(Propagate, Examples)
{
    IPModel m;
    auto x1 = m.binary(Tag::x(1, 1)), x2 = m.binary(Tag::x(1, 2)), x3 = m.binary(Tag::x(1, 3));
    auto y = m.binary(Tag::y(1, 2, 1, 2));
    m.add_constraint("pack", LinExpr{{x1, 1}, {x2, 1}}, Relation::le, 1);
    auto r = propagate(m, {1, std::nullopt, std::nullopt, std::nullopt});
    EXPECT_FALSE(r.conflict);
    EXPECT_EQ(r.fixed, (std::vector<std::pair<VarId, int>>{{x2, 0}}));

    IPModel one;
    for (int i = 1; i <= 3; ++i) one.binary(Tag::x(1, i));
    one.add_constraint("one", LinExpr{{0, 1}, {1, 1}, {2, 1}}, Relation::eq, 1);
    EXPECT_EQ(propagate(one, {0, 0, std::nullopt}).fixed, (std::vector<std::pair<VarId, int>>{{2, 1}}));
    EXPECT_TRUE(propagate(one, {1, 1, std::nullopt}).conflict);

    IPModel link;
    auto a = link.binary(Tag::x(1, 1)), b = link.binary(Tag::x(2, 2)), w = link.binary(Tag::y(1, 2, 1, 2));
    link.add_constraint("f", LinExpr{{a, 1}, {b, 1}, {w, -1}}, Relation::le, 1);
    EXPECT_EQ(propagate(link, {1, 1, std::nullopt}).fixed, (std::vector<std::pair<VarId, int>>{{w, 1}}));
    (void)x3;
    (void)y;
}
