#pragma once

// Random instance generators and the IP-versus-oracle comparison used by the
// property tests and the acceptance driver.

#include "gmip/encoders.hpp"
#include "gmip/framework.hpp"
#include "gmip/oracles.hpp"
#include "gmip/predicates.hpp"
#include "gmip/solver.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gmip::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Small weights, sometimes fractional, so rational arithmetic gets exercised.
inline Rational weight(Rng& rng, int lo = 1, int hi = 4)
{
    Rational w = uniform(rng, lo, hi);
    if (coin(rng, 0.2)) w += Rational(1, 2);
    return w;
}

inline Graph random_graph(Rng& rng, int n, double p, bool weighted = false)
{
    std::vector<Edge> edges;
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId v = u + 1; v <= n; ++v)
            if (coin(rng, p)) edges.push_back({u, v, weighted ? weight(rng) : Rational(1)});
    return Graph(n, Directedness::undirected, std::move(edges));
}

inline Graph random_digraph(Rng& rng, int n, double p, bool weighted = false)
{
    std::vector<Edge> arcs;
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId v = 1; v <= n; ++v)
            if (u != v && coin(rng, p)) arcs.push_back({u, v, weighted ? weight(rng) : Rational(1)});
    return Graph(n, Directedness::directed, std::move(arcs));
}

inline Graph random_connected(Rng& rng, int n, double p)
{
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({perm[uniform(rng, 0, i - 1)], perm[i], 1});
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId v = u + 1; v <= n; ++v) {
            bool have = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
                return (e.u == u && e.v == v) || (e.u == v && e.v == u);
            });
            if (!have && coin(rng, p)) edges.push_back({u, v, 1});
        }
    return Graph(n, Directedness::undirected, std::move(edges));
}

/// A relabelled copy of g, so isomorphism instances are sometimes positive.
inline Graph shuffled(Rng& rng, const Graph& g)
{
    std::vector<int> perm(static_cast<std::size_t>(g.node_count() + 1));
    for (int i = 0; i <= g.node_count(); ++i) perm[i] = i;
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.w});
    return Graph(g.node_count(), g.is_directed() ? Directedness::directed : Directedness::undirected, std::move(edges));
}

/// The subgraph of g induced on a random subset of k nodes, renumbered 1..k.
inline Graph induced_sample(Rng& rng, const Graph& g, int k)
{
    std::vector<int> nodes(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i) nodes[i] = i + 1;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    nodes.resize(static_cast<std::size_t>(k));
    std::vector<Edge> edges;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && g.has_edge(nodes[i], nodes[j]) && (g.is_directed() || i < j)) edges.push_back({i + 1, j + 1, 1});
    return Graph(k, g.is_directed() ? Directedness::directed : Directedness::undirected, std::move(edges));
}

// ---------------------------------------------------------------------------
// Framework instances

inline MatchingInstance random_instance(Rng& rng, bool directed, bool with_penalties)
{
    MatchingInstance inst;
    const int n = uniform(rng, 1, 4), np = uniform(rng, 1, 4);
    const bool loops = !directed && coin(rng, 0.4);
    if (directed) {
        inst.g = random_digraph(rng, n, 0.4);
        inst.gp = random_digraph(rng, np, 0.6);
    } else {
        inst.g = random_graph(rng, n, 0.5);
        std::vector<Edge> edges;
        for (NodeId a = 1; a <= np; ++a)
            for (NodeId b = loops ? a : a + 1; b <= np; ++b)
                if (coin(rng, a == b ? 0.5 : 0.7)) edges.push_back({a, b, 1});
        inst.gp = Graph(np, Directedness::undirected, std::move(edges), loops);
    }
    static const Regime regimes[] = {Regime::many_to_one, Regime::one_to_one, Regime::onto_total, Regime::injective_partial};
    inst.regime = regimes[uniform(rng, 0, 3)];
    inst.induced = !directed && coin(rng, 0.2);
    inst.allow.assign(static_cast<std::size_t>(n + 1), {});
    for (NodeId u = 1; u <= n; ++u) {
        std::vector<int> all(static_cast<std::size_t>(np));
        for (int a = 0; a < np; ++a) all[a] = a + 1;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(uniform(rng, 1, std::min(3, np))));
        std::sort(all.begin(), all.end());
        inst.allow[u] = all;
    }
    for (NodeId u = 1; u <= n; ++u)
        for (NodeId a : inst.allow[u])
            if (coin(rng, 0.6)) inst.node_cost[{u, a}] = uniform(rng, -2, 5);
    for (const auto& e : inst.g.edges())
        for (const auto& ep : inst.gp.edges())
            if (coin(rng, 0.7)) inst.edge_cost[inst.cost_key(e.u, e.v, ep.u, ep.v)] = uniform(rng, -2, 4);
    for (const auto& e : inst.g.edges()) {
        if (!coin(rng, 0.5)) continue;
        auto key = inst.edge_key(e.u, e.v);
        auto& taus = inst.forbidden[key];
        taus.insert(uniform(rng, -1, 3));
        if (coin(rng)) taus.insert(uniform(rng, -1, 3));
        if (with_penalties)
            for (int tau : taus) inst.penalty[{key.first, key.second, tau}] = uniform(rng, 0, 5);
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Verdicts

struct Verdict
{
    bool ok = true;
    std::string detail;
};

inline std::string describe(bool feasible, const std::optional<Rational>& v)
{
    if (!feasible) return "infeasible";
    return v ? to_string(*v) : "feasible";
}

/// Solves the model and compares status and optimum with an oracle result.
inline Verdict compare(const IPModel& m, const OracleResult& o, const SolveConfig& cfg, Solution* out = nullptr)
{
    auto sol = solve(m, cfg);
    if (out) *out = sol;
    Verdict v;
    if (sol.status == SolveStatus::limit_reached) return {false, "solver limit reached"};
    bool feasible = sol.status == SolveStatus::optimal;
    if (feasible != o.feasible || (feasible && *sol.objective != o.value)) {
        v.ok = false;
        v.detail = "ip " + describe(feasible, sol.objective) + " vs oracle " + describe(o.feasible, o.value);
    }
    return v;
}

inline Verdict check_framework(const MatchingInstance& inst, FrameworkOutput out, ObjectiveForm form = ObjectiveForm::P2)
{
    auto m = out == FrameworkOutput::output1   ? build_output1(inst)
             : out == FrameworkOutput::output2 ? build_output2(inst, form)
                                               : build_output3(inst);
    return compare(m, oracle_framework(inst, out, form), SolveConfig{});
}

/// Full round for a named problem: IP optimum equals the oracle, and the decoded witness passes the predicate.
inline Verdict check_spec(const ProblemSpec& s, const SolveConfig& cfg = {})
{
    auto m = encode(s);
    Solution sol;
    auto v = compare(m, oracle_solve(s), cfg, &sol);
    if (!v.ok || sol.status != SolveStatus::optimal) return v;
    auto w = decode_witness(s, m, sol.assignment);
    auto checked = check_witness(s, w);
    if (!checked) return {false, "decoded witness rejected by the predicate checker"};
    Rational expect = m.objective().expr.empty() ? Rational(0) : *sol.objective;
    if (*checked != expect)
        return {false, "decoded witness scores " + to_string(*checked) + ", model says " + to_string(expect)};
    return v;
}

// ---------------------------------------------------------------------------
// Named-problem instances, one generator per encoder operation

enum class EncoderOp { ktsp, bandwidth, arrangement, isomorphism, common_subgraph, coloring, labeling, metric_labeling, golomb, igc, mlcm };

inline const std::vector<std::pair<EncoderOp, const char*>>& encoder_ops()
{
    static const std::vector<std::pair<EncoderOp, const char*>> ops = {
        {EncoderOp::ktsp, "encode_ktsp"},
        {EncoderOp::bandwidth, "encode_bandwidth"},
        {EncoderOp::arrangement, "encode_arrangement"},
        {EncoderOp::isomorphism, "encode_isomorphism"},
        {EncoderOp::common_subgraph, "encode_common_subgraph"},
        {EncoderOp::coloring, "encode_coloring"},
        {EncoderOp::labeling, "encode_labeling"},
        {EncoderOp::metric_labeling, "encode_metric_labeling"},
        {EncoderOp::golomb, "encode_golomb"},
        {EncoderOp::igc, "encode_igc"},
        {EncoderOp::mlcm, "encode_mlcm"},
    };
    return ops;
}

/// Instance number i of an operation; i cycles through the problems and modes the operation covers.
inline ProblemSpec random_spec(EncoderOp op, Rng& rng, int i)
{
    ProblemSpec s;
    switch (op) {
    case EncoderOp::ktsp: {
        s.problem = Problem::ktsp;
        const int n = uniform(rng, 2, 5);
        s.g = random_digraph(rng, n, 0.55, true);
        s.k = uniform(rng, 2, n);
        s.variant = "ABC"[i % 3];
        s.optimize = s.variant != 'A' && i % 2 == 0;
        if (!s.optimize) s.K = uniform(rng, 1, 8);
        break;
    }
    case EncoderOp::bandwidth: {
        s.problem = Problem::bandwidth;
        const int n = uniform(rng, 2, 6);
        s.g = i % 4 < 2 ? random_graph(rng, n, 0.45) : random_digraph(rng, n, 0.25);
        s.optimize = i % 2 == 0;
        if (!s.optimize) s.K = uniform(rng, 1, n - 1 > 0 ? n - 1 : 1);
        break;
    }
    case EncoderOp::arrangement: {
        static const Problem ps[] = {Problem::lap, Problem::dlap, Problem::pmp, Problem::mclap};
        s.problem = ps[i % 4];
        const int n = uniform(rng, 2, s.problem == Problem::pmp ? 5 : 6);
        s.g = s.problem == Problem::dlap ? random_digraph(rng, n, 0.25, true) : random_graph(rng, n, 0.45, s.problem == Problem::lap);
        s.optimize = (i / 4) % 3 != 2;
        if (!s.optimize) s.K = uniform(rng, 0, 2 * n);
        break;
    }
    case EncoderOp::isomorphism: {
        static const Problem ps[] = {Problem::gi, Problem::si, Problem::isi};
        s.problem = ps[i % 3];
        const int n = uniform(rng, 2, 6);
        s.g = random_graph(rng, n, 0.5);
        if (s.problem == Problem::gi) {
            s.g2 = coin(rng) ? shuffled(rng, s.g) : random_graph(rng, n, 0.5);
        } else {
            const int k = uniform(rng, 1, std::min(n, 4));
            s.g2 = coin(rng) ? induced_sample(rng, s.g, k) : random_graph(rng, k, 0.5);
        }
        break;
    }
    case EncoderOp::common_subgraph: {
        static const Problem ps[] = {Problem::lcs, Problem::mism, Problem::msm, Problem::cmp};
        s.problem = ps[i % 4];
        const bool directed = s.problem == Problem::mism || s.problem == Problem::msm;
        const int n = uniform(rng, 1, 4), np = uniform(rng, 1, s.problem == Problem::msm ? 3 : 4);
        s.g = directed ? random_digraph(rng, n, 0.35) : random_graph(rng, n, 0.5);
        s.g2 = directed ? random_digraph(rng, np, 0.35) : random_graph(rng, np, 0.5);
        break;
    }
    case EncoderOp::coloring: {
        static const Problem ps[] = {Problem::gkc, Problem::gc, Problem::gh, Problem::dgh, Problem::mwscp_a,
                                     Problem::mwscp_b, Problem::wvcp, Problem::mcp, Problem::mwis};
        s.problem = ps[i % 9];
        const int n = uniform(rng, 1, 5);
        switch (s.problem) {
        case Problem::gkc:
            s.g = random_graph(rng, n, 0.5);
            s.K = uniform(rng, 1, 3);
            s.optimize = false;
            break;
        case Problem::gc: s.g = random_graph(rng, n, 0.5); break;
        case Problem::gh: {
            s.g = random_graph(rng, n, 0.5);
            const int np = uniform(rng, 1, 3);
            std::vector<Edge> edges;
            for (NodeId a = 1; a <= np; ++a)
                for (NodeId b = a; b <= np; ++b)
                    if (coin(rng, a == b ? 0.2 : 0.7)) edges.push_back({a, b, 1});
            s.g2 = Graph(np, Directedness::undirected, std::move(edges), true);
            s.optimize = false;
            break;
        }
        case Problem::dgh:
            s.g = random_digraph(rng, n, 0.3);
            s.g2 = random_digraph(rng, uniform(rng, 1, 3), 0.6);
            s.optimize = false;
            break;
        case Problem::mwscp_a:
        case Problem::mwscp_b:
            s.g = random_graph(rng, n, 0.5);
            s.K = uniform(rng, 1, 3);
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId a = 1; a <= *s.K; ++a)
                    if (coin(rng, 0.7)) s.node_cost[{u, a}] = uniform(rng, -1, 5);
            if (s.problem == Problem::mwscp_b) {
                // Z* is the optimum of the companion problem, taken from the oracle.
                auto a = s;
                a.problem = Problem::mwscp_a;
                s.zstar = oracle_solve(a).value;
            }
            break;
        case Problem::wvcp:
            s.g = random_graph(rng, n, 0.5);
            for (NodeId u = 1; u <= n; ++u) s.node_weight[u] = weight(rng, 0, 5);
            if (coin(rng)) s.K = uniform(rng, 1, n);
            break;
        case Problem::mcp:
        case Problem::mwis: {
            std::vector<Edge> edges;
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = u + 1; v <= n; ++v)
                    if (coin(rng, 0.6)) edges.push_back({u, v, Rational(uniform(rng, -2, 5))});
            s.g = Graph(n, Directedness::undirected, std::move(edges));
            if (s.problem == Problem::mcp && coin(rng)) s.K = uniform(rng, 1, n);
            break;
        }
        default: break;
        }
        break;
    }
    case EncoderOp::labeling: {
        const int n = uniform(rng, 1, 5);
        s.g = random_graph(rng, n, 0.45);
        if (i % 3 == 2) {
            s.problem = Problem::fsfa;
            s.labels = std::pair(1, uniform(rng, 1, 3));
            for (const auto& e : s.g.edges()) {
                if (!coin(rng, 0.7)) continue;
                s.forbidden[{e.u, e.v}] = {uniform(rng, 0, 2)};
                s.edge_penalty[{e.u, e.v}] = uniform(rng, 0, 4);
            }
        } else {
            s.problem = Problem::gl;
            s.k = uniform(rng, 0, 2);
            s.m = uniform(rng, s.k, 2);
            int lo = coin(rng) ? 0 : 1;
            s.labels = std::pair(lo, lo + uniform(rng, 0, 4));
            s.optimize = i % 3 == 0;
        }
        break;
    }
    case EncoderOp::metric_labeling: {
        s.problem = Problem::mlp;
        const int n = uniform(rng, 1, 4), L = uniform(rng, 1, 3);
        s.g = random_graph(rng, n, 0.5, true);
        s.labels = std::pair(1, L);
        s.form = i % 2 == 0 ? ObjectiveForm::P2 : ObjectiveForm::P4;
        for (NodeId a = 1; a <= L; ++a)
            for (NodeId b = a + 1; b <= L; ++b) s.label_dist[{a, b}] = uniform(rng, 1, 4);
        for (NodeId u = 1; u <= n; ++u) {
            for (NodeId a = 1; a <= L; ++a)
                if (coin(rng, 0.6)) s.node_cost[{u, a}] = uniform(rng, 0, 5);
            if (L > 1 && coin(rng, 0.3)) {
                std::vector<NodeId> allowed;
                for (NodeId a = 1; a <= L; ++a)
                    if (coin(rng, 0.6)) allowed.push_back(a);
                if (allowed.empty()) allowed.push_back(uniform(rng, 1, L));
                s.allow[u] = allowed;
            }
        }
        break;
    }
    case EncoderOp::golomb:
        s.problem = Problem::golomb;
        s.marks = uniform(rng, 1, 4);
        s.K = uniform(rng, std::max(0, s.marks - 1), 7);
        s.optimize = i % 2 == 0;
        break;
    case EncoderOp::igc:
        s.problem = Problem::igc;
        s.g = random_connected(rng, uniform(rng, 1, 6), 0.3);
        break;
    case EncoderOp::mlcm: {
        s.problem = Problem::mlcm;
        const int layers = i % 6 == 0 ? 1 : uniform(rng, 2, 3);
        std::vector<std::vector<NodeId>> parts;
        int next = 1;
        for (int l = 0; l < layers; ++l) {
            std::vector<NodeId> layer;
            for (int c = uniform(rng, 2, 3); c > 0; --c) layer.push_back(next++);
            parts.push_back(layer);
        }
        std::vector<std::pair<NodeId, NodeId>> arcs;
        for (int l = 0; l + 1 < layers; ++l)
            for (NodeId u : parts[l])
                for (NodeId v : parts[l + 1])
                    if (coin(rng, 0.75)) arcs.emplace_back(u, v);
        std::vector<Edge> edges;
        for (auto [u, v] : arcs) edges.push_back({u, v, 1});
        s.g = Graph(next - 1, Directedness::directed, std::move(edges));
        s.layered = LayeredGraph(parts, arcs);
        break;
    }
    }
    return s;
}

/// A random model with decimal data: binaries, a few bounded continuous variables, mixed rows.
inline IPModel random_model(Rng& rng)
{
    static const Rational coefs[] = {1, -1, 2, -3, Rational(1, 2), Rational(-5, 4), Rational(3, 10)};
    IPModel m;
    std::vector<VarId> vars;
    const int nb = uniform(rng, 1, 8);
    for (int i = 1; i <= nb; ++i) vars.push_back(m.binary(Tag::x(uniform(rng, 1, 4), i)));
    for (int i = uniform(rng, 0, 2); i > 0; --i) vars.push_back(m.continuous(Tag::bound_u(i), 0, uniform(rng, 1, 9)));
    auto expr = [&] {
        LinExpr e;
        for (int t = uniform(rng, 1, 4); t > 0; --t) e.add(vars[uniform(rng, 0, static_cast<int>(vars.size()) - 1)], coefs[uniform(rng, 0, 6)]);
        return e;
    };
    static const Relation rels[] = {Relation::le, Relation::ge, Relation::eq};
    for (int r = uniform(rng, 0, 6); r > 0; --r)
        m.add_constraint("r" + std::to_string(r), expr(), rels[uniform(rng, 0, 2)], coefs[uniform(rng, 0, 6)] * uniform(rng, 0, 3));
    m.set_objective(coin(rng) ? Sense::minimize : Sense::maximize, expr());
    return m;
}

inline std::string summarize(const ProblemSpec& s)
{
    std::ostringstream out;
    out << problem_tag(s.problem) << (s.optimize ? " optimize" : " feasibility") << " n=" << s.g.node_count()
        << " m=" << s.g.edge_count();
    if (s.K) out << " K=" << *s.K;
    return out.str();
}

} // namespace gmip::testing
