#pragma once

#include "gmip/graph.hpp"
#include "gmip/instance.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gmip {

enum class Problem {
    ktsp,
    bandwidth,
    lap,
    dlap,
    pmp,
    mclap,
    gi,
    si,
    isi,
    lcs,
    mism,
    msm,
    cmp,
    gkc,
    gc,
    gh,
    dgh,
    mwscp_a,
    mwscp_b,
    wvcp,
    mcp,
    mwis,
    gl,
    fsfa,
    mlp,
    golomb,
    igc,
    mlcm,
    framework,
};

struct ProblemInfo
{
    Problem problem;
    const char* tag;
    const char* family; ///< the encoder operation that handles it
    const char* summary;
};

inline const std::vector<ProblemInfo>& problem_table()
{
    static const std::vector<ProblemInfo> table = {
        {Problem::ktsp, "ktsp", "ktsp", "circuit on k nodes; variants A (exists), B (total distance), C (bottleneck)"},
        {Problem::bandwidth, "bandwidth", "bandwidth", "linear ordering minimising the longest edge stretch"},
        {Problem::lap, "lap", "arrangement", "linear arrangement, total weighted stretch"},
        {Problem::dlap, "dlap", "arrangement", "directed linear arrangement"},
        {Problem::pmp, "pmp", "arrangement", "profile minimisation"},
        {Problem::mclap, "mclap", "arrangement", "minimum cut linear arrangement (cutwidth)"},
        {Problem::gi, "gi", "isomorphism", "graph isomorphism"},
        {Problem::si, "si", "isomorphism", "subgraph isomorphism of graph2 into graph"},
        {Problem::isi, "isi", "isomorphism", "induced subgraph isomorphism of graph2 into graph"},
        {Problem::lcs, "lcs", "common-subgraph", "largest common edge subgraph"},
        {Problem::mism, "mism", "common-subgraph", "maximum induced subgraph matching (directed)"},
        {Problem::msm, "msm", "common-subgraph", "maximum subgraph matching, many-to-many (directed)"},
        {Problem::cmp, "cmp", "common-subgraph", "contact map overlap with non-crossing alignments"},
        {Problem::gkc, "gkc", "coloring", "K-colorability"},
        {Problem::gc, "gc", "coloring", "chromatic number"},
        {Problem::gh, "gh", "coloring", "graph homomorphism into graph2"},
        {Problem::dgh, "dgh", "coloring", "directed graph homomorphism into graph2"},
        {Problem::mwscp_a, "mwscp-a", "coloring", "maximum weight subset colorable with K colors"},
        {Problem::mwscp_b, "mwscp-b", "coloring", "fewest colors attaining weight Zstar"},
        {Problem::wvcp, "wvcp", "coloring", "weighted vertex coloring"},
        {Problem::mcp, "mcp", "coloring", "maximum weight clique partition"},
        {Problem::mwis, "mwis", "coloring", "maximum weight clique (independent set of the complement)"},
        {Problem::gl, "gl", "labeling", "L(m,k) labeling, feasibility or minimum span"},
        {Problem::fsfa, "fsfa", "labeling", "fixed spectrum frequency assignment"},
        {Problem::mlp, "mlp", "metric-labeling", "metric labeling with total (P2) or max-load (P4) cost"},
        {Problem::golomb, "golomb", "golomb", "Golomb ruler with n marks"},
        {Problem::igc, "igc", "igc", "interval graph completion"},
        {Problem::mlcm, "mlcm", "mlcm", "multi-layer crossing minimisation"},
        {Problem::framework, "framework", "framework", "general matching instance, outputs 1/2/3"},
    };
    return table;
}

inline const char* problem_tag(Problem p)
{
    for (const auto& info : problem_table())
        if (info.problem == p) return info.tag;
    return "?";
}

inline std::optional<Problem> parse_problem(const std::string& s)
{
    for (const auto& info : problem_table())
        if (s == info.tag) return info.problem;
    return std::nullopt;
}

/// A named problem instance as read from a spec file. Fields a problem does not use stay empty.
struct ProblemSpec
{
    Problem problem = Problem::framework;
    bool optimize = true;
    Graph g;
    Graph g2;
    std::optional<LayeredGraph> layered;

    std::optional<int> K;       ///< bound, color count, ruler length
    int k = 0;                  ///< k-TSP circuit length; distance-two separation for labeling
    int m = 0;                  ///< adjacency separation for labeling
    int marks = 0;              ///< Golomb mark count
    char variant = 'A';         ///< k-TSP output A, B or C
    std::optional<std::pair<int, int>> labels;
    std::optional<Rational> zstar;

    std::map<std::pair<NodeId, NodeId>, Rational> node_cost;   ///< c u u'
    std::map<NodeId, Rational> node_weight;                    ///< w u
    std::map<std::pair<NodeId, NodeId>, Rational> label_dist;  ///< D u' v' (unordered)
    std::map<std::array<NodeId, 4>, Rational> edge_cost;       ///< d u v u' v'
    std::map<std::pair<NodeId, NodeId>, std::set<int>> forbidden;
    std::map<std::tuple<NodeId, NodeId, int>, Rational> penalty;
    std::map<std::pair<NodeId, NodeId>, Rational> edge_penalty; ///< p u v value (one price for every forbidden value)
    std::map<NodeId, std::vector<NodeId>> allow;

    // framework instances
    int output = 2;
    ObjectiveForm form = ObjectiveForm::P2;
    Regime regime = Regime::many_to_one;
    bool induced = false;

    Rational weight_of(NodeId u) const
    {
        auto it = node_weight.find(u);
        return it == node_weight.end() ? Rational(1) : it->second;
    }

    Rational cost_of(NodeId u, NodeId up) const
    {
        auto it = node_cost.find({u, up});
        return it == node_cost.end() ? Rational(0) : it->second;
    }

    Rational dist_of(NodeId a, NodeId b) const
    {
        auto it = label_dist.find({std::min(a, b), std::max(a, b)});
        return it == label_dist.end() ? Rational(0) : it->second;
    }

    /// Separation threshold of an FSFA edge (largest unacceptable frequency gap).
    int threshold(NodeId u, NodeId v) const
    {
        auto it = forbidden.find({std::min(u, v), std::max(u, v)});
        if (it == forbidden.end() || it->second.empty()) return -1;
        return *it->second.rbegin();
    }

    Rational fsfa_penalty(NodeId u, NodeId v) const
    {
        auto it = edge_penalty.find({std::min(u, v), std::max(u, v)});
        return it == edge_penalty.end() ? Rational(0) : it->second;
    }
};

/// A decoded solution. f is indexed by pattern node (1-based, slot 0 unused); values are target
/// labels in the problem's own numbering. relation carries many-to-many answers.
struct Witness
{
    std::vector<std::optional<int>> f;
    std::vector<std::pair<NodeId, NodeId>> relation;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Turns a framework spec into the matching instance it describes.
inline MatchingInstance to_instance(const ProblemSpec& s)
{
    MatchingInstance inst;
    inst.g = s.g;
    inst.gp = s.g2;
    inst.regime = s.regime;
    inst.induced = s.induced;
    inst.allow.assign(static_cast<std::size_t>(s.g.node_count() + 1), {});
    for (const auto& [u, list] : s.allow) {
        if (u < 1 || u > s.g.node_count()) throw std::invalid_argument("allow set for unknown node " + std::to_string(u));
        inst.allow[u] = list;
    }
    inst.node_cost = s.node_cost;
    for (const auto& [key, val] : s.edge_cost) inst.edge_cost[inst.cost_key(key[0], key[1], key[2], key[3])] = val;
    for (const auto& [key, taus] : s.forbidden) inst.forbidden[inst.edge_key(key.first, key.second)] = taus;
    for (const auto& [key, val] : s.penalty) {
        auto [u, v, tau] = key;
        auto e = inst.edge_key(u, v);
        inst.penalty[{e.first, e.second, tau}] = val;
    }
    for (const auto& [key, val] : s.edge_penalty) {
        auto e = inst.edge_key(key.first, key.second);
        for (int tau : inst.t(e.first, e.second)) inst.penalty.try_emplace({e.first, e.second, tau}, val);
    }
    inst.validate();
    return inst;
}

} // namespace gmip
