#pragma once

#include "gmip/graph.hpp"

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

/// Which column rows accompany the one-target-per-node rows.
///   many_to_one:       every u mapped, targets may repeat
///   one_to_one:        every u mapped, each target used at most once
///   onto_total:        every u mapped, each target used exactly once
///   injective_partial: u mapped at most once, each target used exactly once (a subset S of V)
enum class Regime { many_to_one, one_to_one, onto_total, injective_partial };

enum class ObjectiveForm { P1, P2, P3, P4, P5, P6, P7 };

inline const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::many_to_one: return "many-to-one";
    case Regime::one_to_one: return "one-to-one";
    case Regime::onto_total: return "onto-total";
    case Regime::injective_partial: return "injective-partial";
    }
    return "?";
}

inline const char* form_name(ObjectiveForm f)
{
    static const char* names[] = {"P1", "P2", "P3", "P4", "P5", "P6", "P7"};
    return names[static_cast<int>(f)];
}

inline std::optional<ObjectiveForm> parse_form(const std::string& s)
{
    for (int i = 0; i < 7; ++i)
        if (s == form_name(static_cast<ObjectiveForm>(i))) return static_cast<ObjectiveForm>(i);
    return std::nullopt;
}

inline std::optional<Regime> parse_regime(const std::string& s)
{
    for (auto r : {Regime::many_to_one, Regime::one_to_one, Regime::onto_total, Regime::injective_partial})
        if (s == regime_name(r)) return r;
    return std::nullopt;
}

/// Input bundle of the general matching problem: pattern G, target G', allow sets, costs,
/// forbidden communication values and their penalties.
struct MatchingInstance
{
    Graph g;
    Graph gp;
    Regime regime = Regime::many_to_one;
    /// allow[u] lists L_u; an empty list (or a missing entry) means all of V'.
    std::vector<std::vector<NodeId>> allow;
    std::map<std::pair<NodeId, NodeId>, Rational> node_cost;
    /// Keyed by canonical pattern edge then canonical target edge (u<v, u'<=v' when undirected).
    std::map<std::array<NodeId, 4>, Rational> edge_cost;
    std::map<std::pair<NodeId, NodeId>, std::set<int>> forbidden;
    std::map<std::tuple<NodeId, NodeId, int>, Rational> penalty;
    /// Adds the induced exclusions: pattern non-edges may not land on target edges.
    bool induced = false;

    std::pair<NodeId, NodeId> edge_key(NodeId u, NodeId v) const
    {
        if (!g.is_directed() && u > v) std::swap(u, v);
        return {u, v};
    }

    std::array<NodeId, 4> cost_key(NodeId u, NodeId v, NodeId up, NodeId vp) const
    {
        if (!g.is_directed()) {
            if (u > v) std::swap(u, v);
            if (up > vp) std::swap(up, vp);
        }
        return {u, v, up, vp};
    }

    bool allowed(NodeId u, NodeId up) const
    {
        if (up < 1 || up > gp.node_count()) return false;
        if (static_cast<std::size_t>(u) >= allow.size() || allow[u].empty()) return true;
        return std::find(allow[u].begin(), allow[u].end(), up) != allow[u].end();
    }

    std::vector<NodeId> allow_set(NodeId u) const
    {
        std::vector<NodeId> out;
        for (NodeId up = 1; up <= gp.node_count(); ++up)
            if (allowed(u, up)) out.push_back(up);
        return out;
    }

    Rational c(NodeId u, NodeId up) const
    {
        auto it = node_cost.find({u, up});
        return it == node_cost.end() ? Rational(0) : it->second;
    }

    Rational d(NodeId u, NodeId v, NodeId up, NodeId vp) const
    {
        auto it = edge_cost.find(cost_key(u, v, up, vp));
        return it == edge_cost.end() ? Rational(0) : it->second;
    }

    const std::set<int>& t(NodeId u, NodeId v) const
    {
        static const std::set<int> empty;
        auto it = forbidden.find(edge_key(u, v));
        return it == forbidden.end() ? empty : it->second;
    }

    bool hits_forbidden(NodeId u, NodeId v, NodeId up, NodeId vp) const
    {
        auto val = d(u, v, up, vp);
        if (!is_integer(val)) return false;
        return t(u, v).count(static_cast<int>(val.numerator())) > 0;
    }

    Rational p(NodeId u, NodeId v, int tau) const
    {
        auto [a, b] = edge_key(u, v);
        auto it = penalty.find({a, b, tau});
        if (it == penalty.end())
            throw std::invalid_argument("missing penalty for edge " + std::to_string(a) + " " + std::to_string(b) +
                                        " value " + std::to_string(tau));
        return it->second;
    }

    /// Throws std::invalid_argument when the instance is malformed.
    void validate() const
    {
        if (g.is_directed() != gp.is_directed()) throw std::invalid_argument("G and G' must agree on directedness");
        for (std::size_t u = 1; u < allow.size(); ++u)
            for (NodeId up : allow[u])
                if (up < 1 || up > gp.node_count())
                    throw std::invalid_argument("allow set of node " + std::to_string(u) + " names unknown target " +
                                                std::to_string(up));
        if (allow.size() > static_cast<std::size_t>(g.node_count()) + 1)
            throw std::invalid_argument("allow sets given for nodes outside V");
        for (const auto& [key, val] : node_cost) {
            g.check_node(key.first);
            gp.check_node(key.second);
        }
        for (const auto& [key, val] : edge_cost) {
            if (!g.has_edge(key[0], key[1])) throw std::invalid_argument("edge cost on a non-edge of G");
            if (!gp.has_edge(key[2], key[3])) throw std::invalid_argument("edge cost on a non-edge of G'");
        }
        for (const auto& [key, taus] : forbidden)
            if (!g.has_edge(key.first, key.second)) throw std::invalid_argument("forbidden set on a non-edge of G");
        for (const auto& [key, val] : penalty) {
            auto [u, v, tau] = key;
            if (!t(u, v).count(tau)) throw std::invalid_argument("penalty given for a value outside the forbidden set");
            if (val < 0) throw std::invalid_argument("penalties must be nonnegative");
        }
        if (regime == Regime::onto_total || regime == Regime::many_to_one || regime == Regime::one_to_one)
            for (NodeId u = 1; u <= g.node_count(); ++u)
                if (allow_set(u).empty()) throw std::invalid_argument("empty allow set for node " + std::to_string(u));
    }
};

} // namespace gmip
