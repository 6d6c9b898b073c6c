#pragma once

// Direct checks of a decoded witness against each problem's definition. Returns the witness's
// objective value (0 for feasibility problems) or nullopt when the witness breaks the definition.

#include "gmip/graph.hpp"
#include "gmip/problem.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace gmip {

namespace pred_detail {

using Map = std::vector<std::optional<int>>;

inline bool sized(const Map& f, int n) { return static_cast<int>(f.size()) == n + 1; }

inline bool total(const Map& f)
{
    for (std::size_t u = 1; u < f.size(); ++u)
        if (!f[u]) return false;
    return true;
}

inline std::set<int> image(const Map& f)
{
    std::set<int> out;
    for (std::size_t u = 1; u < f.size(); ++u)
        if (f[u]) out.insert(*f[u]);
    return out;
}

inline int mapped_count(const Map& f)
{
    int c = 0;
    for (std::size_t u = 1; u < f.size(); ++u) c += f[u].has_value();
    return c;
}

inline bool one_to_one(const Map& f) { return static_cast<int>(image(f).size()) == mapped_count(f); }

/// f is a bijection from 1..n onto 1..n.
inline bool ordering(const Map& f, int n)
{
    if (!sized(f, n) || !total(f) || !one_to_one(f)) return false;
    auto img = image(f);
    return img.empty() || (*img.begin() == 1 && *img.rbegin() == n);
}

inline std::optional<Rational> within(const ProblemSpec& s, Rational v)
{
    if (s.optimize) return v;
    if (!s.K || v > *s.K) return std::nullopt;
    return Rational(0);
}

inline int at(const Map& f, NodeId u) { return *f[u]; }

} // namespace pred_detail

inline std::optional<Rational> check_witness(const ProblemSpec& s, const Witness& w)
{
    using namespace pred_detail;
    const Graph& g = s.g;
    const int n = s.problem == Problem::golomb ? s.marks
                  : s.problem == Problem::mlcm ? s.layered->node_count()
                                               : g.node_count();
    const Map& f = w.f;
    if (s.problem != Problem::msm && !sized(f, n)) return std::nullopt;

    switch (s.problem) {
    case Problem::ktsp: {
        std::map<int, NodeId> at_pos;
        for (NodeId u = 1; u <= n; ++u)
            if (f[u]) {
                if (*f[u] < 1 || *f[u] > s.k || at_pos.count(*f[u])) return std::nullopt;
                at_pos[*f[u]] = u;
            }
        if (static_cast<int>(at_pos.size()) != s.k) return std::nullopt;
        Rational total_w = 0, longest = 0;
        for (int i = 1; i <= s.k; ++i) {
            NodeId a = at_pos[i], b = at_pos[i % s.k + 1];
            if (!g.has_edge(a, b)) return std::nullopt;
            total_w += g.weight(a, b);
            longest = std::max(longest, g.weight(a, b));
        }
        if (s.variant == 'A') return Rational(0);
        return within(s, s.variant == 'B' ? total_w : longest);
    }
    case Problem::bandwidth:
    case Problem::lap:
    case Problem::dlap:
    case Problem::pmp:
    case Problem::mclap:
    case Problem::igc: {
        if (!ordering(f, n)) return std::nullopt;
        Rational v = 0;
        if (s.problem == Problem::pmp) {
            for (NodeId u = 1; u <= n; ++u) {
                int reach = 0;
                for (NodeId x : g.neighbors(u)) reach = std::max(reach, at(f, u) - at(f, x));
                v += reach;
            }
            return within(s, v);
        }
        if (s.problem == Problem::igc) {
            // Build the completion edge by edge, then count what was added.
            std::set<std::pair<int, int>> added;
            for (NodeId v2 = 1; v2 <= n; ++v2)
                for (NodeId u : g.neighbors(v2)) {
                    if (at(f, u) >= at(f, v2)) continue;
                    for (NodeId z = 1; z <= n; ++z)
                        if (at(f, u) < at(f, z) && at(f, z) < at(f, v2) && !g.has_edge(z, v2))
                            added.insert({std::min(z, v2), std::max(z, v2)});
                }
            return Rational(static_cast<long long>(added.size()));
        }
        if (s.problem == Problem::mclap) {
            std::vector<int> cross(static_cast<std::size_t>(n + 2), 0);
            for (const auto& e : g.edges()) {
                int lo = std::min(at(f, e.u), at(f, e.v)), hi = std::max(at(f, e.u), at(f, e.v));
                for (int i = lo; i < hi; ++i) ++cross[i];
            }
            return within(s, *std::max_element(cross.begin(), cross.end()));
        }
        for (const auto& e : g.edges()) {
            int stretch = at(f, e.v) - at(f, e.u);
            if (g.is_directed() && stretch <= 0) return std::nullopt;
            stretch = std::abs(stretch);
            if (s.problem == Problem::bandwidth)
                v = std::max(v, Rational(stretch));
            else
                v += e.w * stretch;
        }
        return within(s, v);
    }
    case Problem::gi: {
        if (!ordering(f, n) || g.node_count() != s.g2.node_count()) return std::nullopt;
        std::set<std::pair<int, int>> mapped;
        for (const auto& e : g.edges()) mapped.insert({std::min(at(f, e.u), at(f, e.v)), std::max(at(f, e.u), at(f, e.v))});
        std::set<std::pair<int, int>> target;
        for (const auto& e : s.g2.edges()) target.insert({e.u, e.v});
        return mapped == target ? std::optional<Rational>(0) : std::nullopt;
    }
    case Problem::si:
    case Problem::isi: {
        const Graph& h = s.g2;
        if (!one_to_one(f) || static_cast<int>(image(f).size()) != h.node_count()) return std::nullopt;
        std::map<int, NodeId> host;
        for (NodeId u = 1; u <= n; ++u)
            if (f[u]) host[*f[u]] = u;
        if (host.begin()->first < 1 || host.rbegin()->first > h.node_count()) return std::nullopt;
        for (const auto& e : h.edges())
            if (!g.has_edge(host[e.u], host[e.v])) return std::nullopt;
        if (s.problem == Problem::isi)
            for (NodeId a = 1; a <= h.node_count(); ++a)
                for (NodeId b = a + 1; b <= h.node_count(); ++b)
                    if (g.has_edge(host[a], host[b]) && !h.has_edge(a, b)) return std::nullopt;
        return Rational(0);
    }
    case Problem::lcs:
    case Problem::cmp:
    case Problem::mism: {
        const Graph& h = s.g2;
        if (!one_to_one(f)) return std::nullopt;
        for (int a : image(f))
            if (a < 1 || a > h.node_count()) return std::nullopt;
        if (s.problem == Problem::mism) {
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = 1; v <= n; ++v)
                    if (u != v && f[u] && f[v] && g.has_edge(u, v) != h.has_edge(*f[u], *f[v])) return std::nullopt;
            return Rational(mapped_count(f));
        }
        if (s.problem == Problem::cmp) {
            int last = 0;
            for (NodeId u = 1; u <= n; ++u)
                if (f[u]) {
                    if (*f[u] <= last) return std::nullopt;
                    last = *f[u];
                }
        }
        long long shared = 0;
        for (const auto& e : g.edges()) shared += f[e.u] && f[e.v] && h.has_edge(*f[e.u], *f[e.v]);
        return Rational(shared);
    }
    case Problem::msm: {
        const Graph& h = s.g2;
        std::set<std::pair<int, int>> r(w.relation.begin(), w.relation.end());
        if (r.size() != w.relation.size()) return std::nullopt;
        for (auto [u, up] : r) {
            if (u < 1 || u > n || up < 1 || up > h.node_count()) return std::nullopt;
            for (auto [v, vp] : r)
                if (g.has_edge(u, v) != h.has_edge(up, vp)) return std::nullopt;
        }
        return Rational(static_cast<long long>(r.size()));
    }
    case Problem::gkc:
    case Problem::gc:
    case Problem::wvcp: {
        int colors = s.problem == Problem::gkc ? *s.K : s.K ? *s.K : n;
        if (!total(f)) return std::nullopt;
        for (NodeId u = 1; u <= n; ++u)
            if (at(f, u) < 1 || at(f, u) > colors) return std::nullopt;
        for (const auto& e : g.edges())
            if (at(f, e.u) == at(f, e.v)) return std::nullopt;
        if (s.problem == Problem::gkc) return Rational(0);
        if (s.problem == Problem::gc) return Rational(*image(f).rbegin());
        std::map<int, Rational> heaviest;
        for (NodeId u = 1; u <= n; ++u) heaviest[at(f, u)] = std::max(heaviest[at(f, u)], s.weight_of(u));
        Rational z = 0;
        for (const auto& [c, wt] : heaviest) z += wt;
        return z;
    }
    case Problem::gh:
    case Problem::dgh: {
        if (!total(f)) return std::nullopt;
        for (NodeId u = 1; u <= n; ++u)
            if (at(f, u) < 1 || at(f, u) > s.g2.node_count()) return std::nullopt;
        for (const auto& e : g.edges())
            if (!s.g2.has_edge(at(f, e.u), at(f, e.v))) return std::nullopt;
        return Rational(0);
    }
    case Problem::mwscp_a:
    case Problem::mwscp_b: {
        Rational z = 0;
        int top = 0;
        for (NodeId u = 1; u <= n; ++u) {
            if (!f[u]) continue;
            if (*f[u] < 1 || *f[u] > *s.K) return std::nullopt;
            z += s.cost_of(u, *f[u]);
            top = std::max(top, *f[u]);
        }
        for (const auto& e : g.edges())
            if (f[e.u] && f[e.u] == f[e.v]) return std::nullopt;
        if (s.problem == Problem::mwscp_a) return z;
        if (z != *s.zstar) return std::nullopt;
        return Rational(top);
    }
    case Problem::mcp:
    case Problem::mwis: {
        std::map<int, std::vector<NodeId>> groups;
        for (NodeId u = 1; u <= n; ++u)
            if (f[u]) groups[*f[u]].push_back(u);
        if (s.problem == Problem::mcp && !total(f)) return std::nullopt;
        if (s.problem == Problem::mwis && groups.size() > 1) return std::nullopt;
        Rational z = 0;
        for (const auto& [c, members] : groups)
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    if (!g.has_edge(members[i], members[j])) return std::nullopt;
                    z += g.weight(members[i], members[j]);
                }
        return z;
    }
    case Problem::gl:
    case Problem::fsfa: {
        auto [lo, hi] = *s.labels;
        if (!total(f)) return std::nullopt;
        for (NodeId u = 1; u <= n; ++u)
            if (at(f, u) < lo || at(f, u) > hi) return std::nullopt;
        if (s.problem == Problem::fsfa) {
            Rational z = 0;
            for (const auto& e : g.edges())
                if (std::abs(at(f, e.u) - at(f, e.v)) <= s.threshold(e.u, e.v)) z += s.fsfa_penalty(e.u, e.v);
            return z;
        }
        for (NodeId u = 1; u <= n; ++u)
            for (NodeId v = u + 1; v <= n; ++v) {
                int gap = std::abs(at(f, u) - at(f, v));
                if (g.has_edge(u, v) && gap < s.m) return std::nullopt;
                if (!g.has_edge(u, v) && gap < s.k) {
                    // Distance exactly two means a common neighbour.
                    for (NodeId x : g.neighbors(u))
                        if (g.has_edge(x, v)) return std::nullopt;
                }
            }
        return s.optimize ? Rational(*image(f).rbegin()) : Rational(0);
    }
    case Problem::mlp: {
        if (!total(f)) return std::nullopt;
        for (NodeId u = 1; u <= n; ++u) {
            auto it = s.allow.find(u);
            bool ok = it == s.allow.end() || it->second.empty()
                          ? at(f, u) >= 1 && at(f, u) <= s.labels->second
                          : std::count(it->second.begin(), it->second.end(), at(f, u)) > 0;
            if (!ok) return std::nullopt;
        }
        std::map<int, Rational> load;
        Rational z = 0;
        for (NodeId u = 1; u <= n; ++u) {
            z += s.cost_of(u, at(f, u));
            load[at(f, u)] += s.cost_of(u, at(f, u));
        }
        for (const auto& e : g.edges()) {
            Rational c = e.w * s.dist_of(at(f, e.u), at(f, e.v));
            z += c;
            load[at(f, e.u)] += c;
            if (at(f, e.v) != at(f, e.u)) load[at(f, e.v)] += c;
        }
        if (s.form == ObjectiveForm::P2) return z;
        Rational worst = 0;
        for (const auto& [a, l] : load) worst = std::max(worst, l);
        return worst;
    }
    case Problem::golomb: {
        if (!total(f) || n == 0 || at(f, 1) != 0) return std::nullopt;
        std::set<int> diffs;
        for (NodeId i = 1; i <= n; ++i) {
            if (at(f, i) > *s.K || (i > 1 && at(f, i) <= at(f, i - 1))) return std::nullopt;
            for (NodeId j = 1; j < i; ++j)
                if (!diffs.insert(at(f, i) - at(f, j)).second) return std::nullopt;
        }
        return s.optimize ? Rational(at(f, n)) : Rational(0);
    }
    case Problem::mlcm: {
        const LayeredGraph& lg = *s.layered;
        if (!total(f)) return std::nullopt;
        for (const auto& layer : lg.layers()) {
            std::set<int> pos;
            for (NodeId u : layer) pos.insert(at(f, u));
            if (pos.size() != layer.size() || *pos.begin() != 1 || *pos.rbegin() != static_cast<int>(layer.size()))
                return std::nullopt;
        }
        long long crossings = 0;
        for (const auto& [u, up] : lg.arcs())
            for (const auto& [v, vp] : lg.arcs())
                if (lg.layer_of(u) == lg.layer_of(v) && at(f, u) < at(f, v) && at(f, vp) < at(f, up)) ++crossings;
        return Rational(crossings);
    }
    case Problem::framework: break;
    }
    return std::nullopt;
}

} // namespace gmip
