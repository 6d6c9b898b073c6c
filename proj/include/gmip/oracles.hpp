#pragma once

// Brute-force reference semantics. Nothing here touches the IP model or the encoders.

#include "gmip/graph.hpp"
#include "gmip/instance.hpp"
#include "gmip/problem.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmip {

class CapExceeded : public std::runtime_error
{
public:
    explicit CapExceeded(double space)
        : std::runtime_error("enumeration space " + std::to_string(static_cast<long long>(space)) +
                             " exceeds the oracle cap"),
          space_(space)
    {}
    double space() const { return space_; }

private:
    double space_;
};

/// Enumeration cap, GMIP_ORACLE_CAP or 10^7.
inline double oracle_cap()
{
    if (const char* env = std::getenv("GMIP_ORACLE_CAP")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 1e7;
}

struct OracleResult
{
    bool feasible = false;
    Rational value = 0;
    Witness witness;
};

enum class FrameworkOutput { output1, output2, output3 };

namespace oracle_detail {

inline void guard(double space)
{
    if (space > oracle_cap()) throw CapExceeded(space);
}

inline double power(double b, int e)
{
    double r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline double falling(int n, int k)
{
    double r = 1;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

/// Calls fn(f) for every f with f[u] drawn from choices[u] (u = 1..n, slot 0 unused).
inline void for_each_choice(const std::vector<std::vector<int>>& choices, const std::function<void(const std::vector<int>&)>& fn)
{
    const int n = static_cast<int>(choices.size()) - 1;
    double space = 1;
    for (int u = 1; u <= n; ++u) space *= static_cast<double>(choices[u].size());
    guard(space);
    for (int u = 1; u <= n; ++u)
        if (choices[u].empty()) return;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n + 1), 0);
    std::vector<int> f(static_cast<std::size_t>(n + 1), 0);
    for (int u = 1; u <= n; ++u) f[u] = choices[u][0];
    while (true) {
        fn(f);
        int u = n;
        while (u >= 1) {
            if (++idx[u] < choices[u].size()) {
                f[u] = choices[u][idx[u]];
                break;
            }
            idx[u] = 0;
            f[u] = choices[u][0];
            --u;
        }
        if (u < 1) return;
    }
}

inline std::vector<std::vector<int>> uniform_choices(int n, int lo, int hi)
{
    std::vector<int> all;
    for (int v = lo; v <= hi; ++v) all.push_back(v);
    return std::vector<std::vector<int>>(static_cast<std::size_t>(n + 1), all);
}

/// Calls fn(p) for every bijection p: {1..n} -> {1..n}.
inline void for_each_permutation(int n, const std::function<void(const std::vector<int>&)>& fn)
{
    guard(falling(n, n));
    std::vector<int> p(static_cast<std::size_t>(n + 1));
    std::iota(p.begin(), p.end(), 0);
    do {
        fn(p);
    } while (std::next_permutation(p.begin() + 1, p.end()));
}

inline bool injective(const std::vector<int>& f)
{
    std::vector<int> seen;
    for (std::size_t u = 1; u < f.size(); ++u)
        if (f[u] != 0) seen.push_back(f[u]);
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

inline Witness witness_of(const std::vector<int>& f)
{
    Witness w;
    w.f.assign(f.size(), std::nullopt);
    for (std::size_t u = 1; u < f.size(); ++u)
        if (f[u] != 0) w.f[u] = f[u];
    return w;
}

/// Keeps the best candidate; ties keep the first one seen.
struct Best
{
    bool maximize = false;
    OracleResult r;

    void offer(const Rational& v, const std::function<Witness()>& w)
    {
        if (r.feasible && (maximize ? !(v > r.value) : !(v < r.value))) return;
        r.feasible = true;
        r.value = v;
        r.witness = w();
    }
};

inline bool linked(const Graph& g, NodeId a, NodeId b) { return g.has_edge(a, b) || g.has_edge(b, a); }

inline Rational max0(const std::vector<Rational>& xs)
{
    Rational best = 0;
    for (const auto& x : xs) best = std::max(best, x);
    return best;
}

} // namespace oracle_detail

/// Exhaustive optimum of a matching instance under the chosen output and objective form.
inline OracleResult oracle_framework(const MatchingInstance& inst, FrameworkOutput out,
                                     ObjectiveForm form = ObjectiveForm::P2)
{
    using namespace oracle_detail;
    inst.validate();
    const Graph& g = inst.g;
    const Graph& gp = inst.gp;
    const int n = g.node_count(), np = gp.node_count();
    const bool partial = inst.regime == Regime::injective_partial;
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(n + 1));
    for (NodeId u = 1; u <= n; ++u) {
        choices[u] = inst.allow_set(u);
        if (partial) choices[u].insert(choices[u].begin(), 0);
    }
    Best best;
    for_each_choice(choices, [&](const std::vector<int>& f) {
        // Assignment regime.
        std::vector<int> load(static_cast<std::size_t>(np + 1), 0);
        for (NodeId u = 1; u <= n; ++u)
            if (f[u]) ++load[f[u]];
        for (NodeId a = 1; a <= np; ++a) {
            if (inst.regime == Regime::one_to_one && load[a] > 1) return;
            if ((inst.regime == Regime::onto_total || partial) && load[a] != 1) return;
        }
        // Edge images.
        Rational penalty = 0;
        for (const auto& e : g.edges()) {
            int p = f[e.u], q = f[e.v];
            if (!p || !q) continue;
            if (g.is_directed()) {
                if (!gp.has_edge(p, q)) return;
            } else if (!gp.has_edge(p, q)) {
                return;
            }
            if (inst.hits_forbidden(e.u, e.v, p, q)) {
                if (out != FrameworkOutput::output3) return;
                penalty += inst.p(e.u, e.v, static_cast<int>(inst.d(e.u, e.v, p, q).numerator()));
            }
        }
        if (inst.induced)
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = u + 1; v <= n; ++v)
                    if (f[u] && f[v] && !g.has_edge(u, v) && gp.has_edge(f[u], f[v])) return;

        auto wit = [&] { return witness_of(f); };
        if (out == FrameworkOutput::output1) {
            best.offer(0, wit);
            return;
        }
        if (out == FrameworkOutput::output3) {
            best.offer(penalty, wit);
            return;
        }
        auto cu = [&](NodeId u) { return f[u] ? inst.c(u, f[u]) : Rational(0); };
        auto dt = [&](NodeId u, NodeId v) {
            return f[u] && f[v] ? inst.d(u, v, f[u], f[v]) : Rational(0);
        };
        std::vector<Rational> terms;
        Rational value = 0;
        switch (form) {
        case ObjectiveForm::P1:
            for (NodeId u = 1; u <= n; ++u) {
                auto nb = g.neighbors(u);
                if (nb.empty()) terms.push_back(cu(u));
                for (NodeId v : nb) terms.push_back(cu(u) + dt(u, v));
            }
            value = max0(terms);
            break;
        case ObjectiveForm::P2:
            for (NodeId u = 1; u <= n; ++u) value += cu(u);
            for (const auto& e : g.edges()) value += dt(e.u, e.v);
            break;
        case ObjectiveForm::P3:
            for (NodeId u = 1; u <= n; ++u) {
                std::vector<Rational> row;
                for (NodeId v : g.neighbors(u)) row.push_back(cu(u) + dt(u, v));
                value += max0(row);
            }
            break;
        case ObjectiveForm::P4:
            for (NodeId a = 1; a <= np; ++a) {
                Rational l = 0;
                for (NodeId u = 1; u <= n; ++u)
                    if (f[u] == a) l += inst.c(u, a);
                for (const auto& e : g.edges())
                    if (f[e.u] && f[e.v] && (f[e.u] == a || f[e.v] == a)) l += dt(e.u, e.v);
                terms.push_back(l);
            }
            value = max0(terms);
            break;
        case ObjectiveForm::P5:
            for (NodeId a = 1; a <= np; ++a) {
                std::vector<Rational> row;
                for (NodeId u = 1; u <= n; ++u) {
                    if (f[u] != a) continue;
                    Rational s = inst.c(u, a);
                    for (NodeId v : g.neighbors(u)) s += dt(u, v);
                    row.push_back(s);
                }
                value += max0(row);
            }
            break;
        case ObjectiveForm::P6:
            for (NodeId u = 1; u <= n; ++u) {
                Rational s = cu(u);
                for (NodeId v : g.neighbors(u)) s += dt(u, v);
                terms.push_back(s);
            }
            value = max0(terms);
            break;
        case ObjectiveForm::P7:
            for (NodeId i = 1; i <= np; ++i) {
                Rational s = 0;
                for (const auto& e : g.edges()) {
                    if (!f[e.u] || !f[e.v]) continue;
                    int lo = std::min(f[e.u], f[e.v]), hi = std::max(f[e.u], f[e.v]);
                    if (lo <= i && i < hi) s += cu(e.u) + cu(e.v) + dt(e.u, e.v);
                }
                terms.push_back(s);
            }
            value = max0(terms);
            break;
        }
        best.offer(value, wit);
    });
    return best.r;
}

namespace oracle_detail {

/// Minimises (or maximises) score(p) over all orderings; nullopt scores are infeasible.
inline OracleResult over_orderings(int n, bool maximize, const std::function<std::optional<Rational>(const std::vector<int>&)>& score)
{
    Best best{maximize, {}};
    for_each_permutation(n, [&](const std::vector<int>& p) {
        if (auto v = score(p)) best.offer(*v, [&] { return witness_of(p); });
    });
    return best.r;
}

inline OracleResult over_choices(const std::vector<std::vector<int>>& choices, bool maximize,
                                 const std::function<std::optional<Rational>(const std::vector<int>&)>& score)
{
    Best best{maximize, {}};
    for_each_choice(choices, [&](const std::vector<int>& f) {
        if (auto v = score(f)) best.offer(*v, [&] { return witness_of(f); });
    });
    return best.r;
}

/// Turns an optimisation answer into a feasibility verdict against bound K.
inline OracleResult bounded(OracleResult r, const ProblemSpec& s, bool maximize = false)
{
    if (s.optimize || !r.feasible) return r;
    if (!s.K) throw std::invalid_argument("feasibility mode needs K");
    bool ok = maximize ? r.value >= *s.K : r.value <= *s.K;
    if (!ok) return {};
    r.value = 0;
    return r;
}

inline std::optional<Rational> no_value() { return std::nullopt; }

inline OracleResult ktsp(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const int n = g.node_count(), k = s.k;
    guard(falling(n, k));
    Best best;
    std::vector<int> seq;
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    std::function<void()> extend = [&] {
        if (static_cast<int>(seq.size()) == k) {
            if (!g.has_edge(seq.back(), seq.front())) return;
            Rational total = 0, longest = 0;
            for (int i = 0; i < k; ++i) {
                auto w = g.weight(seq[i], seq[(i + 1) % k]);
                total += w;
                longest = std::max(longest, w);
            }
            Rational v = s.variant == 'B' ? total : s.variant == 'C' ? longest : Rational(0);
            best.offer(v, [&] {
                Witness w;
                w.f.assign(static_cast<std::size_t>(n + 1), std::nullopt);
                for (int i = 0; i < k; ++i) w.f[seq[i]] = i + 1;
                return w;
            });
            return;
        }
        for (NodeId v = 1; v <= n; ++v) {
            if (used[v] || (!seq.empty() && !g.has_edge(seq.back(), v))) continue;
            used[v] = 1;
            seq.push_back(v);
            extend();
            seq.pop_back();
            used[v] = 0;
        }
    };
    extend();
    if (s.variant == 'A') return best.r;
    return bounded(best.r, s);
}

inline OracleResult ordering_problem(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const int n = g.node_count();
    auto r = over_orderings(n, false, [&](const std::vector<int>& p) -> std::optional<Rational> {
        Rational v = 0;
        switch (s.problem) {
        case Problem::bandwidth:
            for (const auto& e : g.edges()) {
                int gap = p[e.v] - p[e.u];
                if (g.is_directed() && gap <= 0) return std::nullopt;
                v = std::max(v, Rational(std::abs(gap)));
            }
            return v;
        case Problem::lap:
            for (const auto& e : g.edges()) v += e.w * std::abs(p[e.u] - p[e.v]);
            return v;
        case Problem::dlap:
            for (const auto& e : g.edges()) {
                if (p[e.v] <= p[e.u]) return std::nullopt;
                v += e.w * (p[e.v] - p[e.u]);
            }
            return v;
        case Problem::pmp:
            // Profile: each node reaches back to its earliest closed neighbour.
            for (NodeId u = 1; u <= n; ++u) {
                int earliest = p[u];
                for (NodeId w : g.neighbors(u)) earliest = std::min(earliest, p[w]);
                v += p[u] - earliest;
            }
            return v;
        case Problem::mclap:
            for (int i = 1; i <= n; ++i) {
                int cut = 0;
                for (const auto& e : g.edges()) cut += std::min(p[e.u], p[e.v]) <= i && i < std::max(p[e.u], p[e.v]);
                v = std::max(v, Rational(cut));
            }
            return v;
        case Problem::igc: {
            // A non-adjacent pair {a,b} with a placed before b needs a fill edge when some neighbour
            // of b sits before a.
            int fill = 0;
            for (NodeId a = 1; a <= n; ++a)
                for (NodeId b = 1; b <= n; ++b) {
                    if (a == b || g.has_edge(a, b) || p[a] > p[b]) continue;
                    for (NodeId u : g.neighbors(b))
                        if (p[u] < p[a]) {
                            ++fill;
                            break;
                        }
                }
            return Rational(fill);
        }
        default: throw std::logic_error("not an ordering problem");
        }
    });
    if (s.problem == Problem::igc) return r;
    return bounded(r, s);
}

inline OracleResult isomorphism(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const Graph& h = s.g2;
    const int n = g.node_count(), np = h.node_count();
    Best best;
    if (s.problem == Problem::gi) {
        if (n != np) return {};
        for_each_permutation(n, [&](const std::vector<int>& p) {
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = u + 1; v <= n; ++v)
                    if (g.has_edge(u, v) != h.has_edge(p[u], p[v])) return;
            best.offer(0, [&] { return witness_of(p); });
        });
        return best.r;
    }
    // phi sends each pattern node of graph2 to a distinct node of graph.
    guard(falling(n, np));
    std::vector<int> phi(static_cast<std::size_t>(np + 1), 0);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    std::function<void(int)> place = [&](int i) {
        if (best.r.feasible) return;
        if (i > np) {
            best.offer(0, [&] {
                Witness w;
                w.f.assign(static_cast<std::size_t>(n + 1), std::nullopt);
                for (int j = 1; j <= np; ++j) w.f[phi[j]] = j;
                return w;
            });
            return;
        }
        for (NodeId u = 1; u <= n; ++u) {
            if (used[u]) continue;
            bool ok = true;
            for (int j = 1; j < i && ok; ++j) {
                bool pattern = h.has_edge(i, j), host = g.has_edge(u, phi[j]);
                if (pattern && !host) ok = false;
                if (s.problem == Problem::isi && host && !pattern) ok = false;
            }
            if (!ok) continue;
            used[u] = 1;
            phi[i] = u;
            place(i + 1);
            used[u] = 0;
        }
    };
    place(1);
    return best.r;
}

inline std::vector<std::vector<int>> partial_choices(int n, int np)
{
    return uniform_choices(n, 0, np);
}

inline OracleResult common_subgraph(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const Graph& h = s.g2;
    const int n = g.node_count(), np = h.node_count();
    if (s.problem == Problem::msm) {
        const int cells = n * np;
        guard(power(2, cells));
        Best best{true, {}};
        for (long long mask = 0; mask < (1LL << cells); ++mask) {
            std::vector<std::pair<int, int>> r;
            for (int c = 0; c < cells; ++c)
                if (mask >> c & 1) r.emplace_back(c / np + 1, c % np + 1);
            bool ok = true;
            for (const auto& [u, up] : r) {
                for (const auto& [v, vp] : r)
                    if (g.has_edge(u, v) != h.has_edge(up, vp)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (ok)
                best.offer(Rational(static_cast<long long>(r.size())), [&] {
                    Witness w;
                    w.relation = r;
                    return w;
                });
        }
        return best.r;
    }
    return over_choices(partial_choices(n, np), true, [&](const std::vector<int>& f) -> std::optional<Rational> {
        if (!injective(f)) return std::nullopt;
        switch (s.problem) {
        case Problem::lcs: {
            int shared = 0;
            for (const auto& e : g.edges()) shared += f[e.u] && f[e.v] && h.has_edge(f[e.u], f[e.v]);
            return Rational(shared);
        }
        case Problem::mism: {
            int size = 0;
            for (NodeId u = 1; u <= n; ++u) {
                if (!f[u]) continue;
                ++size;
                for (NodeId v = 1; v <= n; ++v)
                    if (v != u && f[v] && g.has_edge(u, v) != h.has_edge(f[u], f[v])) return std::nullopt;
            }
            return Rational(size);
        }
        case Problem::cmp: {
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = u + 1; v <= n; ++v)
                    if (f[u] && f[v] && f[u] > f[v]) return std::nullopt;
            int shared = 0;
            for (const auto& e : g.edges()) shared += f[e.u] && f[e.v] && h.has_edge(f[e.u], f[e.v]);
            return Rational(shared);
        }
        default: throw std::logic_error("not a common-subgraph problem");
        }
    });
}

inline int color_bound(const ProblemSpec& s) { return s.K ? *s.K : s.g.node_count(); }

inline bool proper(const Graph& g, const std::vector<int>& f)
{
    for (const auto& e : g.edges())
        if (f[e.u] && f[e.u] == f[e.v]) return false;
    return true;
}

inline OracleResult coloring(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const int n = g.node_count();
    switch (s.problem) {
    case Problem::gkc:
        return over_choices(uniform_choices(n, 1, *s.K), false, [&](const std::vector<int>& f) -> std::optional<Rational> {
            if (!proper(g, f)) return std::nullopt;
            return Rational(0);
        });
    case Problem::gc:
        return over_choices(uniform_choices(n, 1, color_bound(s)), false, [&](const std::vector<int>& f) -> std::optional<Rational> {
            if (!proper(g, f)) return std::nullopt;
            int top = 0;
            for (NodeId u = 1; u <= n; ++u) top = std::max(top, f[u]);
            return Rational(top);
        });
    case Problem::gh:
    case Problem::dgh: {
        const Graph& h = s.g2;
        return over_choices(uniform_choices(n, 1, h.node_count()), false, [&](const std::vector<int>& f) -> std::optional<Rational> {
            for (const auto& e : g.edges())
                if (!h.has_edge(f[e.u], f[e.v])) return std::nullopt;
            return Rational(0);
        });
    }
    case Problem::mwscp_a:
        return over_choices(uniform_choices(n, 0, *s.K), true, [&](const std::vector<int>& f) -> std::optional<Rational> {
            if (!proper(g, f)) return std::nullopt;
            Rational z = 0;
            for (NodeId u = 1; u <= n; ++u)
                if (f[u]) z += s.cost_of(u, f[u]);
            return z;
        });
    case Problem::mwscp_b:
        return over_choices(uniform_choices(n, 0, *s.K), false, [&](const std::vector<int>& f) -> std::optional<Rational> {
            if (!proper(g, f)) return std::nullopt;
            Rational z = 0;
            int top = 0;
            for (NodeId u = 1; u <= n; ++u)
                if (f[u]) {
                    z += s.cost_of(u, f[u]);
                    top = std::max(top, f[u]);
                }
            if (z != *s.zstar) return std::nullopt;
            return Rational(top);
        });
    case Problem::wvcp:
        return over_choices(uniform_choices(n, 1, color_bound(s)), false, [&](const std::vector<int>& f) -> std::optional<Rational> {
            if (!proper(g, f)) return std::nullopt;
            std::vector<Rational> heaviest(static_cast<std::size_t>(color_bound(s) + 1), Rational(0));
            for (NodeId u = 1; u <= n; ++u) heaviest[f[u]] = std::max(heaviest[f[u]], s.weight_of(u));
            Rational z = 0;
            for (const auto& w : heaviest) z += w;
            return z;
        });
    case Problem::mcp:
    case Problem::mwis: {
        int top = s.problem == Problem::mwis ? 1 : color_bound(s);
        int lo = s.problem == Problem::mwis ? 0 : 1;
        return over_choices(uniform_choices(n, lo, top), true, [&](const std::vector<int>& f) -> std::optional<Rational> {
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = u + 1; v <= n; ++v)
                    if (f[u] && f[u] == f[v] && !g.has_edge(u, v)) return std::nullopt;
            Rational z = 0;
            for (const auto& e : g.edges())
                if (f[e.u] && f[e.u] == f[e.v]) z += e.w;
            return z;
        });
    }
    default: throw std::logic_error("not a coloring problem");
    }
}

inline OracleResult labeling(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const int n = g.node_count();
    auto [lo, hi] = *s.labels;
    // Enumerate label ids 1..L so that 0 keeps meaning "unmapped" inside witness_of; shift back at the end.
    const int shift = lo - 1;
    auto choices = uniform_choices(n, 1, hi - lo + 1);
    auto shifted = [&](OracleResult r) {
        for (auto& v : r.witness.f)
            if (v) *v += shift;
        return r;
    };
    if (s.problem == Problem::fsfa) {
        return shifted(over_choices(choices, false, [&](const std::vector<int>& f) -> std::optional<Rational> {
            Rational z = 0;
            for (const auto& e : g.edges())
                if (std::abs(f[e.u] - f[e.v]) <= s.threshold(e.u, e.v)) z += s.fsfa_penalty(e.u, e.v);
            return z;
        }));
    }
    auto d2 = distance_two_pairs(g);
    return shifted(over_choices(choices, false, [&](const std::vector<int>& f) -> std::optional<Rational> {
        for (const auto& e : g.edges())
            if (std::abs(f[e.u] - f[e.v]) < s.m) return std::nullopt;
        for (auto [a, b] : d2)
            if (std::abs(f[a] - f[b]) < s.k) return std::nullopt;
        int span = 0;
        for (NodeId u = 1; u <= n; ++u) span = std::max(span, f[u] + shift);
        return s.optimize ? Rational(span) : Rational(0);
    }));
}

inline OracleResult metric_labeling(const ProblemSpec& s)
{
    const Graph& g = s.g;
    const int n = g.node_count();
    const int L = s.labels->second;
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(n + 1));
    for (NodeId u = 1; u <= n; ++u) {
        auto it = s.allow.find(u);
        if (it != s.allow.end() && !it->second.empty())
            choices[u] = it->second;
        else
            for (int a = 1; a <= L; ++a) choices[u].push_back(a);
    }
    return over_choices(choices, false, [&](const std::vector<int>& f) -> std::optional<Rational> {
        if (s.form == ObjectiveForm::P2) {
            Rational z = 0;
            for (NodeId u = 1; u <= n; ++u) z += s.cost_of(u, f[u]);
            for (const auto& e : g.edges()) z += e.w * s.dist_of(f[e.u], f[e.v]);
            return z;
        }
        Rational worst = 0;
        for (int a = 1; a <= L; ++a) {
            Rational l = 0;
            for (NodeId u = 1; u <= n; ++u)
                if (f[u] == a) l += s.cost_of(u, a);
            for (const auto& e : g.edges())
                if (f[e.u] == a || f[e.v] == a) l += e.w * s.dist_of(f[e.u], f[e.v]);
            worst = std::max(worst, l);
        }
        return worst;
    });
}

inline OracleResult golomb(const ProblemSpec& s)
{
    const int n = s.marks, K = *s.K;
    Best best;
    if (n <= 0) return best.r;
    // Sorted mark sets containing 0, pruned as soon as a difference repeats.
    double space = 1;
    for (int i = 0; i < n - 1; ++i) space = space * (K - i) / (i + 1);
    guard(space);
    std::vector<int> marks{0};
    std::vector<char> diff(static_cast<std::size_t>(K + 1), 0);
    std::function<void()> grow = [&] {
        if (static_cast<int>(marks.size()) == n) {
            Rational len = marks.back();
            best.offer(s.optimize ? len : Rational(0), [&] {
                Witness w;
                w.f.assign(static_cast<std::size_t>(n + 1), std::nullopt);
                for (int i = 0; i < n; ++i) w.f[i + 1] = marks[i];
                return w;
            });
            return;
        }
        for (int a = marks.back() + 1; a <= K; ++a) {
            bool clash = false;
            std::vector<int> added;
            for (int b : marks) {
                int dd = a - b;
                if (diff[dd]) {
                    clash = true;
                    break;
                }
                diff[dd] = 1;
                added.push_back(dd);
            }
            if (!clash) {
                marks.push_back(a);
                grow();
                marks.pop_back();
            }
            for (int dd : added) diff[dd] = 0;
        }
    };
    grow();
    return best.r;
}

inline OracleResult mlcm(const ProblemSpec& s)
{
    const LayeredGraph& lg = *s.layered;
    const int p = lg.layer_count();
    double space = 1;
    for (int l = 0; l < p; ++l) space *= falling(static_cast<int>(lg.layer(l).size()), static_cast<int>(lg.layer(l).size()));
    guard(space);
    std::vector<int> pos(static_cast<std::size_t>(lg.node_count() + 1), 0);
    Best best;
    std::function<void(int)> layer = [&](int l) {
        if (l == p) {
            int crossings = 0;
            const auto& arcs = lg.arcs();
            for (std::size_t i = 0; i < arcs.size(); ++i)
                for (std::size_t j = i + 1; j < arcs.size(); ++j) {
                    auto [u, up] = arcs[i];
                    auto [v, vp] = arcs[j];
                    if (lg.layer_of(u) != lg.layer_of(v)) continue;
                    if ((pos[u] < pos[v] && pos[vp] < pos[up]) || (pos[v] < pos[u] && pos[up] < pos[vp])) ++crossings;
                }
            best.offer(crossings, [&] {
                Witness w;
                w.f.assign(pos.size(), std::nullopt);
                for (std::size_t u = 1; u < pos.size(); ++u) w.f[u] = pos[u];
                return w;
            });
            return;
        }
        auto nodes = lg.layer(l);
        std::vector<int> order(nodes.size());
        std::iota(order.begin(), order.end(), 1);
        do {
            for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = order[i];
            layer(l + 1);
        } while (std::next_permutation(order.begin(), order.end()));
    };
    layer(0);
    return best.r;
}

} // namespace oracle_detail

/// Exact answer for a named problem by exhaustive enumeration. Feasibility problems report value 0.
inline OracleResult oracle_solve(const ProblemSpec& s)
{
    using namespace oracle_detail;
    switch (s.problem) {
    case Problem::ktsp: return ktsp(s);
    case Problem::bandwidth:
    case Problem::lap:
    case Problem::dlap:
    case Problem::pmp:
    case Problem::mclap:
    case Problem::igc: return ordering_problem(s);
    case Problem::gi:
    case Problem::si:
    case Problem::isi: return isomorphism(s);
    case Problem::lcs:
    case Problem::mism:
    case Problem::msm:
    case Problem::cmp: return common_subgraph(s);
    case Problem::gkc:
    case Problem::gc:
    case Problem::gh:
    case Problem::dgh:
    case Problem::mwscp_a:
    case Problem::mwscp_b:
    case Problem::wvcp:
    case Problem::mcp:
    case Problem::mwis: return coloring(s);
    case Problem::gl:
    case Problem::fsfa: return labeling(s);
    case Problem::mlp: return metric_labeling(s);
    case Problem::golomb: return golomb(s);
    case Problem::mlcm: return mlcm(s);
    case Problem::framework: {
        auto inst = to_instance(s);
        auto out = s.output == 1 ? FrameworkOutput::output1 : s.output == 3 ? FrameworkOutput::output3 : FrameworkOutput::output2;
        return oracle_framework(inst, out, s.form);
    }
    }
    throw std::logic_error("unknown problem");
}

} // namespace gmip
