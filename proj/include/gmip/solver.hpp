#pragma once

#include "gmip/model.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gmip {

struct SolveConfig
{
    std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
    double time_limit = 0; ///< seconds; 0 means unlimited
    int thread_count = 1;
    bool record_trace = true;
};

enum class SolveStatus { optimal, infeasible, limit_reached };

inline const char* status_name(SolveStatus s)
{
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::limit_reached: return "limit-reached";
    }
    return "?";
}

struct SolveStats
{
    std::int64_t nodes = 0;
    std::int64_t prunes = 0;
    std::int64_t incumbents = 0;
};

struct Solution
{
    SolveStatus status = SolveStatus::infeasible;
    std::optional<Rational> objective; ///< present whenever a feasible point was found
    Assignment assignment;             ///< empty when no feasible point was found
    SolveStats stats;
    /// Global lower bounds (in the model's own sense: upper bounds when maximizing), in discovery order.
    std::vector<Rational> bound_trace;

    bool has_point() const { return !assignment.empty(); }
};

namespace detail {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 checked(i128 v, const char* what)
{
    if (v > (i128(1) << 61) || v < -(i128(1) << 61)) throw std::overflow_error(std::string("solver scaling overflow in ") + what);
    return static_cast<i64>(v);
}

inline i64 floor_div(i64 a, i64 b) // b > 0
{
    i64 q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

inline i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

/// The model rewritten over integer variables: binaries stay 0/1, a continuous
/// variable K becomes the integer K~ = K * scale. Every row is "sum a x <= rhs" with int64 data.
struct Compiled
{
    struct Row
    {
        std::vector<int> vars;
        std::vector<i64> coefs;
        i64 rhs = 0;
        i64 max_range = 0; ///< max |a| (ub - lb) over the row at the root
    };

    int nvars = 0;
    i64 cont_scale = 1;
    std::vector<i64> lb, ub;
    std::vector<char> is_binary;
    std::vector<Row> rows; ///< the last row is the objective cutoff
    std::vector<std::vector<std::pair<int, i64>>> cols;
    std::vector<i64> obj;  ///< minimization form, integer
    Rational obj_unit = 1; ///< true objective = sign * (obj . x~) * obj_unit
    bool negated = false;
    std::vector<std::vector<int>> groups; ///< sum x = 1 rows over binaries
    std::vector<char> in_group;
    std::vector<int> order;               ///< static branching order of binaries
    int obj_row = -1;

    explicit Compiled(const IPModel& m)
    {
        nvars = static_cast<int>(m.var_count());
        // One lattice for all continuous variables: the lcm of every denominator in the model.
        i64 D = 1;
        auto absorb = [&](const Rational& r) { D = lcm_checked(D, r.denominator()); };
        for (const auto& c : m.constraints()) {
            absorb(c.rhs);
            for (const auto& t : c.expr.terms()) absorb(t.coef);
        }
        for (const auto& v : m.variables())
            if (v.type == VarType::continuous) {
                absorb(v.lb);
                absorb(v.ub);
            }
        cont_scale = D;
        lb.resize(nvars);
        ub.resize(nvars);
        is_binary.resize(nvars);
        std::vector<Rational> scale(nvars, Rational(1));
        for (int j = 0; j < nvars; ++j) {
            const auto& v = m.variable(j);
            is_binary[j] = v.type == VarType::binary;
            if (is_binary[j]) {
                lb[j] = 0;
                ub[j] = 1;
            } else {
                scale[j] = Rational(D);
                auto lo = v.lb * D, hi = v.ub * D;
                lb[j] = checked(ceil_div(lo.numerator(), lo.denominator()), "bounds");
                ub[j] = checked(floor_div(hi.numerator(), hi.denominator()), "bounds");
            }
        }
        for (const auto& c : m.constraints()) {
            for (const auto& t : c.expr.terms())
                if (m.variable(t.var).type == VarType::continuous && t.coef != 1 && t.coef != -1)
                    throw ModelError("continuous variable " + m.variable(t.var).name + " has coefficient " +
                                     to_string(t.coef) + " in " + c.name + "; only +-1 is supported");
            auto add_row = [&](Rational sign) {
                i64 L = 1;
                std::vector<Rational> a;
                for (const auto& t : c.expr.terms()) {
                    a.push_back(sign * t.coef / scale[t.var]);
                    L = lcm_checked(L, a.back().denominator());
                }
                Rational r = sign * c.rhs;
                L = lcm_checked(L, r.denominator());
                Row row;
                std::size_t i = 0;
                for (const auto& t : c.expr.terms()) {
                    auto s = a[i++] * L;
                    row.vars.push_back(t.var);
                    row.coefs.push_back(checked(s.numerator(), c.name.c_str()));
                }
                row.rhs = checked((r * L).numerator(), c.name.c_str());
                rows.push_back(std::move(row));
            };
            if (c.rel != Relation::ge) add_row(1);
            if (c.rel != Relation::le) add_row(-1);
            if (c.rel == Relation::eq && c.rhs == 1 && !c.expr.empty()) {
                bool unit = true;
                for (const auto& t : c.expr.terms()) unit = unit && t.coef == 1 && is_binary[t.var];
                if (unit) {
                    std::vector<int> g;
                    for (const auto& t : c.expr.terms()) g.push_back(t.var);
                    groups.push_back(std::move(g));
                }
            }
        }
        negated = m.objective().sense == Sense::maximize;
        {
            i64 L = 1;
            std::vector<Rational> a(nvars, Rational(0));
            for (const auto& t : m.objective().expr.terms()) {
                a[t.var] = (negated ? -t.coef : t.coef) / scale[t.var];
                L = lcm_checked(L, a[t.var].denominator());
            }
            obj.assign(nvars, 0);
            Row row;
            for (int j = 0; j < nvars; ++j) {
                obj[j] = checked((a[j] * L).numerator(), "objective");
                if (obj[j] != 0) {
                    row.vars.push_back(j);
                    row.coefs.push_back(obj[j]);
                }
            }
            obj_unit = Rational(1, L);
            row.rhs = std::numeric_limits<i64>::max() / 4;
            obj_row = static_cast<int>(rows.size());
            rows.push_back(std::move(row));
        }
        cols.assign(nvars, {});
        std::vector<int> occurrences(nvars, 0);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            auto& row = rows[r];
            i128 lo_act = 0, hi_act = 0;
            for (std::size_t i = 0; i < row.vars.size(); ++i) {
                int j = row.vars[i];
                i64 a = row.coefs[i];
                cols[j].emplace_back(r, a);
                i128 range = i128(a < 0 ? -a : a) * (ub[j] - lb[j]);
                row.max_range = std::max(row.max_range, checked(range, "row range"));
                lo_act += i128(a) * (a > 0 ? lb[j] : ub[j]);
                hi_act += i128(a) * (a > 0 ? ub[j] : lb[j]);
                if (r != obj_row) ++occurrences[j];
            }
            checked(lo_act, "row activity");
            checked(hi_act, "row activity");
        }
        in_group.assign(nvars, 0);
        for (const auto& g : groups)
            for (int j : g) in_group[j] = 1;
        for (int j = 0; j < nvars; ++j)
            if (is_binary[j]) order.push_back(j);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return occurrences[a] > occurrences[b]; });
    }

    Rational true_objective(i64 scaled) const
    {
        Rational v = Rational(scaled) * obj_unit;
        return negated ? -v : v;
    }
};

/// Shared incumbent for one solve.
struct Incumbent
{
    std::mutex mu;
    std::atomic<i64> best{std::numeric_limits<i64>::max()};
    std::vector<i64> point;
    std::int64_t updates = 0;

    bool offer(i64 value, const std::vector<i64>& x)
    {
        std::lock_guard<std::mutex> lock(mu);
        if (value >= best.load()) return false;
        best.store(value);
        point = x;
        ++updates;
        return true;
    }
};

struct Limits
{
    std::int64_t node_limit;
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline;
    std::atomic<std::int64_t> nodes{0};
    std::atomic<bool> hit{false};
};

class Search
{
public:
    Search(const Compiled& c, Incumbent& inc, Limits& lim)
        : c_(c), inc_(inc), lim_(lim), lo_(c.lb), hi_(c.ub), in_queue_(c.rows.size(), 0)
    {
        rhs_.reserve(c.rows.size());
        for (const auto& r : c.rows) rhs_.push_back(r.rhs);
        minact_.assign(c.rows.size(), 0);
        maxact_.assign(c.rows.size(), 0);
        for (std::size_t r = 0; r < c.rows.size(); ++r) {
            const auto& row = c.rows[r];
            for (std::size_t i = 0; i < row.vars.size(); ++i) {
                i64 a = row.coefs[i];
                minact_[r] += a * (a > 0 ? lo_[row.vars[i]] : hi_[row.vars[i]]);
                maxact_[r] += a * (a > 0 ? hi_[row.vars[i]] : lo_[row.vars[i]]);
            }
            enqueue(static_cast<int>(r));
        }
    }

    bool trace_enabled = false;
    std::vector<i64> trace;
    std::int64_t prunes = 0;

    /// Applies a sequence of (var, value) decisions with propagation; false on conflict.
    bool apply(const std::vector<std::pair<int, i64>>& decisions)
    {
        if (!propagate()) return false;
        for (auto [j, v] : decisions)
            if (!fix(j, v) || !propagate()) return false;
        return true;
    }

    /// Branching candidates at the current state: empty when every binary is fixed.
    std::vector<std::pair<int, i64>> children()
    {
        int j = choose();
        if (j < 0) return {};
        i64 first = first_value(j);
        return {{j, first}, {j, 1 - first}};
    }

    std::size_t mark() const { return trail_.size(); }

    void run()
    {
        path_bounds_.clear();
        dfs();
    }

    bool fix(int j, i64 v) { return set_lo(j, v) && set_hi(j, v); }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            auto [j, olo, ohi] = trail_.back();
            trail_.pop_back();
            for (auto [r, a] : c_.cols[j]) {
                if (a > 0) {
                    minact_[r] -= a * (lo_[j] - olo);
                    maxact_[r] -= a * (hi_[j] - ohi);
                } else {
                    minact_[r] -= a * (hi_[j] - ohi);
                    maxact_[r] -= a * (lo_[j] - olo);
                }
            }
            lo_[j] = olo;
            hi_[j] = ohi;
        }
        clear_queue();
    }

    bool propagate()
    {
        refresh_cutoff();
        while (!queue_.empty()) {
            int r = queue_.back();
            queue_.pop_back();
            in_queue_[r] = 0;
            if (!process(r)) {
                clear_queue();
                return false;
            }
        }
        return true;
    }

    i64 lo(int j) const { return lo_[j]; }
    i64 hi(int j) const { return hi_[j]; }
    i64 bound() const { return minact_[c_.obj_row]; }

private:
    void enqueue(int r)
    {
        if (!in_queue_[r]) {
            in_queue_[r] = 1;
            queue_.push_back(r);
        }
    }

    void clear_queue()
    {
        for (int r : queue_) in_queue_[r] = 0;
        queue_.clear();
    }

    void refresh_cutoff()
    {
        i64 best = inc_.best.load(std::memory_order_relaxed);
        i64 cut = best == std::numeric_limits<i64>::max() ? c_.rows[c_.obj_row].rhs : best - 1;
        if (cut < rhs_[c_.obj_row]) {
            rhs_[c_.obj_row] = cut;
            enqueue(c_.obj_row);
        }
    }

    bool set_lo(int j, i64 v)
    {
        if (v <= lo_[j]) return true;
        if (v > hi_[j]) return false;
        trail_.push_back({j, lo_[j], hi_[j]});
        for (auto [r, a] : c_.cols[j])
            if (a > 0) {
                minact_[r] += a * (v - lo_[j]);
                enqueue(r);
            } else {
                maxact_[r] += a * (v - lo_[j]);
            }
        lo_[j] = v;
        return true;
    }

    bool set_hi(int j, i64 v)
    {
        if (v >= hi_[j]) return true;
        if (v < lo_[j]) return false;
        trail_.push_back({j, lo_[j], hi_[j]});
        for (auto [r, a] : c_.cols[j])
            if (a < 0) {
                minact_[r] += a * (v - hi_[j]);
                enqueue(r);
            } else {
                maxact_[r] += a * (v - hi_[j]);
            }
        hi_[j] = v;
        return true;
    }

    bool process(int r)
    {
        i64 slack = rhs_[r] - minact_[r];
        if (slack < 0) return false;
        const auto& row = c_.rows[r];
        if (slack >= row.max_range) return true;
        for (std::size_t i = 0; i < row.vars.size(); ++i) {
            int j = row.vars[i];
            i64 range = hi_[j] - lo_[j];
            if (range == 0) continue;
            i64 a = row.coefs[i];
            if (a > 0) {
                if (a * range > slack && !set_hi(j, lo_[j] + slack / a)) return false;
            } else {
                if (-a * range > slack && !set_lo(j, hi_[j] - slack / -a)) return false;
            }
        }
        return true;
    }

    int choose() const
    {
        int best_group = -1;
        std::size_t best_free = 0;
        for (std::size_t g = 0; g < c_.groups.size(); ++g) {
            std::size_t free = 0;
            bool done = false;
            for (int j : c_.groups[g]) {
                if (lo_[j] == 1) {
                    done = true;
                    break;
                }
                free += hi_[j] == 1;
            }
            if (done || free < 2) continue;
            if (best_group < 0 || free < best_free) {
                best_group = static_cast<int>(g);
                best_free = free;
            }
        }
        if (best_group >= 0)
            for (int j : c_.groups[best_group])
                if (lo_[j] != hi_[j]) return j;
        for (int j : c_.order)
            if (lo_[j] != hi_[j]) return j;
        return -1;
    }

    /// Dual fixing: a free binary whose objective prefers one end, and whose move to that end can
    /// only touch rows that already hold for every completion, is fixed there.
    bool dual_fix()
    {
        for (bool changed = true; changed;) {
            changed = false;
            for (int j : c_.order) {
                if (lo_[j] == hi_[j]) continue;
                i64 o = c_.obj[j];
                bool down = o >= 0, up = o <= 0;
                for (auto [r, a] : c_.cols[j]) {
                    if (r == c_.obj_row || maxact_[r] <= rhs_[r]) continue;
                    if (a < 0) down = false;
                    if (a > 0) up = false;
                    if (!down && !up) break;
                }
                if (!down && !up) continue;
                if (!fix(j, down ? 0 : 1) || !propagate()) return false;
                changed = true;
            }
        }
        return true;
    }

    i64 first_value(int j) const
    {
        if (c_.in_group[j]) return 1;
        return c_.obj[j] < 0 ? 1 : 0;
    }

    bool out_of_budget()
    {
        auto n = ++lim_.nodes;
        if (n > lim_.node_limit) lim_.hit = true;
        if (lim_.has_deadline && (n & 255) == 0 && std::chrono::steady_clock::now() > lim_.deadline) lim_.hit = true;
        return lim_.hit.load(std::memory_order_relaxed);
    }

    void record_bound(i64 local)
    {
        if (!trace_enabled || trace.size() >= 4096) return;
        i64 b = local;
        for (i64 p : path_bounds_) b = std::min(b, p);
        b = std::min(b, inc_.best.load());
        trace.push_back(b);
    }

    void dfs()
    {
        if (out_of_budget()) return;
        if (!propagate() || !dual_fix()) {
            ++prunes;
            return;
        }
        int j = choose();
        if (j < 0) {
            leaf();
            return;
        }
        i64 first = first_value(j);
        auto m = mark();
        path_bounds_.push_back(bound());
        if (fix(j, first)) dfs();
        undo(m);
        path_bounds_.pop_back();
        if (lim_.hit) return;
        if (fix(j, 1 - first)) dfs();
        undo(m);
    }

    void leaf()
    {
        // Continuous variables are functions of the binaries: push each to the end its objective prefers.
        auto m = mark();
        bool ok = true;
        for (int j = 0; j < c_.nvars && ok; ++j) {
            if (c_.is_binary[j] || lo_[j] == hi_[j]) continue;
            ok = fix(j, c_.obj[j] > 0 ? lo_[j] : c_.obj[j] < 0 ? hi_[j] : lo_[j]) && propagate();
        }
        if (!ok) {
            // With all binaries fixed the continuous part is a set of interval constraints; a
            // failure here can only come from a cutoff, never from a genuinely infeasible point.
            ++prunes;
            undo(m);
            return;
        }
        i64 value = minact_[c_.obj_row];
        if (inc_.offer(value, lo_)) record_bound(value);
        undo(m);
    }

    const Compiled& c_;
    Incumbent& inc_;
    Limits& lim_;
    std::vector<i64> lo_, hi_;
    std::vector<i64> rhs_;
    std::vector<i64> minact_, maxact_;
    std::vector<char> in_queue_;
    std::vector<int> queue_;
    struct TrailEntry
    {
        int var;
        i64 lo, hi;
    };
    std::vector<TrailEntry> trail_;
    std::vector<i64> path_bounds_;
};

} // namespace detail

/// Exact branch-and-bound over the binaries of `m`.
inline Solution solve(const IPModel& m, const SolveConfig& cfg = {})
{
    if (cfg.thread_count < 1) throw std::invalid_argument("thread_count must be positive");
    if (cfg.node_limit < 1 || cfg.time_limit < 0) throw std::invalid_argument("limits must be positive");
    detail::Compiled c(m);
    detail::Incumbent inc;
    detail::Limits lim;
    lim.node_limit = cfg.node_limit;
    lim.has_deadline = cfg.time_limit > 0;
    lim.deadline = std::chrono::steady_clock::now() +
                   std::chrono::microseconds(static_cast<std::int64_t>(cfg.time_limit * 1e6));

    Solution sol;
    std::vector<detail::i64> trace;
    std::int64_t prunes = 0;

    detail::Search root(c, inc, lim);
    bool root_ok = root.propagate();
    if (root_ok && cfg.record_trace) trace.push_back(root.bound());

    if (root_ok && cfg.thread_count == 1) {
        root.trace_enabled = cfg.record_trace;
        root.run();
        prunes = root.prunes;
        trace.insert(trace.end(), root.trace.begin(), root.trace.end());
    } else if (root_ok) {
        // Split the tree into independent subproblems, then let workers drain them.
        using Decisions = std::vector<std::pair<int, detail::i64>>;
        std::vector<Decisions> frontier{{}};
        std::size_t want = static_cast<std::size_t>(cfg.thread_count) * 8;
        for (int depth = 0; depth < 24 && frontier.size() < want; ++depth) {
            std::vector<Decisions> next;
            bool grew = false;
            for (const auto& d : frontier) {
                detail::Search probe(c, inc, lim);
                if (!probe.apply(d)) continue;
                auto kids = probe.children();
                if (kids.empty()) {
                    next.push_back(d);
                    continue;
                }
                grew = true;
                for (const auto& k : kids) {
                    auto nd = d;
                    nd.push_back(k);
                    next.push_back(std::move(nd));
                }
            }
            frontier = std::move(next);
            if (!grew) break;
        }
        std::atomic<std::size_t> cursor{0};
        std::atomic<std::int64_t> total_prunes{0};
        auto worker = [&] {
            for (;;) {
                auto i = cursor.fetch_add(1);
                if (i >= frontier.size() || lim.hit) return;
                detail::Search s(c, inc, lim);
                if (!s.apply(frontier[i])) {
                    ++total_prunes;
                    continue;
                }
                s.run();
                total_prunes += s.prunes;
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        prunes = total_prunes;
    }

    sol.stats.nodes = lim.nodes;
    sol.stats.prunes = prunes;
    sol.stats.incumbents = inc.updates;
    bool have = !inc.point.empty();
    if (lim.hit)
        sol.status = SolveStatus::limit_reached;
    else
        sol.status = have ? SolveStatus::optimal : SolveStatus::infeasible;
    if (have) {
        sol.assignment.resize(c.nvars);
        for (int j = 0; j < c.nvars; ++j)
            sol.assignment[j] = c.is_binary[j] ? Rational(inc.point[j]) : Rational(inc.point[j], c.cont_scale);
        auto report = evaluate(m, sol.assignment);
        if (!report.feasible()) throw std::logic_error("solver produced an infeasible point: " + report.violations.front());
        sol.objective = report.objective;
    }
    if (cfg.record_trace) {
        for (auto b : trace) {
            // Bounds are recorded in minimization form; clip the sentinel of an empty incumbent.
            if (b == std::numeric_limits<detail::i64>::max()) continue;
            sol.bound_trace.push_back(c.true_objective(b));
        }
        if (sol.status == SolveStatus::optimal) sol.bound_trace.push_back(*sol.objective);
    }
    return sol;
}

/// Outcome of propagating a partial 0/1 assignment.
struct PropagationResult
{
    bool conflict = false;
    std::vector<std::pair<VarId, int>> fixed; ///< binaries fixed by propagation (not by the input)
    std::vector<std::pair<Rational, Rational>> continuous_bounds; ///< tightened [lo,hi] per variable (binaries too)
};

/// Unit propagation of `partial` (nullopt = free) through every row of `m`.
inline PropagationResult propagate(const IPModel& m, const std::vector<std::optional<int>>& partial)
{
    if (partial.size() != m.var_count()) throw ModelError("partial assignment does not cover every variable");
    detail::Compiled c(m);
    detail::Incumbent inc;
    detail::Limits lim;
    lim.node_limit = std::numeric_limits<std::int64_t>::max();
    lim.has_deadline = false;
    detail::Search s(c, inc, lim);
    std::vector<std::pair<int, detail::i64>> decisions;
    for (std::size_t j = 0; j < partial.size(); ++j)
        if (partial[j]) {
            if (!c.is_binary[j]) throw ModelError("only binaries can be fixed in a partial assignment");
            decisions.emplace_back(static_cast<int>(j), *partial[j]);
        }
    PropagationResult out;
    if (!s.apply(decisions)) {
        out.conflict = true;
        return out;
    }
    for (int j = 0; j < c.nvars; ++j) {
        if (c.is_binary[j] && !partial[j] && s.lo(j) == s.hi(j)) out.fixed.emplace_back(j, static_cast<int>(s.lo(j)));
        Rational scale = c.is_binary[j] ? Rational(1) : Rational(c.cont_scale);
        out.continuous_bounds.emplace_back(Rational(s.lo(j)) / scale, Rational(s.hi(j)) / scale);
    }
    return out;
}

} // namespace gmip
