#pragma once

#include "gmip/rational.hpp"

#include <array>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gmip {

/// Semantic identity of a decision variable. Names are a bijective rendering of tags.
struct Tag
{
    enum class Kind {
        x,      ///< x_<u>_<u'>: node u assigned to node u'
        y,      ///< y_<u>_<v>__<u'>_<v'>: edge/arc assigned to edge/arc
        z,      ///< z_<u>_<v>__<u'>_<v'>: edge assigned crosswise (u->v', v->u')
        yt,     ///< yt_<u>_<v>__<u'>_<v'>_<tau>: edge assignment hitting forbidden value tau
        yo,     ///< yo_<u>_<v>__<u'>_<v'>: oriented edge assignment u->u', v->v'
        ye,     ///< y_<a>_<b>: single pair indicator (fill edge)
        k,      ///< K
        ku,     ///< K_u<u>
        kp,     ///< Kp_<u'>
    };

    Kind kind = Kind::k;
    std::array<int, 5> idx{};

    static Tag x(int u, int up) { return {Kind::x, {u, up, 0, 0, 0}}; }
    static Tag y(int u, int v, int up, int vp) { return {Kind::y, {u, v, up, vp, 0}}; }
    static Tag z(int u, int v, int up, int vp) { return {Kind::z, {u, v, up, vp, 0}}; }
    static Tag yt(int u, int v, int up, int vp, int tau) { return {Kind::yt, {u, v, up, vp, tau}}; }
    static Tag yo(int u, int v, int up, int vp) { return {Kind::yo, {u, v, up, vp, 0}}; }
    static Tag ye(int a, int b) { return {Kind::ye, {a, b, 0, 0, 0}}; }
    static Tag bound() { return {Kind::k, {}}; }
    static Tag bound_u(int u) { return {Kind::ku, {u, 0, 0, 0, 0}}; }
    static Tag bound_up(int up) { return {Kind::kp, {up, 0, 0, 0, 0}}; }

    friend bool operator==(const Tag&, const Tag&) = default;
};

inline std::string tag_name(const Tag& t)
{
    auto s = [](int v) { return std::to_string(v); };
    auto quad = [&](const char* p) {
        return std::string(p) + s(t.idx[0]) + "_" + s(t.idx[1]) + "__" + s(t.idx[2]) + "_" + s(t.idx[3]);
    };
    switch (t.kind) {
    case Tag::Kind::x: return "x_" + s(t.idx[0]) + "_" + s(t.idx[1]);
    case Tag::Kind::y: return quad("y_");
    case Tag::Kind::z: return quad("z_");
    case Tag::Kind::yo: return quad("yo_");
    case Tag::Kind::yt: return quad("yt_") + "_" + (t.idx[4] < 0 ? "n" + s(-t.idx[4]) : s(t.idx[4]));
    case Tag::Kind::ye: return "y_" + s(t.idx[0]) + "_" + s(t.idx[1]);
    case Tag::Kind::k: return "K";
    case Tag::Kind::ku: return "K_u" + s(t.idx[0]);
    case Tag::Kind::kp: return "Kp_" + s(t.idx[0]);
    }
    return {};
}

namespace detail {

inline std::optional<std::vector<int>> split_ints(std::string_view body, std::size_t expected)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto next = body.find('_', pos);
        auto part = body.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        bool neg = !part.empty() && part[0] == 'n';
        if (neg) part.remove_prefix(1);
        int v = 0;
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || p != part.data() + part.size()) return std::nullopt;
        out.push_back(neg ? -v : v);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (out.size() != expected) return std::nullopt;
    return out;
}

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

} // namespace detail

/// Inverse of tag_name; nullopt for names no builder produces.
inline std::optional<Tag> parse_tag_name(std::string_view name)
{
    using detail::split_ints;
    using detail::starts_with;
    auto quad = [&](std::string_view body, Tag::Kind kind, bool with_tau) -> std::optional<Tag> {
        auto sep = body.find("__");
        if (sep == std::string_view::npos) return std::nullopt;
        auto left = split_ints(body.substr(0, sep), 2);
        auto right = split_ints(body.substr(sep + 2), with_tau ? 3 : 2);
        if (!left || !right) return std::nullopt;
        Tag t{kind, {(*left)[0], (*left)[1], (*right)[0], (*right)[1], with_tau ? (*right)[2] : 0}};
        if (!with_tau && (t.idx[0] < 0 || t.idx[3] < 0)) return std::nullopt;
        return t;
    };
    std::optional<Tag> out;
    if (name == "K") out = Tag::bound();
    else if (starts_with(name, "K_u")) {
        if (auto v = split_ints(name.substr(3), 1)) out = Tag::bound_u((*v)[0]);
    } else if (starts_with(name, "Kp_")) {
        if (auto v = split_ints(name.substr(3), 1)) out = Tag::bound_up((*v)[0]);
    } else if (starts_with(name, "yt_")) out = quad(name.substr(3), Tag::Kind::yt, true);
    else if (starts_with(name, "yo_")) out = quad(name.substr(3), Tag::Kind::yo, false);
    else if (starts_with(name, "z_")) out = quad(name.substr(2), Tag::Kind::z, false);
    else if (starts_with(name, "y_")) {
        if (name.find("__") != std::string_view::npos) out = quad(name.substr(2), Tag::Kind::y, false);
        else if (auto v = split_ints(name.substr(2), 2)) out = Tag::ye((*v)[0], (*v)[1]);
    } else if (starts_with(name, "x_")) {
        if (auto v = split_ints(name.substr(2), 2)) out = Tag::x((*v)[0], (*v)[1]);
    }
    // Reject non-canonical spellings such as leading zeros.
    if (out && tag_name(*out) != name) return std::nullopt;
    return out;
}

using VarId = int;

enum class VarType { binary, continuous };
enum class Relation { le, eq, ge };
enum class Sense { minimize, maximize };

struct Variable
{
    Tag tag;
    std::string name;
    VarType type = VarType::binary;
    Rational lb = 0;
    Rational ub = 1;

    friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term
{
    VarId var = 0;
    Rational coef = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Linear expression; terms keep first-insertion order, duplicates merge.
class LinExpr
{
public:
    LinExpr() = default;
    LinExpr(std::initializer_list<Term> terms)
    {
        for (const auto& t : terms) add(t.var, t.coef);
    }

    LinExpr& add(VarId v, const Rational& c)
    {
        if (c == 0) return *this;
        if (terms_.size() < 16) {
            for (auto& t : terms_)
                if (t.var == v) {
                    t.coef += c;
                    if (t.coef == 0) erase(v);
                    return *this;
                }
            terms_.push_back({v, c});
            if (terms_.size() == 16) rebuild_index();
            return *this;
        }
        auto it = pos_.find(v);
        if (it != pos_.end()) {
            terms_[it->second].coef += c;
            if (terms_[it->second].coef == 0) erase(v);
            return *this;
        }
        pos_.emplace(v, terms_.size());
        terms_.push_back({v, c});
        return *this;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(VarId v) const
    {
        for (const auto& t : terms_)
            if (t.var == v) return t.coef;
        return 0;
    }

    friend bool operator==(const LinExpr& a, const LinExpr& b) { return a.terms_ == b.terms_; }

private:
    void erase(VarId v)
    {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].var == v) {
                terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(i));
                break;
            }
        if (terms_.size() >= 16)
            rebuild_index();
        else
            pos_.clear();
    }

    void rebuild_index()
    {
        pos_.clear();
        for (std::size_t i = 0; i < terms_.size(); ++i) pos_.emplace(terms_[i].var, i);
    }

    std::vector<Term> terms_;
    std::unordered_map<VarId, std::size_t> pos_;
};

struct Constraint
{
    std::string name;
    LinExpr expr;
    Relation rel = Relation::le;
    Rational rhs = 0;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Objective
{
    Sense sense = Sense::minimize;
    LinExpr expr;

    friend bool operator==(const Objective&, const Objective&) = default;
};

class ModelError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// A 0-1 linear program with optional bounded continuous variables.
class IPModel
{
public:
    /// Returns the binary for `tag`, declaring it on first use.
    VarId binary(const Tag& tag) { return declare(tag, VarType::binary, 0, 1); }

    /// Declares a continuous variable with finite bounds; redeclaration must agree.
    VarId continuous(const Tag& tag, const Rational& lb, const Rational& ub)
    {
        if (lb > ub) throw ModelError("empty bounds for " + tag_name(tag));
        return declare(tag, VarType::continuous, lb, ub);
    }

    std::optional<VarId> find(const Tag& tag) const { return find(tag_name(tag)); }

    std::optional<VarId> find(const std::string& name) const
    {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    void add_constraint(std::string name, LinExpr expr, Relation rel, Rational rhs)
    {
        if (constraint_names_.count(name)) throw ModelError("duplicate constraint name " + name);
        for (const auto& t : expr.terms())
            if (t.var < 0 || t.var >= static_cast<VarId>(vars_.size()))
                throw ModelError("constraint " + name + " references an undeclared variable");
        constraint_names_.emplace(name, constraints_.size());
        constraints_.push_back({std::move(name), std::move(expr), rel, std::move(rhs)});
    }

    void set_objective(Sense sense, LinExpr expr)
    {
        for (const auto& t : expr.terms())
            if (t.var < 0 || t.var >= static_cast<VarId>(vars_.size()))
                throw ModelError("objective references an undeclared variable");
        objective_ = {sense, std::move(expr)};
    }

    /// Test hook: drops a constraint by position.
    void remove_constraint(std::size_t index)
    {
        constraints_.erase(constraints_.begin() + static_cast<std::ptrdiff_t>(index));
        constraint_names_.clear();
        for (std::size_t i = 0; i < constraints_.size(); ++i) constraint_names_.emplace(constraints_[i].name, i);
    }

    const std::vector<Variable>& variables() const { return vars_; }
    const Variable& variable(VarId v) const { return vars_[static_cast<std::size_t>(v)]; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const Objective& objective() const { return objective_; }
    std::size_t var_count() const { return vars_.size(); }

    std::size_t binary_count() const
    {
        std::size_t n = 0;
        for (const auto& v : vars_) n += v.type == VarType::binary;
        return n;
    }

    /// Throws ModelError unless every coefficient, bound and rhs is a terminating decimal.
    void validate() const
    {
        auto check = [](const Rational& r, const std::string& where) {
            if (!is_decimal(r)) throw ModelError("non-decimal coefficient " + to_string(r) + " in " + where);
        };
        for (const auto& v : vars_) {
            check(v.lb, v.name);
            check(v.ub, v.name);
        }
        for (const auto& c : constraints_) {
            check(c.rhs, c.name);
            for (const auto& t : c.expr.terms()) check(t.coef, c.name);
        }
        for (const auto& t : objective_.expr.terms()) check(t.coef, "objective");
    }

    friend bool operator==(const IPModel& a, const IPModel& b)
    {
        return a.vars_ == b.vars_ && a.constraints_ == b.constraints_ && a.objective_ == b.objective_;
    }

private:
    VarId declare(const Tag& tag, VarType type, const Rational& lb, const Rational& ub)
    {
        auto name = tag_name(tag);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) {
            const auto& v = vars_[static_cast<std::size_t>(it->second)];
            if (v.type != type || v.lb != lb || v.ub != ub) throw ModelError("conflicting redeclaration of " + name);
            return it->second;
        }
        auto id = static_cast<VarId>(vars_.size());
        vars_.push_back({tag, name, type, lb, ub});
        by_name_.emplace(std::move(name), id);
        return id;
    }

    std::vector<Variable> vars_;
    std::unordered_map<std::string, VarId> by_name_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, std::size_t> constraint_names_;
    Objective objective_;
};

/// Values for every declared variable, indexed by VarId.
using Assignment = std::vector<Rational>;

struct EvaluationReport
{
    Rational objective = 0;
    std::vector<std::string> violations;

    bool feasible() const { return violations.empty(); }
};

inline Rational evaluate_expr(const LinExpr& e, const Assignment& a)
{
    Rational s = 0;
    for (const auto& t : e.terms()) s += t.coef * a[static_cast<std::size_t>(t.var)];
    return s;
}

/// Exact objective value and list of violated constraints/bounds.
inline EvaluationReport evaluate(const IPModel& m, const Assignment& a)
{
    if (a.size() != m.var_count()) throw ModelError("assignment does not cover every variable");
    EvaluationReport r;
    for (std::size_t i = 0; i < m.var_count(); ++i) {
        const auto& v = m.variables()[i];
        const auto& val = a[i];
        bool ok = val >= v.lb && val <= v.ub && (v.type == VarType::continuous || val == 0 || val == 1);
        if (!ok) r.violations.push_back("bound:" + v.name);
    }
    for (const auto& c : m.constraints()) {
        auto lhs = evaluate_expr(c.expr, a);
        bool ok = c.rel == Relation::le ? lhs <= c.rhs : c.rel == Relation::ge ? lhs >= c.rhs : lhs == c.rhs;
        if (!ok) r.violations.push_back(c.name);
    }
    r.objective = evaluate_expr(m.objective().expr, a);
    return r;
}

} // namespace gmip
