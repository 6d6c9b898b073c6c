#pragma once

#include "gmip/model.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmip {

namespace detail {

inline void write_expr(std::ostringstream& out, const IPModel& m, const LinExpr& e)
{
    if (e.empty()) {
        if (m.var_count() > 0) out << " 0 " << m.variable(0).name;
        return;
    }
    std::size_t i = 0;
    for (const auto& t : e.terms()) {
        if (i > 0 && i % 8 == 0) out << "\n  ";
        bool neg = t.coef < 0;
        auto mag = neg ? -t.coef : t.coef;
        if (i == 0)
            out << (neg ? " -" : "");
        else
            out << (neg ? " -" : " +");
        if (mag != 1) out << ' ' << to_string(mag);
        out << ' ' << m.variable(t.var).name;
        ++i;
    }
}

inline const char* relation_text(Relation r)
{
    switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::eq: return "=";
    }
    return "=";
}

} // namespace detail

/// CPLEX LP text. Sections and rows follow declaration order, so output is byte-stable.
inline std::string emit_lp(const IPModel& m)
{
    m.validate();
    std::ostringstream out;
    out << "\\ gmip model: " << m.var_count() << " variables, " << m.constraints().size() << " constraints\n";
    out << (m.objective().sense == Sense::minimize ? "Minimize\n" : "Maximize\n");
    out << " obj:";
    if (!m.objective().expr.empty()) detail::write_expr(out, m, m.objective().expr);
    out << "\nSubject To\n";
    for (const auto& c : m.constraints()) {
        out << ' ' << c.name << ':';
        detail::write_expr(out, m, c.expr);
        out << ' ' << detail::relation_text(c.rel) << ' ' << to_string(c.rhs) << '\n';
    }
    if (m.var_count() > 0) {
        out << "Bounds\n";
        for (const auto& v : m.variables())
            out << ' ' << to_string(v.lb) << " <= " << v.name << " <= " << to_string(v.ub) << '\n';
    }
    if (m.binary_count() > 0) {
        out << "Binary\n";
        for (const auto& v : m.variables())
            if (v.type == VarType::binary) out << ' ' << v.name << '\n';
    }
    out << "End\n";
    return out.str();
}

class LpParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct LpToken
{
    enum class Kind { word, number, op, colon } kind;
    std::string text;
};

inline std::vector<LpToken> lp_tokenize(const std::string& s)
{
    std::vector<LpToken> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ':') {
            out.push_back({LpToken::Kind::colon, ":"});
            ++i;
        } else if (c == '<' || c == '>' || c == '=') {
            std::string op(1, c);
            if (i + 1 < s.size() && s[i + 1] == '=') op.push_back('=');
            if (op == "<") op = "<=";
            if (op == ">") op = ">=";
            if (op == "==") op = "=";
            out.push_back({LpToken::Kind::op, op});
            i += (i + 1 < s.size() && s[i + 1] == '=') ? 2 : 1;
        } else if (c == '+' || c == '-') {
            out.push_back({LpToken::Kind::op, std::string(1, c)});
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            out.push_back({LpToken::Kind::number, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.')) ++j;
            out.push_back({LpToken::Kind::word, s.substr(i, j - i)});
            i = j;
        } else {
            throw LpParseError(std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

struct RawTerm
{
    std::string var;
    Rational coef;
};

struct LpCursor
{
    const std::vector<LpToken>& toks;
    std::size_t pos = 0;

    bool done() const { return pos >= toks.size(); }
    const LpToken& peek() const { return toks[pos]; }

    bool next_is_label() const
    {
        return pos + 1 < toks.size() && toks[pos].kind == LpToken::Kind::word &&
               toks[pos + 1].kind == LpToken::Kind::colon;
    }

    /// Reads terms until a relation operator or the end of input.
    std::vector<RawTerm> read_terms()
    {
        std::vector<RawTerm> out;
        while (!done()) {
            const auto& t = peek();
            if (t.kind == LpToken::Kind::op && t.text != "+" && t.text != "-") break;
            if (next_is_label()) break;
            Rational sign = 1;
            while (!done() && peek().kind == LpToken::Kind::op && (peek().text == "+" || peek().text == "-")) {
                if (peek().text == "-") sign = -sign;
                ++pos;
            }
            if (done()) throw LpParseError("dangling sign");
            Rational coef = 1;
            if (peek().kind == LpToken::Kind::number) {
                coef = parse_rational(peek().text);
                ++pos;
            }
            if (done() || peek().kind != LpToken::Kind::word) throw LpParseError("expected a variable name");
            out.push_back({peek().text, sign * coef});
            ++pos;
        }
        return out;
    }

    Rational read_number()
    {
        Rational sign = 1;
        while (!done() && peek().kind == LpToken::Kind::op && (peek().text == "+" || peek().text == "-")) {
            if (peek().text == "-") sign = -sign;
            ++pos;
        }
        if (done() || peek().kind != LpToken::Kind::number) throw LpParseError("expected a number");
        return sign * parse_rational(toks[pos++].text);
    }
};

inline std::string lower(std::string s)
{
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace detail

/// Parses the LP dialect written by emit_lp back into a model.
inline IPModel parse_lp(const std::string& text)
{
    enum class Section { none, objective, constraints, bounds, binary, end };
    Section sec = Section::none;
    Sense sense = Sense::minimize;
    std::string obj_text, con_text;
    std::vector<std::string> bound_lines, binary_names;

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        if (auto bs = raw.find('\\'); bs != std::string::npos) raw = raw.substr(0, bs);
        std::string trimmed = raw;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (trimmed.empty()) continue;
        auto key = detail::lower(trimmed);
        if (key == "minimize" || key == "minimum" || key == "min") {
            sec = Section::objective;
            sense = Sense::minimize;
            continue;
        }
        if (key == "maximize" || key == "maximum" || key == "max") {
            sec = Section::objective;
            sense = Sense::maximize;
            continue;
        }
        if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
            sec = Section::constraints;
            continue;
        }
        if (key == "bounds") {
            sec = Section::bounds;
            continue;
        }
        if (key == "binary" || key == "binaries") {
            sec = Section::binary;
            continue;
        }
        if (key == "end") {
            sec = Section::end;
            continue;
        }
        switch (sec) {
        case Section::objective: obj_text += ' ' + trimmed; break;
        case Section::constraints: con_text += ' ' + trimmed; break;
        case Section::bounds: bound_lines.push_back(trimmed); break;
        case Section::binary: {
            std::istringstream ws(trimmed);
            for (std::string w; ws >> w;) binary_names.push_back(w);
            break;
        }
        case Section::none:
        case Section::end: throw LpParseError("content outside a section: " + trimmed);
        }
    }
    if (sec != Section::end) throw LpParseError("missing End");

    std::set<std::string> binaries(binary_names.begin(), binary_names.end());
    IPModel m;
    for (const auto& line : bound_lines) {
        auto toks = detail::lp_tokenize(line);
        detail::LpCursor cur{toks};
        auto lb = cur.read_number();
        if (cur.done() || cur.peek().text != "<=") throw LpParseError("bad bound line: " + line);
        ++cur.pos;
        if (cur.done() || cur.peek().kind != detail::LpToken::Kind::word) throw LpParseError("bad bound line: " + line);
        auto name = cur.peek().text;
        ++cur.pos;
        if (cur.done() || cur.peek().text != "<=") throw LpParseError("bad bound line: " + line);
        ++cur.pos;
        auto ub = cur.read_number();
        auto tag = parse_tag_name(name);
        if (!tag) throw LpParseError("unrecognised variable name " + name);
        if (binaries.count(name)) {
            if (lb != 0 || ub != 1) throw LpParseError("binary " + name + " with non 0/1 bounds");
            m.binary(*tag);
        } else {
            m.continuous(*tag, lb, ub);
        }
    }
    for (const auto& b : binary_names)
        if (!m.find(b)) throw LpParseError("binary " + b + " missing from Bounds");

    auto resolve = [&](const std::vector<detail::RawTerm>& raw_terms) {
        LinExpr e;
        for (const auto& t : raw_terms) {
            auto id = m.find(t.var);
            if (!id) throw LpParseError("undeclared variable " + t.var);
            e.add(*id, t.coef);
        }
        return e;
    };

    {
        auto toks = detail::lp_tokenize(obj_text);
        detail::LpCursor cur{toks};
        if (cur.next_is_label()) cur.pos += 2;
        auto terms = cur.read_terms();
        if (!cur.done()) throw LpParseError("trailing tokens in objective");
        m.set_objective(sense, resolve(terms));
    }
    {
        auto toks = detail::lp_tokenize(con_text);
        detail::LpCursor cur{toks};
        while (!cur.done()) {
            if (!cur.next_is_label()) throw LpParseError("constraint without a name");
            auto name = cur.peek().text;
            cur.pos += 2;
            auto terms = cur.read_terms();
            if (cur.done() || cur.peek().kind != detail::LpToken::Kind::op)
                throw LpParseError("constraint " + name + " has no relation");
            auto op = cur.peek().text;
            ++cur.pos;
            Relation rel = op == "<=" ? Relation::le : op == ">=" ? Relation::ge : Relation::eq;
            auto rhs = cur.read_number();
            m.add_constraint(name, resolve(terms), rel, rhs);
        }
    }
    return m;
}

} // namespace gmip
