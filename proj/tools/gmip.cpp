// gmip: encode, solve and verify graph matching problems from spec files.

#include "gmip/encoders.hpp"
#include "gmip/lp_format.hpp"
#include "gmip/oracles.hpp"
#include "gmip/predicates.hpp"
#include "gmip/solver.hpp"
#include "gmip/spec_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace gmip;
using nlohmann::json;

namespace {

enum Exit { ok = 0, infeasible = 1, limit = 2, input_error = 3, mismatch = 4, cap_exceeded = 5 };

struct Options
{
    std::string spec;
    std::string out;
    double time_limit = 0;
    std::int64_t node_limit = 0;
    int threads = 1;
    bool json = false;
    bool corrupt = false;
};

bool is_ordering(Problem p)
{
    switch (p) {
    case Problem::bandwidth:
    case Problem::lap:
    case Problem::dlap:
    case Problem::pmp:
    case Problem::mclap:
    case Problem::igc:
    case Problem::ktsp: return true;
    default: return false;
    }
}

/// Nodes listed by the position they were given.
std::vector<NodeId> by_position(const Witness& w)
{
    std::map<int, NodeId> pos;
    for (std::size_t u = 1; u < w.f.size(); ++u)
        if (w.f[u]) pos[*w.f[u]] = static_cast<NodeId>(u);
    std::vector<NodeId> out;
    for (auto [p, u] : pos) out.push_back(u);
    return out;
}

std::string join(const std::vector<int>& xs)
{
    std::string s;
    for (int x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

std::string render(const ProblemSpec& s, const Witness& w, const std::optional<Rational>& value)
{
    std::ostringstream out;
    if (s.problem == Problem::msm) {
        out << "relation:";
        for (auto [u, up] : w.relation) out << ' ' << u << "~" << up;
        return out.str();
    }
    if (s.problem == Problem::golomb) {
        std::vector<int> marks;
        for (std::size_t u = 1; u < w.f.size(); ++u) marks.push_back(*w.f[u]);
        std::sort(marks.begin(), marks.end());
        out << "length " << (marks.empty() ? 0 : marks.back()) << ", marks " << join(marks);
        return out.str();
    }
    if (s.problem == Problem::mlcm) {
        for (int l = 0; l < s.layered->layer_count(); ++l) {
            std::map<int, NodeId> pos;
            for (NodeId u : s.layered->layer(l)) pos[*w.f[u]] = u;
            out << (l ? "; " : "") << "layer " << l + 1 << ":";
            for (auto [p, u] : pos) out << ' ' << u;
        }
        return out.str();
    }
    if (is_ordering(s.problem)) {
        out << (s.problem == Problem::ktsp ? "tour: " : "ordering: ") << join(by_position(w));
        if (s.problem == Problem::ktsp && s.variant != 'A' && value)
            out << (s.variant == 'B' ? ", total distance " : ", longest arc ") << to_string(*value);
        return out.str();
    }
    if (s.problem == Problem::si || s.problem == Problem::isi) {
        std::vector<int> image;
        for (std::size_t u = 1; u < w.f.size(); ++u)
            if (w.f[u]) image.push_back(static_cast<int>(u));
        out << "image: {" << join(image) << "}, map:";
        for (std::size_t u = 1; u < w.f.size(); ++u)
            if (w.f[u]) out << ' ' << *w.f[u] << "->" << u;
        return out.str();
    }
    out << "f:";
    for (std::size_t u = 1; u < w.f.size(); ++u) out << ' ' << u << "->" << (w.f[u] ? std::to_string(*w.f[u]) : "-");
    return out.str();
}

json witness_json(const Witness& w)
{
    json j;
    json f = json::array();
    for (std::size_t u = 1; u < w.f.size(); ++u) f.push_back(w.f[u] ? json(*w.f[u]) : json(nullptr));
    j["f"] = f;
    if (!w.relation.empty()) {
        json r = json::array();
        for (auto [u, up] : w.relation) r.push_back({u, up});
        j["relation"] = r;
    }
    return j;
}

std::map<std::string, int> variable_counts(const IPModel& m)
{
    std::map<std::string, int> counts;
    for (const auto& v : m.variables()) ++counts[v.type == VarType::binary ? "binary" : "continuous"];
    return counts;
}

void print_stats(const IPModel& m, std::ostream& out)
{
    auto counts = variable_counts(m);
    out << "variables: " << m.var_count() << " (" << counts["binary"] << " binary, " << counts["continuous"]
        << " continuous)\nconstraints: " << m.constraints().size() << '\n';
}

SolveConfig config(const Options& o)
{
    SolveConfig cfg;
    if (o.node_limit > 0) cfg.node_limit = o.node_limit;
    cfg.time_limit = o.time_limit;
    cfg.thread_count = o.threads;
    cfg.record_trace = false;
    return cfg;
}

IPModel build(const ProblemSpec& s, bool corrupt)
{
    auto m = encode(s);
    // Test-only: strip every row so verify has something to catch.
    while (corrupt && !m.constraints().empty()) m.remove_constraint(m.constraints().size() - 1);
    return m;
}

int cmd_encode(const Options& o)
{
    auto s = load_spec(o.spec);
    auto m = encode(s);
    auto text = emit_lp(m);
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        print_stats(m, std::cerr);
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ParseError(o.out, 0, "cannot write file");
        f << text;
        print_stats(m, std::cout);
    }
    return ok;
}

struct Run
{
    ProblemSpec spec;
    IPModel model;
    Solution sol;
    std::optional<Witness> witness;
    double ms = 0;
};

Run run_solver(const Options& o)
{
    Run r;
    r.spec = load_spec(o.spec);
    auto t0 = std::chrono::steady_clock::now();
    r.model = build(r.spec, o.corrupt);
    r.sol = solve(r.model, config(o));
    if (r.sol.has_point()) r.witness = decode_witness(r.spec, r.model, r.sol.assignment);
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

bool has_objective(const IPModel& m) { return !m.objective().expr.empty(); }

json base_report(const Run& r)
{
    json j;
    j["problem"] = problem_tag(r.spec.problem);
    j["mode"] = has_objective(r.model) ? "optimize" : "feasibility";
    auto counts = variable_counts(r.model);
    j["model"] = {{"variables", r.model.var_count()},
                  {"binary", counts["binary"]},
                  {"continuous", counts["continuous"]},
                  {"constraints", r.model.constraints().size()}};
    j["status"] = status_name(r.sol.status);
    j["value"] = r.sol.objective && has_objective(r.model) ? json(to_string(*r.sol.objective)) : json(nullptr);
    j["nodes"] = r.sol.stats.nodes;
    if (r.witness) {
        j["witness"] = witness_json(*r.witness);
        j["rendering"] = render(r.spec, *r.witness, r.sol.objective);
        auto checked = check_witness(r.spec, *r.witness);
        j["predicate"] = checked ? json(to_string(*checked)) : json(nullptr);
    }
    j["wall_ms"] = r.ms;
    return j;
}

void print_human(const json& j)
{
    std::cout << "problem: " << j["problem"].get<std::string>() << " (" << j["mode"].get<std::string>() << ")\n"
              << "model: " << j["model"]["variables"] << " variables, " << j["model"]["constraints"] << " constraints\n"
              << "status: " << j["status"].get<std::string>() << '\n';
    if (!j["value"].is_null()) std::cout << "value: " << j["value"].get<std::string>() << '\n';
    if (j.contains("rendering")) std::cout << j["rendering"].get<std::string>() << '\n';
    if (j.contains("predicate"))
        std::cout << "predicate: " << (j["predicate"].is_null() ? "not checked" : j["predicate"].get<std::string>()) << '\n';
    if (j.contains("oracle")) {
        const auto& orc = j["oracle"];
        std::cout << "oracle: " << orc["status"].get<std::string>();
        if (!orc["value"].is_null()) std::cout << ' ' << orc["value"].get<std::string>();
        std::cout << "\nverdict: " << j["verdict"].get<std::string>() << '\n';
    }
}

int status_exit(const Solution& sol)
{
    switch (sol.status) {
    case SolveStatus::optimal: return ok;
    case SolveStatus::infeasible: return infeasible;
    case SolveStatus::limit_reached: return limit;
    }
    return input_error;
}

int cmd_solve(const Options& o)
{
    auto r = run_solver(o);
    auto j = base_report(r);
    if (o.json)
        std::cout << j.dump(2) << '\n';
    else
        print_human(j);
    return status_exit(r.sol);
}

int cmd_verify(const Options& o)
{
    auto r = run_solver(o);
    auto j = base_report(r);
    OracleResult orc;
    try {
        orc = oracle_solve(r.spec);
    } catch (const CapExceeded& ex) {
        j["verdict"] = "cap-exceeded";
        j["error"] = ex.what();
        if (o.json)
            std::cout << j.dump(2) << '\n';
        else
            std::cout << "oracle: " << ex.what() << "\nverdict: cap-exceeded\n";
        return cap_exceeded;
    }
    if (r.sol.status == SolveStatus::limit_reached) {
        std::cerr << "solver limit reached; nothing to compare\n";
        return limit;
    }
    bool feasible = r.sol.status == SolveStatus::optimal;
    bool objective = has_objective(r.model);
    j["oracle"] = {{"status", orc.feasible ? "optimal" : "infeasible"},
                   {"value", orc.feasible && objective ? json(to_string(orc.value)) : json(nullptr)}};
    bool same = feasible == orc.feasible && (!feasible || !objective || *r.sol.objective == orc.value);
    j["verdict"] = same ? "match" : "mismatch";
    if (o.json)
        std::cout << j.dump(2) << '\n';
    else
        print_human(j);
    return same ? ok : mismatch;
}

int cmd_list()
{
    for (const auto& info : problem_table())
        std::cout << info.tag << std::string(12 - std::min<std::size_t>(11, std::strlen(info.tag)), ' ') << info.family
                  << ": " << info.summary << '\n';
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Compile graph matching problems to 0-1 integer programs, solve them and check them."};
    app.require_subcommand(1);
    Options o;

    auto* enc = app.add_subcommand("encode", "write the LP model for a spec");
    enc->add_option("spec", o.spec, "problem spec file")->required();
    enc->add_option("-o,--out", o.out, "output path ('-' for stdout)");

    auto limits = [&](CLI::App* sub) {
        sub->add_option("spec", o.spec, "problem spec file")->required();
        sub->add_option("--time-limit", o.time_limit, "seconds, 0 for none")->check(CLI::NonNegativeNumber);
        sub->add_option("--node-limit", o.node_limit, "branch-and-bound nodes, 0 for none")->check(CLI::NonNegativeNumber);
        sub->add_option("--threads", o.threads, "solver threads")->check(CLI::PositiveNumber);
        sub->add_flag("--json", o.json, "print a JSON report");
    };
    auto* sol = app.add_subcommand("solve", "solve a spec and print the decoded answer");
    limits(sol);
    auto* ver = app.add_subcommand("verify", "solve a spec and compare with brute force");
    limits(ver);
    ver->add_flag("--test-corrupt", o.corrupt, "")->group("");
    auto* list = app.add_subcommand("list-problems", "list the known problem tags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (*enc) return cmd_encode(o);
        if (*sol) return cmd_solve(o);
        if (*ver) return cmd_verify(o);
        if (*list) return cmd_list();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cap_exceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}
