// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "support/harness.hpp"
#include "support/semantics.hpp"

#include "gmip/lp_format.hpp"
#include "gmip/spec_io.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace gmip;
using namespace gmip::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome
{
    bool pass = true;
    std::string summary;
    std::vector<std::string> problems;

    void fail(std::string why)
    {
        pass = false;
        if (problems.size() < 8) problems.push_back(std::move(why));
    }
};

Outcome framework_equivalence()
{
    Outcome out;
    auto t0 = Clock::now();
    Rng rng(20240601);
    const ObjectiveForm forms[] = {ObjectiveForm::P1, ObjectiveForm::P2, ObjectiveForm::P3, ObjectiveForm::P4,
                                   ObjectiveForm::P5, ObjectiveForm::P6, ObjectiveForm::P7};
    int instances = 0, models = 0;
    for (int i = 0; i < 240; ++i, ++instances) {
        bool directed = i % 6 == 5;
        auto inst = random_instance(rng, directed, true);
        auto run = [&](FrameworkOutput o, ObjectiveForm f, const std::string& what) {
            ++models;
            try {
                auto v = check_framework(inst, o, f);
                if (!v.ok) out.fail("instance " + std::to_string(i) + " " + what + ": " + v.detail);
            } catch (const std::exception& e) {
                out.fail("instance " + std::to_string(i) + " " + what + ": " + e.what());
            }
        };
        run(FrameworkOutput::output1, ObjectiveForm::P2, "output 1");
        if (directed) continue;
        for (auto f : forms) run(FrameworkOutput::output2, f, std::string("output 2 ") + form_name(f));
        run(FrameworkOutput::output3, ObjectiveForm::P2, "output 3");
    }
    double s = seconds_since(t0);
    if (s >= 300) out.fail("took " + std::to_string(s) + " s");
    out.summary = std::to_string(instances) + " instances, " + std::to_string(models) + " models, " + std::to_string(s) + " s";
    return out;
}

Outcome encoder_equivalence()
{
    Outcome out;
    auto t0 = Clock::now();
    int total = 0;
    for (auto [op, name] : encoder_ops()) {
        Rng rng(7000 + static_cast<int>(op));
        for (int i = 0; i < 60; ++i, ++total) {
            ProblemSpec s;
            try {
                s = random_spec(op, rng, i);
                auto v = check_spec(s);
                if (!v.ok) out.fail(std::string(name) + " #" + std::to_string(i) + " (" + summarize(s) + "): " + v.detail);
            } catch (const std::exception& e) {
                out.fail(std::string(name) + " #" + std::to_string(i) + " (" + summarize(s) + "): " + e.what());
            }
        }
    }
    out.summary = std::to_string(encoder_ops().size()) + " operations, " + std::to_string(total) + " instances, " +
                  std::to_string(seconds_since(t0)) + " s";
    return out;
}

struct Fixture
{
    const char* file;
    std::optional<Rational> stated; ///< nullopt: feasibility only
};

Outcome named_fixtures(const std::string& dir)
{
    Outcome out;
    const Fixture fixtures[] = {
        {"bandwidth_p5.spec", Rational(1)}, {"bandwidth_c5.spec", Rational(2)}, {"bandwidth_k4.spec", Rational(3)},
        {"lap_p4.spec", Rational(3)},       {"mclap_k4.spec", Rational(4)},     {"gc_c5.spec", Rational(3)},
        {"golomb4.spec", Rational(6)},      {"golomb5.spec", Rational(11)},     {"igc_c4.spec", Rational(1)},
        {"igc_c5.spec", Rational(2)},       {"mlcm_k22.spec", Rational(1)},     {"si_fig2.spec", std::nullopt},
        {"isi_fig2.spec", std::nullopt},
    };
    double slowest = 0;
    for (const auto& fx : fixtures) {
        std::string what = fx.file;
        try {
            auto s = load_spec(dir + "/" + fx.file);
            auto t0 = Clock::now();
            auto m = encode(s);
            auto sol = solve(m);
            double secs = seconds_since(t0);
            slowest = std::max(slowest, secs);
            if (secs >= 10) out.fail(what + ": " + std::to_string(secs) + " s");
            if (sol.status != SolveStatus::optimal) {
                out.fail(what + ": " + status_name(sol.status));
                continue;
            }
            auto orc = oracle_solve(s);
            if (!orc.feasible || orc.value != *sol.objective)
                out.fail(what + ": ip " + to_string(*sol.objective) + " vs oracle " + describe(orc.feasible, orc.value));
            if (fx.stated && *fx.stated != *sol.objective)
                out.fail(what + ": got " + to_string(*sol.objective) + ", expected " + to_string(*fx.stated));
            auto w = decode_witness(s, m, sol.assignment);
            if (!check_witness(s, w)) out.fail(what + ": witness rejected");
            if (s.problem == Problem::isi) {
                std::set<int> image;
                for (std::size_t u = 1; u < w.f.size(); ++u)
                    if (w.f[u]) image.insert(static_cast<int>(u));
                if (image != std::set<int>{2, 3, 4, 5}) out.fail(what + ": image is not {2,3,4,5}");
            }
        } catch (const std::exception& e) {
            out.fail(what + ": " + e.what());
        }
    }
    out.summary = std::to_string(std::size(fixtures)) + " fixtures, slowest " + std::to_string(slowest) + " s";
    return out;
}

Outcome constraint_semantics()
{
    Outcome out;
    auto cases = semantics_cases();
    for (const auto& c : cases) {
        try {
            if (int bad = disagreements(c)) out.fail(c.name + ": " + std::to_string(bad) + " points disagree");
        } catch (const std::exception& e) {
            out.fail(c.name + ": " + e.what());
        }
    }
    out.summary = std::to_string(cases.size()) + " families checked exhaustively";
    return out;
}

Outcome determinism(const std::string& dir)
{
    Outcome out;
    const char* files[] = {"bandwidth_p5.spec", "golomb4.spec", "igc_c5.spec", "isi_fig2.spec", "mlcm_k22.spec", "ktsp_b.spec"};
    for (const char* f : files) {
        auto s = load_spec(dir + "/" + f);
        if (emit_lp(encode(s)) != emit_lp(encode(s))) out.fail(std::string(f) + ": LP text differs between runs");
    }
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        auto m = random_model(rng);
        auto text = emit_lp(m);
        try {
            auto back = parse_lp(text);
            if (!(back == m) || emit_lp(back) != text) out.fail("random model " + std::to_string(i) + ": round trip changed it");
        } catch (const std::exception& e) {
            out.fail("random model " + std::to_string(i) + ": " + e.what());
        }
    }
    int compared = 0;
    auto same_value = [&](const IPModel& m, const std::string& what) {
        ++compared;
        SolveConfig one, four;
        four.thread_count = 4;
        auto a = solve(m, one), b = solve(m, four);
        if (a.status != b.status || a.objective.has_value() != b.objective.has_value() ||
            (a.objective && *a.objective != *b.objective))
            out.fail(what + ": thread count changed the result");
    };
    for (const char* f : files) same_value(encode(load_spec(dir + "/" + f)), f);
    for (auto [op, name] : encoder_ops()) {
        Rng r(500 + static_cast<int>(op));
        for (int i = 0; i < 6; ++i) same_value(encode(random_spec(op, r, i)), std::string(name) + " #" + std::to_string(i));
    }
    out.summary = "LP emission stable, 100 round trips, " + std::to_string(compared) + " models solved with 1 and 4 threads";
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    std::string dir = argc > 1 ? argv[1] : GMIP_FIXTURES_DIR;
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"framework equivalence", framework_equivalence},
        {"encoder equivalence", encoder_equivalence},
        {"named fixtures", [&] { return named_fixtures(dir); }},
        {"constraint semantics", constraint_semantics},
        {"determinism and round trip", [&] { return determinism(dir); }},
    };
    bool all = true;
    int k = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(e.what());
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << ++k << " (" << name << "): " << o.summary << '\n';
        for (const auto& p : o.problems) std::cout << "    " << p << '\n';
        std::cout.flush();
    }
    return all ? 0 : 1;
}
