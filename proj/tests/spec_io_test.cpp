#include "gmip/spec_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace gmip;

namespace {

const char* const p3 = "p graph 3 2 undirected\ne 1 2\ne 2 3\n";

ProblemSpec parse(const std::string& text)
{
    return parse_spec(text, "test.spec", [](const std::string&) { return parse_graph(p3); });
}

int error_line(const std::string& text)
{
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST(SpecIo, Basics)
{
    auto s = parse("# labeling\nproblem = gl\ngraph = p3.graph\nm = 2\nk = 1\nlabels = 0..4\nmode = feasibility\n");
    EXPECT_EQ(s.problem, Problem::gl);
    EXPECT_FALSE(s.optimize);
    EXPECT_EQ(s.g.node_count(), 3);
    EXPECT_EQ(s.m, 2);
    EXPECT_EQ(s.k, 1);
    EXPECT_EQ(s.labels, std::make_pair(0, 4));
}

TEST(SpecIo, Tables)
{
    auto s = parse("problem = framework\ngraph = a\ngraph2 = b\noutput = 3\nregime = one-to-one\n"
                   "c 1 2 5\nd 1 2 2 3 1.5\nt 1 2 0 1\np 1 2 0 4\np 2 3 7\nw 2 3\nD 1 3 2\nL 1 2 3\n");
    EXPECT_EQ(s.output, 3);
    EXPECT_EQ(s.regime, Regime::one_to_one);
    EXPECT_EQ(s.cost_of(1, 2), 5);
    EXPECT_EQ(s.edge_cost.at({1, 2, 2, 3}), Rational(3, 2));
    EXPECT_EQ(s.forbidden.at({1, 2}), (std::set<int>{0, 1}));
    EXPECT_EQ(s.penalty.at({1, 2, 0}), 4);
    EXPECT_EQ(s.fsfa_penalty(3, 2), 7);
    EXPECT_EQ(s.weight_of(2), 3);
    EXPECT_EQ(s.dist_of(3, 1), 2);
    EXPECT_EQ(s.allow.at(1), (std::vector<NodeId>{2, 3}));
}

TEST(SpecIo, ErrorsCarryLineNumbers)
{
    EXPECT_EQ(error_line("problem = nope\n"), 1);
    EXPECT_EQ(error_line("problem = gc\ngraph = g\nK = x\n"), 3);
    EXPECT_EQ(error_line("problem = gc\n\nmode = sometimes\n"), 3);
    EXPECT_EQ(error_line("problem = gc\ncolour = 3\n"), 2);
    EXPECT_EQ(error_line("problem = gl\nlabels = 4\n"), 2);
    EXPECT_EQ(error_line("problem = framework\nc 1\n"), 2);
    EXPECT_EQ(error_line("problem = gc\nno equals sign here\n"), 2);
    EXPECT_NE(error_line("graph = g\n"), -1);
}

TEST(SpecIo, LoadResolvesGraphsNextToTheSpec)
{
    auto dir = std::filesystem::temp_directory_path() / "gmip_spec_io_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "p3.graph") << p3;
    std::ofstream(dir / "bw.spec") << "problem = bandwidth\ngraph = p3.graph\n";
    auto s = load_spec((dir / "bw.spec").string());
    EXPECT_EQ(s.g.edge_count(), 2u);
    std::ofstream(dir / "bad.spec") << "problem = bandwidth\ngraph = missing.graph\n";
    EXPECT_THROW(load_spec((dir / "bad.spec").string()), ParseError);
    EXPECT_THROW(load_spec((dir / "absent.spec").string()), ParseError);
    std::filesystem::remove_all(dir);
}
