#include "proxmesh/error.hpp"
#include "proxmesh/harness.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

using namespace proxmesh;

namespace {

RunConfig small(int trials = 5, int n = 15) {
    RunConfig c;
    c.trials = trials;
    c.site_count = n;
    return c;
}

} // namespace

TEST(GenerateSites, DeterministicAndInsideBox) {
    RunConfig c = small();
    c.seed = 42;
    const auto a = generate_sites(c);
    const auto b = generate_sites(c);
    EXPECT_EQ(a.points, b.points);
    ASSERT_EQ(a.points.size(), 15u);
    for (const auto& p : a.points) EXPECT_TRUE(c.bbox.contains(p));
    c.seed = 43;
    EXPECT_NE(generate_sites(c).points, a.points);
}

TEST(GenerateSites, RejectsBadConfigs) {
    RunConfig c = small();
    c.site_count = 2;
    EXPECT_THROW(generate_sites(c), PreconditionError);
    c = small();
    c.bbox = BBox{{0, 0}, {10, 0}};
    EXPECT_THROW(generate_sites(c), DegenerateInputError);
    c = small();
    c.lattice = 2;
    c.site_count = 10;
    EXPECT_THROW(generate_sites(c), PreconditionError);
}

TEST(GenerateSites, CountsResamplesOnCrowdedLattice) {
    RunConfig c = small();
    c.lattice = 4;
    c.site_count = 20;
    const auto g = generate_sites(c);
    EXPECT_EQ(g.points.size(), 20u);
    EXPECT_GT(g.resamples, 0);
    EXPECT_EQ(std::set<Point2>(g.points.begin(), g.points.end()).size(), 20u);
}

TEST(Suites, EachPasses) {
    for (Suite s : {Suite::axioms, Suite::lemma31, Suite::lemma33, Suite::thm35, Suite::thm36, Suite::thm37,
                    Suite::regions, Suite::leader}) {
        const SuiteReport r = run_suite(s, small());
        EXPECT_TRUE(r.passed()) << format_report(r);
        EXPECT_FALSE(r.records.empty()) << to_string(s);
        for (const auto& rec : r.records) EXPECT_EQ(rec.name.rfind(std::string(to_string(s)) + ".", 0), 0u) << rec.name;
    }
}

TEST(Suites, ChainModePasses) {
    RunConfig c = small();
    c.mode = RegionMode::chain;
    EXPECT_TRUE(run_suite(Suite::regions, c).passed());
    EXPECT_TRUE(run_suite(Suite::leader, c).passed());
}

TEST(Suites, ConverseDivergenceIsExpected) {
    const SuiteReport r = run_suite(Suite::lemma33, small(10, 20));
    const CheckRecord* converse = r.find("lemma33.converse");
    ASSERT_NE(converse, nullptr);
    EXPECT_TRUE(converse->expected_divergence);
    EXPECT_GT(converse->violations, 0u);
    EXPECT_FALSE(converse->counterexample.empty());
    const CheckRecord* forward = r.find("lemma33.forward");
    ASSERT_NE(forward, nullptr);
    EXPECT_EQ(forward->violations, 0u);
    EXPECT_GT(forward->checked, 0u);
}

TEST(Suites, AllCoversEveryOperationEveryTrial) {
    const RunConfig c = small(4, 12);
    const SuiteReport r = run_suite(Suite::all, c);
    EXPECT_TRUE(r.passed());
    for (const auto& op : covered_operations()) {
        ASSERT_TRUE(r.coverage.count(op)) << op;
        EXPECT_EQ(r.coverage.at(op), c.trials) << op;
    }
}

TEST(Suites, DeterministicReports) {
    const RunConfig c = small(3, 12);
    EXPECT_EQ(format_report(run_suite(Suite::all, c)), format_report(run_suite(Suite::all, c)));
}

TEST(Suites, FixedMeshAndConstraints) {
    const Mesh m = triangulate(SiteSet({{0, 0}, {2, 0}, {1, -1}, {1, 1}, {3, 3}}));
    const ConstraintSet cons(m.sites(), {{2, 3}});
    const SuiteReport r = run_suite(Suite::thm37, small(3), &m, &cons);
    EXPECT_TRUE(r.passed()) << format_report(r);
}

TEST(Report, TextGrammar) {
    const std::string text = format_report(run_suite(Suite::lemma31, small(2)));
    EXPECT_EQ(text.rfind("suite lemma31 ", 0), 0u);
    EXPECT_NE(text.find("\ncheck lemma31.near_iff_visible checked="), std::string::npos);
    EXPECT_NE(text.find("\ncoverage near trials=2\n"), std::string::npos);
    EXPECT_NE(text.find("\nsummary lemma31 pass="), std::string::npos);
    EXPECT_NE(text.find("\nresult PASS\n"), std::string::npos);
}

TEST(Report, StructuredIsJson) {
    RunConfig c = small(2);
    c.structured = true;
    const auto doc = nlohmann::json::parse(format_report(run_suite(Suite::lemma33, c)));
    EXPECT_EQ(doc["suite"], "lemma33");
    EXPECT_EQ(doc["result"], "PASS");
    EXPECT_TRUE(doc["records"].is_array());
}

TEST(Suites, UnknownNameRejected) {
    EXPECT_THROW(parse_suite("lemma99"), PreconditionError);
    EXPECT_EQ(parse_suite("thm36"), Suite::thm36);
}

TEST(VertexFanPair, FindsPointContact) {
    const Mesh m = triangulate(SiteSet({{0, 0}, {2, 0}, {4, 0}, {1, 2}, {3, 2}, {2, 4}, {5, 3}}));
    const auto pair = vertex_fan_pair(m);
    ASSERT_TRUE(pair.has_value());
    int shared = 0;
    for (int v : m.triangle(pair->first).v) shared += m.triangle(pair->second).has_vertex(v) ? 1 : 0;
    EXPECT_EQ(shared, 1);
}
