#include "proxmesh/complexes.hpp"
#include "proxmesh/error.hpp"
#include "proxmesh/harness.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace proxmesh;

namespace {

int find_triangle(const Mesh& m, int a, int b, int c) {
    for (int t = 0; t < static_cast<int>(m.triangles().size()); ++t)
        if (m.triangle(t).has_vertex(a) && m.triangle(t).has_vertex(b) && m.triangle(t).has_vertex(c)) return t;
    return -1;
}

SubComplex tris(const Mesh& m, std::set<int> t) { return SubComplex::from_triangles(m, std::move(t)); }
SubComplex edge(const Mesh& m, int p, int q) { return SubComplex::from_simplex(m, Simplex::edge(make_edge(p, q))); }

// 6x6 integer grid; site (x, y) has index 6y + x.
const Mesh& grid() {
    static const Mesh m = [] {
        std::vector<Point2> pts;
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x) pts.push_back({x, y});
        return triangulate(SiteSet(pts));
    }();
    return m;
}

int g(int x, int y) { return 6 * y + x; }

// Hexagonal fan: site 0 surrounded by six sites.
const Mesh& hex_fan() {
    static const Mesh m = triangulate(SiteSet({{0, 0}, {4, 0}, {2, 3}, {-2, 3}, {-4, 0}, {-2, -3}, {2, -3}}));
    return m;
}

const Mesh& fan() {
    static const Mesh m = triangulate(SiteSet({{0, 0}, {4, 0}, {2, 3}, {2, 1}}));
    return m;
}

} // namespace

TEST(Closure, Examples) {
    const Mesh& m = fan();
    const SubComplex one = tris(m, {0});
    const SubComplex cl = closure(one);
    EXPECT_EQ(cl.triangles(), std::set<int>{0});
    EXPECT_EQ(cl.edges().size(), 3u);
    EXPECT_EQ(cl.vertices().size(), 3u);
    EXPECT_EQ(closure(cl), cl);
    const SubComplex e = closure(edge(m, 0, 3));
    EXPECT_EQ(e.vertices(), (std::set<int>{0, 3}));
    EXPECT_EQ(e.edges().size(), 1u);
}

TEST(Closure, IdempotentAndMonotone) {
    const Mesh& m = grid();
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng = trial_rng(5, s);
        const SubComplex a = random_subcomplex(m, rng);
        const SubComplex b = a.united(random_subcomplex(m, rng));
        EXPECT_EQ(closure(closure(a)), closure(a));
        EXPECT_TRUE(closure(a).subset_of(closure(b)));
        EXPECT_TRUE(interior(a).subset_of(closure(a)));
        EXPECT_TRUE(boundary(a).subset_of(closure(a)));
    }
}

TEST(BoundaryInterior, SingleTriangle) {
    const Mesh& m = fan();
    const SubComplex t = tris(m, {0});
    const SubComplex b = boundary(t);
    EXPECT_TRUE(b.triangles().empty());
    EXPECT_EQ(b.edges().size(), 3u);
    EXPECT_EQ(b.vertices().size(), 3u);
    const SubComplex i = interior(t);
    EXPECT_EQ(i.triangles(), std::set<int>{0});
    EXPECT_TRUE(i.edges().empty());
    EXPECT_TRUE(i.vertices().empty());
}

TEST(BoundaryInterior, TwoTrianglesSharingAnEdge) {
    const Mesh& m = fan();
    const int t1 = find_triangle(m, 0, 1, 3), t2 = find_triangle(m, 1, 2, 3);
    const SubComplex two = tris(m, {t1, t2});
    const SubComplex b = boundary(two);
    EXPECT_FALSE(b.edges().count(make_edge(1, 3)));
    EXPECT_EQ(b.edges().size(), 4u);
    EXPECT_EQ(b.vertices(), (std::set<int>{0, 1, 2, 3}));
    const SubComplex i = interior(two);
    EXPECT_EQ(i.triangles(), (std::set<int>{t1, t2}));
    EXPECT_EQ(i.edges(), (std::set<Edge>{make_edge(1, 3)}));
    EXPECT_TRUE(i.vertices().empty());
}

TEST(BoundaryInterior, SingleEdgeInteriorIsTheOpenSegment) {
    const Mesh& m = fan();
    const SubComplex e = edge(m, 0, 3);
    EXPECT_EQ(boundary(e).vertices(), (std::set<int>{0, 3}));
    EXPECT_TRUE(boundary(e).edges().empty());
    EXPECT_EQ(interior(e).edges(), (std::set<Edge>{make_edge(0, 3)}));
    EXPECT_TRUE(interior(e).vertices().empty());
}

TEST(BoundaryInterior, SurroundedVertexIsInterior) {
    const Mesh& m = hex_fan();
    std::set<int> star(m.triangles_at_vertex(0).begin(), m.triangles_at_vertex(0).end());
    ASSERT_EQ(star.size(), 6u);
    const SubComplex i = interior(tris(m, star));
    EXPECT_TRUE(i.vertices().count(0));
    EXPECT_EQ(i.edges().size(), 6u);
    // The whole mesh: hull vertices stay on the frontier.
    std::set<int> all;
    for (int t = 0; t < 6; ++t) all.insert(t);
    EXPECT_EQ(interior(tris(m, all)).vertices(), std::set<int>{0});
}

TEST(Near, Examples) {
    const Mesh& m = fan();
    const auto r = near(edge(m, 0, 3), edge(m, 3, 1));
    EXPECT_TRUE(r.verdict);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, Simplex::vertex(3));

    const Mesh& gm = grid();
    const SubComplex corner = tris(gm, {find_triangle(gm, g(0, 0), g(1, 0), g(1, 1))});
    const SubComplex other = tris(gm, {find_triangle(gm, g(4, 4), g(5, 4), g(5, 5))});
    EXPECT_FALSE(near(corner, other).verdict);
    EXPECT_TRUE(near(corner, corner).verdict);
    EXPECT_FALSE(near(corner, SubComplex(gm)).verdict);
}

TEST(Near, WitnessIsLowestDimensional) {
    const Mesh& m = fan();
    const SubComplex t = tris(m, {0});
    const auto r = near(t, t);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->dim, 0);
}

TEST(StronglyNear, Examples) {
    const Mesh& m = fan();
    const int t1 = find_triangle(m, 0, 1, 3), t2 = find_triangle(m, 1, 2, 3);
    const auto r = strongly_near(tris(m, {t1}), tris(m, {t2}));
    EXPECT_TRUE(r.verdict);
    EXPECT_EQ(*r.witness, Simplex::edge({1, 3}));
    EXPECT_TRUE(strongly_near(tris(m, {t1}), tris(m, {t1})).verdict);

    const Mesh& h = hex_fan();
    const auto pair = vertex_fan_pair(h);
    ASSERT_TRUE(pair);
    EXPECT_FALSE(strongly_near(tris(h, {pair->first}), tris(h, {pair->second})).verdict);
}

TEST(Far, Examples) {
    const Mesh& gm = grid();
    EXPECT_TRUE(far(edge(gm, g(0, 0), g(1, 0)), edge(gm, g(4, 5), g(5, 5))).verdict);
    const SubComplex t = tris(gm, {3});
    EXPECT_FALSE(far(t, t).verdict);
    EXPECT_TRUE(far(t, SubComplex(gm)).verdict);
}

TEST(StronglyFar, SurroundedTriangle) {
    const Mesh& gm = grid();
    const int centre = find_triangle(gm, g(1, 1), g(2, 1), g(2, 2));
    ASSERT_GE(centre, 0);
    const SubComplex c = tris(gm, {centre});
    const SubComplex b = vertex_neighborhood(c, 1);
    const SubComplex a = tris(gm, {find_triangle(gm, g(4, 4), g(5, 4), g(5, 5))});
    const auto r = strongly_far(a, c, &b);
    EXPECT_TRUE(r.verdict) << r.note;
    EXPECT_TRUE(invisible(a, c).verdict);
    // Searching finds a witness on its own.
    const auto searched = strongly_far(a, c);
    EXPECT_TRUE(searched.verdict);
    ASSERT_TRUE(searched.witness_set);
    EXPECT_TRUE(far(a, *searched.witness_set).verdict);
}

TEST(StronglyFar, TouchingOperandsAreNotStronglyFar) {
    const Mesh& gm = grid();
    const int centre = find_triangle(gm, g(1, 1), g(2, 1), g(2, 2));
    const SubComplex c = tris(gm, {centre});
    const SubComplex a = tris(gm, {gm.edge_adjacent(centre).front()});
    EXPECT_FALSE(strongly_far(a, c).verdict);
    const SubComplex b = vertex_neighborhood(c, 1);
    EXPECT_FALSE(strongly_far(a, c, &b).verdict);
    EXPECT_FALSE(strongly_far(SubComplex(gm), c).verdict);
}

TEST(StronglyFar, WitnessIsMeshMinusNeighborhoodOfA) {
    const Mesh& gm = grid();
    const SubComplex a = closure(tris(gm, {find_triangle(gm, g(0, 0), g(1, 0), g(1, 1))}));
    std::set<int> rest;
    for (int t = 0; t < static_cast<int>(gm.triangles().size()); ++t) {
        bool touches = false;
        for (int v : gm.triangle(t).v) touches = touches || a.vertices().count(v);
        if (!touches) rest.insert(t);
    }
    const SubComplex b = tris(gm, rest);
    const SubComplex c = tris(gm, {find_triangle(gm, g(3, 3), g(4, 3), g(4, 4))});
    EXPECT_TRUE(strongly_far(a, c, &b).verdict);
    EXPECT_TRUE(strongly_far(a, c, &b, Proximity::visible).verdict);
}

TEST(Visible, Examples) {
    const Mesh& h = hex_fan();
    const auto pair = vertex_fan_pair(h);
    ASSERT_TRUE(pair);
    const SubComplex a = tris(h, {pair->first}), d = tris(h, {pair->second});
    const auto r = visible(a, d);
    EXPECT_TRUE(r.verdict);
    EXPECT_EQ(*r.witness, Simplex::vertex(0));
    EXPECT_FALSE(strongly_visible(a, d).verdict);

    const Mesh& gm = grid();
    EXPECT_FALSE(visible(edge(gm, g(0, 0), g(1, 0)), edge(gm, g(4, 5), g(5, 5))).verdict);
    EXPECT_TRUE(visible(a, closure(a)).verdict);
}

TEST(StronglyVisible, Examples) {
    const Mesh& m = fan();
    const int t1 = find_triangle(m, 0, 1, 3), t2 = find_triangle(m, 1, 2, 3);
    const auto shared = strongly_visible(tris(m, {t1}), tris(m, {t2}));
    EXPECT_TRUE(shared.verdict);
    EXPECT_EQ(*shared.witness, Simplex::edge({1, 3}));

    // Containment: a lone vertex inside B.
    const auto inside = strongly_visible(SubComplex(m, {3}, {}, {}), tris(m, {t1, t2}));
    EXPECT_TRUE(inside.verdict);
    EXPECT_TRUE(inside.witness_set);
}

TEST(Invisible, Examples) {
    const Mesh& gm = grid();
    const SubComplex a = tris(gm, {find_triangle(gm, g(0, 0), g(1, 0), g(1, 1))});
    const SubComplex b = tris(gm, {find_triangle(gm, g(4, 4), g(5, 4), g(5, 5)), find_triangle(gm, g(4, 4), g(4, 5), g(5, 5))});
    EXPECT_TRUE(invisible(a, b).verdict);
    EXPECT_TRUE(strongly_invisible(a, b).verdict);
    EXPECT_FALSE(invisible(a, a).verdict);
    EXPECT_TRUE(invisible(a, SubComplex(gm)).verdict);
    EXPECT_TRUE(strongly_invisible(a, SubComplex(gm)).verdict);

    const int touching = gm.edge_adjacent(*a.triangles().begin()).front();
    const auto r = strongly_invisible(a, tris(gm, {touching, *b.triangles().begin()}));
    EXPECT_FALSE(r.verdict);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->triangle, touching);
}

TEST(Relations, SymmetryAndImplications) {
    const Mesh& gm = grid();
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng = trial_rng(9, s);
        const SubComplex a = random_subcomplex(gm, rng), b = random_subcomplex(gm, rng);
        EXPECT_EQ(near(a, b).verdict, near(b, a).verdict);
        EXPECT_EQ(visible(a, b).verdict, visible(b, a).verdict);
        EXPECT_EQ(far(a, b).verdict, far(b, a).verdict);
        EXPECT_EQ(invisible(a, b).verdict, invisible(b, a).verdict);
        EXPECT_EQ(near(a, b).verdict, visible(a, b).verdict);
        EXPECT_EQ(invisible(a, b).verdict, strongly_invisible(a, b).verdict);
        if (strongly_near(a, b).verdict) EXPECT_TRUE(near(a, b).verdict);
        if (strongly_visible(a, b).verdict) EXPECT_TRUE(visible(a, b).verdict);
        const auto n = near(a, b), sn = strongly_near(a, b), v = visible(a, b);
        if (n.verdict) EXPECT_TRUE(n.witness);
        if (sn.verdict) EXPECT_TRUE(sn.witness);
        if (v.verdict) EXPECT_TRUE(v.witness);
    }
}

TEST(Relations, DifferentMeshesRejected) {
    const SubComplex a = SubComplex::from_triangles(fan(), {0});
    const SubComplex b = SubComplex::from_triangles(grid(), {0});
    EXPECT_THROW(near(a, b), MeshMismatchError);
    EXPECT_THROW(strongly_invisible(a, b), MeshMismatchError);
}

TEST(SubComplex, RejectsUnknownMembers) {
    EXPECT_THROW(SubComplex(fan(), {9}, {}, {}), PreconditionError);
    EXPECT_THROW(SubComplex(fan(), {}, {{0, 7}}, {}), PreconditionError);
    EXPECT_NO_THROW(SubComplex(fan(), {}, {{0, 1}}, {}));
    EXPECT_THROW(SubComplex(fan(), {}, {}, {3}), PreconditionError);
}

TEST(CechAxioms, NoViolations) {
    for (Proximity p : {Proximity::visible, Proximity::near}) {
        const auto reports = check_cech_axioms(grid(), p, 200, 3);
        ASSERT_EQ(reports.size(), 4u);
        for (const auto& r : reports) {
            EXPECT_TRUE(r.verdict) << r.relation << " " << r.counterexample;
            EXPECT_EQ(r.checked, 200u);
        }
    }
    EXPECT_THROW(check_cech_axioms(grid(), Proximity::near, 0, 1), PreconditionError);
}

TEST(CechAxioms, ExhaustiveOnSmallMeshes) {
    // Every pair and triple of triangle sets on meshes with at most 5 triangles.
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Mesh m = triangulate(SiteSet(oracle::random_sites(seed, 4 + static_cast<int>(seed % 3), 20)));
        const int t = static_cast<int>(m.triangles().size());
        if (t > 5) continue;
        auto subset = [&](int mask) {
            std::set<int> s;
            for (int i = 0; i < t; ++i)
                if (mask >> i & 1) s.insert(i);
            return tris(m, s);
        };
        for (int x = 0; x < (1 << t); ++x)
            for (int y = 0; y < (1 << t); ++y) {
                const SubComplex a = subset(x), b = subset(y);
                const bool ab = visible(a, b).verdict;
                ASSERT_EQ(ab, visible(b, a).verdict);
                ASSERT_EQ(ab, near(a, b).verdict);
                if (ab) ASSERT_TRUE(!a.empty() && !b.empty());
                if (x & y) ASSERT_TRUE(ab);
                for (int z = 0; z < (1 << t); z += 3) {
                    const SubComplex c = subset(z);
                    ASSERT_EQ(visible(a, b.united(c)).verdict, ab || visible(a, c).verdict);
                }
            }
    }
}

TEST(RandomSubcomplex, ClosedAndSeeded) {
    Rng r1 = trial_rng(4, 2), r2 = trial_rng(4, 2);
    const SubComplex a = random_subcomplex(grid(), r1);
    EXPECT_EQ(a, random_subcomplex(grid(), r2));
    EXPECT_EQ(closure(a), a);
}
