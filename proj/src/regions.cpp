#include "proxmesh/regions.hpp"

#include "proxmesh/error.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace proxmesh {

namespace {

bool share_edge(const Triangle& a, const Triangle& b) {
    int common = 0;
    for (int v : a.v) common += b.has_vertex(v) ? 1 : 0;
    return common == 2;
}

std::string pair_text(int a, int b) { return std::to_string(a) + " and " + std::to_string(b); }

} // namespace

const char* to_string(RegionMode mode) { return mode == RegionMode::pairwise ? "pairwise" : "chain"; }

RegionMode parse_region_mode(const std::string& text) {
    if (text == "pairwise") return RegionMode::pairwise;
    if (text == "chain") return RegionMode::chain;
    throw PreconditionError("unknown region mode '" + text + "' (expected pairwise or chain)");
}

SubComplex Region::complex() const { return closure(SubComplex::from_triangles(*mesh_, triangles_)); }

Region build_region(const Mesh& mesh, std::set<int> triangles, RegionMode mode) {
    if (triangles.empty()) throw PreconditionError("region needs at least one triangle");
    const int count = static_cast<int>(mesh.triangles().size());
    for (int t : triangles)
        if (t < 0 || t >= count) throw PreconditionError("triangle index " + std::to_string(t) + " out of range");

    if (mode == RegionMode::pairwise) {
        for (auto i = triangles.begin(); i != triangles.end(); ++i)
            for (auto j = std::next(i); j != triangles.end(); ++j)
                if (!share_edge(mesh.triangle(*i), mesh.triangle(*j)))
                    throw RegionModeError("pairwise region: triangles " + pair_text(*i, *j) + " share no edge", *i, *j);
    } else {
        std::set<int> reached{*triangles.begin()};
        std::queue<int> frontier;
        frontier.push(*triangles.begin());
        while (!frontier.empty()) {
            const int t = frontier.front();
            frontier.pop();
            for (int u : mesh.edge_adjacent(t))
                if (triangles.count(u) && reached.insert(u).second) frontier.push(u);
        }
        for (int t : triangles)
            if (!reached.count(t))
                throw RegionModeError("chain region: triangle " + std::to_string(t) + " is not edge-connected to " +
                                          std::to_string(*triangles.begin()),
                                      *triangles.begin(), t);
    }
    return Region(mesh, std::move(triangles), mode);
}

Polygon region_outline(const Region& region) {
    const Mesh& mesh = region.mesh();
    // Directed boundary edges keep the counterclockwise orientation of their triangle.
    std::map<int, std::vector<int>> next;
    std::size_t boundary_edges = 0;
    for (int t : region.triangles()) {
        const auto& v = mesh.triangle(t).v;
        for (int k = 0; k < 3; ++k) {
            const int a = v[static_cast<std::size_t>(k)], b = v[static_cast<std::size_t>((k + 1) % 3)];
            const auto incident = mesh.triangles_at_edge(a, b);
            const auto inside = std::count_if(incident.begin(), incident.end(),
                                              [&](int u) { return region.triangles().count(u) > 0; });
            if (inside == 1) {
                next[a].push_back(b);
                ++boundary_edges;
            }
        }
    }
    for (const auto& [v, outs] : next)
        if (outs.size() > 1) throw RegionTopologyError("region boundary pinches at vertex " + std::to_string(v));

    std::vector<int> loop;
    const int start = next.begin()->first;
    int at = start;
    do {
        loop.push_back(at);
        at = next.at(at).front();
    } while (at != start && loop.size() <= boundary_edges);
    if (loop.size() != boundary_edges)
        throw RegionTopologyError("region boundary has " + std::to_string(boundary_edges) + " edges but the outer loop " +
                                  "covers " + std::to_string(loop.size()) + "; the region has a hole");

    std::vector<Point2> pts;
    pts.reserve(loop.size());
    for (int v : loop) pts.push_back(mesh.point(v));
    return Polygon(std::move(pts));
}

ConvexityReport region_convexity(const Region& region) {
    Polygon outline = region_outline(region);
    Polygon hull = convex_hull(outline.vertices());
    const bool convex = outline.twice_area() == hull.twice_area();
    return {convex, std::move(outline), std::move(hull)};
}

RelationReport regions_proximal(const Region& r1, const Region& r2) {
    if (&r1.mesh() != &r2.mesh() && r1.mesh().id() != r2.mesh().id())
        throw MeshMismatchError("regions belong to different meshes");
    RelationReport report;
    report.relation = "proximal";
    report.operands = {SubComplex::from_triangles(r1.mesh(), r1.triangles()).describe(),
                       SubComplex::from_triangles(r2.mesh(), r2.triangles()).describe()};
    std::set<int> v1;
    for (int t : r1.triangles())
        for (int v : r1.mesh().triangle(t).v) v1.insert(v);
    for (int t : r2.triangles())
        for (int v : r2.mesh().triangle(t).v)
            if (v1.count(v) && (!report.witness || v < report.witness->v[0])) report.witness = Simplex::vertex(v);
    report.verdict = report.witness.has_value();
    return report;
}

std::vector<std::string> NeighborhoodMap::invariant_violations() const {
    std::vector<std::string> out;
    auto contains = [&](std::size_t i, int j) {
        return std::binary_search(near_sets[i].begin(), near_sets[i].end(), j);
    };
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!family[i].empty() && !contains(i, static_cast<int>(i)))
            out.push_back("member " + std::to_string(i) + " is not near itself");
        for (int j : near_sets[i])
            if (!contains(static_cast<std::size_t>(j), static_cast<int>(i)))
                out.push_back("member " + std::to_string(i) + " is near " + std::to_string(j) + " but not conversely");
    }
    return out;
}

NeighborhoodMap leader_topology(const Region& region, std::vector<SubComplex> family, Proximity base) {
    const SubComplex whole = region.complex();
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!family[i].subset_of(whole))
            throw PreconditionError("family member " + std::to_string(i) + " " + family[i].describe() +
                                    " is not inside the region");
    NeighborhoodMap map;
    map.near_sets.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j)
            if (relate(base, family[i], family[j]).verdict) map.near_sets[i].push_back(static_cast<int>(j));
    map.family = std::move(family);
    return map;
}

std::vector<RelationReport> check_delaunay_equivalences(const Mesh& mesh) {
    const auto& pts = mesh.sites().points();
    std::vector<RelationReport> reports;
    reports.reserve(mesh.triangles().size());
    for (int t = 0; t < static_cast<int>(mesh.triangles().size()); ++t) {
        const Triangle& tri = mesh.triangle(t);
        const auto [p, q, r] = tri.v;
        RelationReport report;
        report.relation = "thm36.triangle";
        report.operands = {"t" + std::to_string(t) + "=" + std::to_string(p) + "," + std::to_string(q) + "," +
                           std::to_string(r)};
        report.checked = 1;

        const bool empty_circle = is_delaunay_triangle(tri, mesh.sites());

        const Point2 u = circumcenter(mesh.point(p), mesh.point(q), mesh.point(r));
        const Rational radius2 = squared_distance(u, mesh.point(p));
        bool dual_vertex = squared_distance(u, mesh.point(q)) == radius2 && squared_distance(u, mesh.point(r)) == radius2;
        for (const auto& s : pts)
            if (squared_distance(u, s) < radius2) dual_vertex = false;

        std::string cross_check = "skipped (circumcenter outside clip box)";
        bool cross_ok = true;
        if (mesh.clip_box().contains(u)) {
            const std::vector<Polygon> cells{mesh.voronoi()[static_cast<std::size_t>(p)].cell,
                                             mesh.voronoi()[static_cast<std::size_t>(q)].cell,
                                             mesh.voronoi()[static_cast<std::size_t>(r)].cell};
            const ConvexIntersection common = intersect_convex_all(cells);
            cross_ok = common.kind == ConvexIntersection::Kind::point && common.points.front() == u;
            cross_check = cross_ok ? "ok" : "mismatch";
        }

        const bool shared_segments = is_delaunay_edge(p, q, mesh) && is_delaunay_edge(q, r, mesh) &&
                                     is_delaunay_edge(r, p, mesh);
        const bool convex = is_convex_polygon(mesh.triangle_polygon(t));

        report.verdict = empty_circle == dual_vertex && dual_vertex == shared_segments && cross_ok && convex;
        std::ostringstream note;
        note << "circumcircle=" << empty_circle << " dual_vertex=" << dual_vertex << " shared_segments="
             << shared_segments << " convex=" << convex << " clipped_cells=" << cross_check;
        report.note = note.str();
        if (!report.verdict) {
            report.violations = 1;
            report.counterexample = report.operands.front() + " circumcenter=" + to_string(u);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

} // namespace proxmesh
