#pragma once

#include "proxmesh/geometry.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace proxmesh {

/// Axis-aligned rectangle, closed.
struct BBox {
    Point2 lo;
    Point2 hi;

    bool contains(const Point2& p) const;
    bool strictly_contains(const Point2& p) const;
    bool on_boundary(const Point2& p) const { return contains(p) && !strictly_contains(p); }
    Polygon polygon() const;
};

/// Distinct, not-all-collinear sites with a covering box.
class SiteSet {
public:
    /// Throws DuplicateSiteError naming repeated sites, DegenerateInputError
    /// for fewer than 3 sites or collinear input.
    explicit SiteSet(std::vector<Point2> sites, const Rational& margin = Rational(1, 10));

    const std::vector<Point2>& points() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    const Point2& operator[](std::size_t i) const { return sites_[i]; }
    /// Site extent grown by the margin fraction on every side.
    const BBox& bbox() const { return bbox_; }

private:
    std::vector<Point2> sites_;
    BBox bbox_;
};

/// Site indices, counterclockwise, smallest index first.
struct Triangle {
    std::array<int, 3> v{};

    bool has_vertex(int i) const { return v[0] == i || v[1] == i || v[2] == i; }
    friend bool operator==(const Triangle&, const Triangle&) = default;
    friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// Undirected edge, first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct VoronoiRegion {
    int site = -1;
    Polygon cell;
    // The unclipped cell is unbounded or leaves the clip box.
    bool clipped = false;
};

struct MeshOptions {
    // Fraction of the site extent added on every side of the clip box.
    Rational clip_margin{1, 10};
    // Explicit clip box; when absent the box covers the sites and all
    // circumcenters, grown by clip_margin.
    std::optional<BBox> clip_box;
};

/// Immutable Delaunay triangulation with adjacency and its clipped Voronoi dual.
class Mesh {
public:
    /// Validates and adopts an existing triangulation: counterclockwise
    /// triangles, manifold edges, union equal to the hull, locally Delaunay.
    static Mesh from_parts(SiteSet sites, std::vector<Triangle> triangles, const BBox& clip_box);

    const SiteSet& sites() const { return sites_; }
    const Point2& point(int i) const { return sites_[static_cast<std::size_t>(i)]; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const Triangle& triangle(int t) const { return triangles_[static_cast<std::size_t>(t)]; }
    const BBox& clip_box() const { return clip_box_; }
    const std::vector<VoronoiRegion>& voronoi() const { return voronoi_; }
    /// Hash of the canonical sites, triangles and clip box.
    const std::string& id() const { return id_; }

    /// Every edge with its incident triangles (one for hull edges, two otherwise).
    const std::map<Edge, std::vector<int>>& edges() const { return edges_; }
    bool has_edge(int p, int q) const { return edges_.count(make_edge(p, q)) > 0; }
    std::span<const int> triangles_at_edge(int p, int q) const;
    std::span<const int> triangles_at_vertex(int v) const;
    std::span<const int> vertex_neighbors(int v) const;
    bool is_hull_vertex(int v) const { return hull_vertex_[static_cast<std::size_t>(v)]; }
    bool is_hull_edge(int p, int q) const { return triangles_at_edge(p, q).size() == 1; }
    /// Triangles sharing an edge with t, ascending.
    std::vector<int> edge_adjacent(int t) const;
    /// Triangles sharing at least a vertex with t (t excluded), ascending.
    std::vector<int> vertex_adjacent(int t) const;
    Polygon triangle_polygon(int t) const;

private:
    Mesh(SiteSet sites, std::vector<Triangle> triangles, BBox clip_box);

    SiteSet sites_;
    std::vector<Triangle> triangles_;
    BBox clip_box_;
    std::map<Edge, std::vector<int>> edges_;
    std::vector<std::vector<int>> vertex_triangles_;
    std::vector<std::vector<int>> vertex_neighbors_;
    std::vector<bool> hull_vertex_;
    std::vector<VoronoiRegion> voronoi_;
    std::string id_;
};

/// Bowyer-Watson in input order; cocircular ties resolved by the
/// smallest-endpoint-index diagonal rule. Deterministic for a given input.
Mesh triangulate(const SiteSet& sites, const MeshOptions& options = {});

/// No site strictly inside the circumcircle of t.
bool is_delaunay_triangle(const Triangle& t, const SiteSet& sites);

/// The clipped Voronoi cells of p and q share a boundary segment of positive length.
bool is_delaunay_edge(int p, int q, const Mesh& mesh);

std::vector<VoronoiRegion> voronoi(const SiteSet& sites, const MeshOptions& options = {});

/// Triangles incident to undirected edge pq; empty when pq is not a mesh edge.
std::vector<int> triangles_sharing_edge(const Mesh& mesh, int p, int q);

/// Clip box used when none is given: sites and circumcenters, grown by margin.
BBox default_clip_box(const SiteSet& sites, std::span<const Triangle> triangles, const Rational& margin);

} // namespace proxmesh
